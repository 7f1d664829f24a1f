#include "ig/corpus.hpp"

#include <algorithm>

#include "ig/errors.hpp"

namespace ig {

namespace {

const char* kImmediate = R"(automaton
heads 1
stack no
states init back acc rej
init init
accept acc
reject rej
trans init * - 1+ id back 1
trans back * - 1- id acc 1
trans back 0 - 1- id acc 1
trans back 1 - 1- id acc 1
)";

const char* kCoin = R"(automaton
heads 1
stack no
states init ca cr acc rej
init init
accept acc
reject rej
trans init * - 1+ id ca 1/2
trans init * - 1+ id cr 1/2
trans ca * - 1- id acc 1
trans ca 0 - 1- id acc 1
trans ca 1 - 1- id acc 1
trans cr * - 1- id rej 1
trans cr 0 - 1- id rej 1
trans cr 1 - 1- id rej 1
)";

const char* kRetry = R"(automaton
heads 1
stack no
states init ra rr acc rej
init init
accept acc
reject rej
trans init * - 1+ id ra 1/2
trans init * - 1+ id rr 1/2
trans ra * - 1- id acc 1
trans ra 0 - 1- id acc 1
trans ra 1 - 1- id acc 1
trans rr * - 1- id init 1
trans rr 0 - 1- id init 1
trans rr 1 - 1- id init 1
)";

const char* kEvenOnes = R"(automaton
heads 1
stack no
states init e o ea oa acc rej
init init
accept acc
reject rej
trans init * - 1+ id e 1
trans e 0 - 1+ id e 1
trans e 1 - 1+ id o 1
trans o 0 - 1+ id o 1
trans o 1 - 1+ id e 1
trans e * - 1+ id ea 1
trans o * - 1+ id oa 1
trans ea * - 1- id acc 1
trans ea 0 - 1- id acc 1
trans ea 1 - 1- id acc 1
trans oa * - 1- id rej 1
trans oa 0 - 1- id rej 1
trans oa 1 - 1- id rej 1
)";

// Accepts with probability 2^-(number of ones).
const char* kHalving = R"(automaton
heads 1
stack no
states init s f sa fa acc rej
init init
accept acc
reject rej
trans init * - 1+ id s 1
trans s 0 - 1+ id s 1
trans s 1 - 1+ id s 1/2
trans s 1 - 1+ id f 1/2
trans f 0 - 1+ id f 1
trans f 1 - 1+ id f 1
trans s * - 1+ id sa 1
trans f * - 1+ id fa 1
trans sa * - 1- id acc 1
trans sa 0 - 1- id acc 1
trans sa 1 - 1- id acc 1
trans fa * - 1- id rej 1
trans fa 0 - 1- id rej 1
trans fa 1 - 1- id rej 1
)";

// A coin that loses a third of its mass.
const char* kLossy = R"(automaton
heads 1
stack no
states init ca cr acc rej
init init
accept acc
reject rej
trans init * - 1+ id ca 1/3
trans init * - 1+ id cr 1/3
trans ca * - 1- id acc 1
trans ca 0 - 1- id acc 1
trans ca 1 - 1- id acc 1
trans cr * - 1- id rej 1
trans cr 0 - 1- id rej 1
trans cr 1 - 1- id rej 1
)";

// First letter equals last letter (two heads).
const char* kEnds = R"(automaton
heads 2
stack no
states init a b0 b1 bs ce cn acc rej
init init
accept acc
reject rej
trans init ** - 1+ id a 1
trans a 0* - 2- id b0 1
trans a 1* - 2- id b1 1
trans a ** - 2- id bs 1
trans b0 00 - 1- id ce 1
trans b0 01 - 1- id cn 1
trans b1 11 - 1- id ce 1
trans b1 10 - 1- id cn 1
trans bs ** - 1- id ce 1
trans ce ** - 2+ id acc 1
trans ce *0 - 2+ id acc 1
trans ce *1 - 2+ id acc 1
trans cn ** - 2+ id rej 1
trans cn *0 - 2+ id rej 1
trans cn *1 - 2+ id rej 1
)";

// Like "ends", but the comparison is noisy.
const char* kEndsBiased = R"(automaton
heads 2
stack no
states init a b0 b1 bs ce cn acc rej
init init
accept acc
reject rej
trans init ** - 1+ id a 1
trans a 0* - 2- id b0 1
trans a 1* - 2- id b1 1
trans a ** - 2- id bs 1
trans b0 00 - 1- id ce 2/3
trans b0 00 - 1- id cn 1/3
trans b0 01 - 1- id cn 1
trans b1 11 - 1- id ce 1/2
trans b1 10 - 1- id cn 1/4
trans b1 10 - 1- id ce 1/4
trans bs ** - 1- id ce 1
trans ce ** - 2+ id acc 1
trans ce *0 - 2+ id acc 1
trans ce *1 - 2+ id acc 1
trans cn ** - 2+ id rej 1
trans cn *0 - 2+ id rej 1
trans cn *1 - 2+ id rej 1
)";

const char* kPushPop = R"(automaton
heads 1
stack yes
states init p q r acc rej
init init
accept acc
reject rej
trans init * - 1+ push0 p 1
trans p * - 1- pop q 1
trans p 0 - 1- pop q 1
trans p 1 - 1- pop q 1
trans q * 0 1+ id r 1
trans r * - 1- id acc 1
trans r 0 - 1- id acc 1
trans r 1 - 1- id acc 1
)";

// Compares the word with its reverse through the stack.
const char* kPalindrome = R"(automaton
heads 1
stack yes
states init P C K0 K1 E S Za Zr acc rej
init init
accept acc
reject rej
trans init * - 1+ id P 1
trans P 0 - 1+ push0 P 1
trans P 1 - 1+ push1 P 1
trans P * - 1+ id C 1
trans C * - 1+ id Za 1
trans C 0 - 1+ pop K0 1
trans C 1 - 1+ pop K1 1
trans K0 0 0 1+ pop K0 1
trans K0 1 0 1+ pop K1 1
trans K0 * 0 1+ id Za 1
trans K1 0 1 1+ pop K0 1
trans K1 1 1 1+ pop K1 1
trans K1 * 1 1+ id Za 1
trans K0 0 1 1+ pop E 1
trans K0 1 1 1+ pop E 1
trans K0 * 1 1+ pop E 1
trans K1 0 0 1+ pop E 1
trans K1 1 0 1+ pop E 1
trans K1 * 0 1+ pop E 1
trans E 0 0 1+ pop E 1
trans E 1 0 1+ pop E 1
trans E * 0 1+ pop E 1
trans E 0 1 1+ pop E 1
trans E 1 1 1+ pop E 1
trans E * 1 1+ pop E 1
trans E 0 * 1+ push* S 1
trans E 1 * 1+ push* S 1
trans E * * 1+ push* S 1
trans S 0 - 1+ id S 1
trans S 1 - 1+ id S 1
trans S * - 1+ id Zr 1
trans Za * - 1- id acc 1
trans Za 0 - 1- id acc 1
trans Za 1 - 1- id acc 1
trans Zr * - 1- id rej 1
trans Zr 0 - 1- id rej 1
trans Zr 1 - 1- id rej 1
)";

// Pushes a geometric number of 1s while wandering, pops them all, then
// walks back to the marker.
const char* kStackCoin = R"(automaton
heads 1
stack yes
states init u d f fz acc rej
init init
accept acc
reject rej
trans init * - 1+ push1 u 1
trans u * - 1- push1 u 1/3
trans u 0 - 1- push1 u 1/3
trans u 1 - 1- push1 u 1/3
trans u * - 1+ pop d 1/2
trans u 0 - 1+ pop d 1/2
trans u 1 - 1+ pop d 1/2
trans d * 1 1- pop d 1
trans d 0 1 1- pop d 1
trans d 1 1 1- pop d 1
trans d * * 1+ push* f 1
trans d 0 * 1+ push* f 1
trans d 1 * 1+ push* f 1
trans f 0 - 1+ id f 1
trans f 1 - 1+ id f 1
trans f * - 1+ id fz 1
trans fz * - 1- id acc 1
trans fz 0 - 1- id acc 1
trans fz 1 - 1- id acc 1
)";

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<std::string> reads_of(std::uint32_t k) {
  std::vector<std::string> out{""};
  for (std::uint32_t h = 0; h < k; ++h) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'*', '0', '1'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<NamedAutomaton> handwritten_corpus() {
  std::vector<NamedAutomaton> out;
  for (auto [name, text] : {std::pair{"immediate", kImmediate}, {"coin", kCoin}, {"retry", kRetry},
                            {"even-ones", kEvenOnes}, {"halving", kHalving}, {"lossy", kLossy}, {"ends", kEnds},
                            {"ends-biased", kEndsBiased}, {"push-pop", kPushPop}, {"palindrome", kPalindrome},
                            {"stack-coin", kStackCoin}})
    out.push_back({name, automaton_from_text(text)});
  return out;
}

Automaton random_automaton(std::mt19937_64& rng, const RandomAutomatonSpec& spec) {
  Automaton a;
  const std::uint32_t k = spec.heads;
  a.heads = k;
  a.pushdown = spec.pushdown;
  auto add_state = [&](const std::string& name) {
    a.states.push_back(name);
    return static_cast<std::uint32_t>(a.states.size() - 1);
  };
  a.init = add_state("init");
  a.accept = add_state("acc");
  a.reject = add_state("rej");
  std::vector<std::uint32_t> work{a.init}, post;
  for (std::uint32_t i = 1; i < spec.workStates; ++i) work.push_back(add_state("w" + std::to_string(i)));
  if (spec.pushdown)
    for (std::uint32_t i = 0; i < work.size(); ++i) post.push_back(add_state("p" + std::to_string(i)));

  // Halting gadgets per outcome: empty the stack, then rewind head by head.
  std::uint32_t entry[2];
  const auto reads = reads_of(k);
  for (int o = 0; o < 2; ++o) {
    const std::string tag = o == 0 ? "a" : "r";
    const std::uint32_t halt = o == 0 ? a.accept : a.reject;
    std::vector<std::uint32_t> rewind, back;
    for (std::uint32_t j = 0; j < k; ++j) {
      rewind.push_back(add_state("R" + tag + std::to_string(j + 1)));
      back.push_back(add_state("B" + tag + std::to_string(j + 1)));
    }
    for (std::uint32_t j = 0; j < k; ++j) {
      for (const auto& r : reads) {
        a.transitions.push_back({r, rewind[j], std::nullopt, {{j, Direction::In}}, std::nullopt,
                                 r[j] == '*' ? back[j] : rewind[j], Rational(1)});
        a.transitions.push_back({r, back[j], std::nullopt, {{j, Direction::Out}}, std::nullopt,
                                 j + 1 < k ? rewind[j + 1] : halt, Rational(1)});
      }
    }
    entry[o] = rewind[0];
    if (spec.pushdown) {
      std::uint32_t empty = add_state("E" + tag), popped = add_state("F" + tag);
      for (const auto& r : reads) {
        a.transitions.push_back({r, empty, std::nullopt, {{0, Direction::In}}, StackOp::Pop, popped, Rational(1)});
        a.transitions.push_back({r, popped, '0', {{0, Direction::In}}, StackOp::Pop, popped, Rational(1)});
        a.transitions.push_back({r, popped, '*', {{0, Direction::In}}, StackOp::PushStar, rewind[0], Rational(1)});
      }
      entry[o] = empty;
    }
  }

  for (std::size_t wi = 0; wi < work.size(); ++wi) {
    for (const auto& r : reads) {
      if (pick(rng, 5) == 0) continue;  // missing key: the run stops
      std::uint64_t outcomes = spec.deterministic ? 1 : 1 + pick(rng, 3);
      std::vector<std::uint64_t> parts;
      std::uint64_t total = 0;
      for (std::uint64_t i = 0; i < outcomes; ++i) {
        parts.push_back(1 + pick(rng, 3));
        total += parts.back();
      }
      if (!spec.deterministic) total += pick(rng, 2);
      for (auto part : parts) {
        Transition t;
        t.read = r;
        t.state = work[wi];
        t.moves = {{static_cast<std::uint32_t>(pick(rng, k)), pick(rng, 2) ? Direction::In : Direction::Out}};
        t.prob = spec.deterministic ? Rational(1) : Rational(static_cast<long>(part), static_cast<long>(total));
        t.prob.canonicalize();
        std::uint64_t kind = pick(rng, 10);
        std::uint64_t target = pick(rng, work.size());
        if (spec.layeredPushes) target = wi + pick(rng, work.size() - wi);
        if (kind < 2) {
          t.next = entry[kind];
        } else if (spec.pushdown && kind < 4 && (!spec.layeredPushes || target > wi)) {
          t.op = StackOp::Push0;
          t.next = work[target];
        } else if (spec.pushdown && kind < 6) {
          t.op = StackOp::Pop;
          t.next = post[target];
        } else {
          t.next = work[target];
        }
        a.transitions.push_back(std::move(t));
      }
    }
    if (spec.pushdown) {
      for (const auto& r : reads) {
        auto head = static_cast<std::uint32_t>(pick(rng, k));
        Direction d = pick(rng, 2) ? Direction::In : Direction::Out;
        a.transitions.push_back({r, post[wi], '*', {{head, d}}, StackOp::PushStar, work[wi], Rational(1)});
        a.transitions.push_back({r, post[wi], '0', {{head, d}}, std::nullopt, work[wi], Rational(1)});
      }
    }
  }
  return a;
}

std::vector<NamedAutomaton> corpus(std::uint64_t seed, std::size_t randomCount) {
  auto out = handwritten_corpus();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < randomCount; ++i) {
    RandomAutomatonSpec spec;
    // Cycle through shapes; three heads stay stack-free and small.
    switch (i % 6) {
      case 0: spec = {1, false, 3, false}; break;
      case 1: spec = {1, true, 2, false}; break;
      case 2: spec = {2, false, 2, false}; break;
      case 3: spec = {2, true, 3, false, true}; break;
      case 4: spec = {1, false, 2, true}; break;
      case 5: spec = {i % 12 == 5 ? 3u : 2u, false, 1, i % 12 != 5}; break;
    }
    std::string name = "rand-" + std::to_string(i + 1) + "-" + std::to_string(spec.heads) + "h" +
                       (spec.pushdown ? "-stack" : "") + (spec.deterministic ? "-det" : "");
    out.push_back({name, random_automaton(rng, spec)});
  }
  return out;
}

Automaton corpus_automaton(const std::string& name) {
  for (auto& n : corpus())
    if (n.name == name) return n.automaton;
  throw ValidationError("no corpus automaton named '" + name + "'");
}

}  // namespace ig
