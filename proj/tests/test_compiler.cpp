#include <gtest/gtest.h>

#include <algorithm>

#include "ig/compiler.hpp"
#include "ig/corpus.hpp"
#include "ig/errors.hpp"

using namespace ig;

TEST(Compiler, CorpusAgreesWithOracle) {
  for (const auto& [name, a] : corpus()) {
    auto m = compile(a);
    for (std::string w : {"", "0", "1", "01", "11", "100"}) {
      auto rep = canonical_representation(w);
      auto o = oracle(a, w, 8);
      ExecOptions opts;
      opts.stackDepth = 8;
      auto s = run(m, rep, opts);
      EXPECT_EQ(s.stackRestored, o.accept) << name << " w=" << w << " total=" << to_string(s.lowerBound);
      EXPECT_EQ(s.exact, o.exact) << name << " w=" << w;
    }
  }
}

namespace {

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

std::vector<std::string> words_upto(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (char c : {'0', '1'}) out.push_back(out[i] + c);
  return out;
}

bool deterministic_table(const Automaton& a) {
  for (const auto& t : a.transitions)
    if (t.prob != 1) return false;
  return true;
}

}  // namespace

TEST(Compiler, DialectSize) {
  for (const auto& [name, a] : corpus()) {
    std::size_t pow3 = 1;
    for (std::uint32_t h = 0; h < a.heads; ++h) pow3 *= 3;
    auto m = compile(a);
    EXPECT_EQ(m.graphing.dialect, a.states.size() * factorial(a.heads) * pow3 * 3) << name;
    EXPECT_EQ(m.codec.size(), m.graphing.dialect);
  }
}

TEST(Compiler, CodecRoundTrip) {
  auto m = compile(corpus_automaton("ends"));
  DialectState zero = m.codec.decode(0);
  EXPECT_EQ(zero.state, corpus_automaton("ends").init);
  EXPECT_EQ(zero.sigma, (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(zero.read, "**");
  EXPECT_EQ(zero.popped, '*');
  for (std::uint32_t i = 0; i < m.codec.size(); ++i) EXPECT_EQ(m.codec.encode(m.codec.decode(i)), i);
  EXPECT_THROW(m.codec.decode(m.codec.size()), ValidationError);
}

TEST(Compiler, RealizersStayInTheMicrocosm) {
  for (const auto& [name, a] : corpus()) {
    auto m = compile(a);
    const Microcosm which = a.pushdown ? Microcosm::N : Microcosm::M;
    for (const auto& e : m.graphing.edges) {
      EXPECT_TRUE(in_microcosm(e.realizer, which, a.heads)) << name << " " << to_string(e.realizer);
      if (!a.pushdown) EXPECT_TRUE(in_microcosm(e.realizer, Microcosm::M, a.heads)) << name;
    }
  }
}

TEST(Compiler, DeterminismTransfers) {
  for (const auto& [name, a] : corpus()) {
    auto m = compile(a);
    EXPECT_TRUE(is_subprobabilistic(m.graphing)) << name;
    if (deterministic_table(a)) EXPECT_TRUE(is_deterministic(m.graphing)) << name;
  }
  EXPECT_FALSE(is_deterministic(compile(corpus_automaton("coin")).graphing));
}

TEST(Compiler, PruningKeepsTheSemantics) {
  for (const char* name : {"coin", "even-ones", "ends", "push-pop", "palindrome"}) {
    auto m = compile(corpus_automaton(name));
    auto p = prune_unreachable(m);
    EXPECT_LE(p.graphing.edges.size(), m.graphing.edges.size());
    EXPECT_LT(p.graphing.edges.size(), m.graphing.edges.size()) << name;
    for (std::string w : {"", "1", "01", "110"}) {
      auto rep = canonical_representation(w);
      EXPECT_EQ(run(p, rep).total, run(m, rep).total) << name << " " << w;
    }
  }
}

TEST(Compiler, ImmediateAndCoinOnEveryWord) {
  auto imm = compile(corpus_automaton("immediate"));
  auto coin = compile(corpus_automaton("coin"));
  for (const auto& w : words_upto(3)) {
    auto rep = canonical_representation(w);
    EXPECT_EQ(run(imm, rep).stackRestored, 1) << w;
    PathSum s = run(coin, rep);
    EXPECT_EQ(s.total.at(ThetaWord{}), Rational(1, 2)) << w;
  }
}

// Paths of the finite view ending in a transition edge are the nonempty
// computation traces, weight for weight.
TEST(Compiler, FiniteViewPathsAreTraces) {
  for (const char* name : {"even-ones", "coin", "lossy", "push-pop", "ends"}) {
    auto a = corpus_automaton(name);
    auto m = compile(a);
    for (const auto& w : words_upto(3)) {
      auto rep = canonical_representation(w);
      auto [mg, wg] = finite_view(m, rep);
      std::vector<Rational> paths, traces;
      for (const auto& p : finite_view_paths(mg, wg, marker_cube(rep, m.heads), 24))
        if (p.provenance.back() >= 0) paths.push_back(p.prob);
      for (const auto& t : trace_enumerate(a, w, 12)) traces.push_back(t.prob);
      std::sort(paths.begin(), paths.end());
      std::sort(traces.begin(), traces.end());
      EXPECT_EQ(paths, traces) << name << " " << w;
    }
  }
}

TEST(Compiler, PushPopPathsCarryPurePops) {
  auto m = compile(corpus_automaton("push-pop"));
  auto rep = canonical_representation("01");
  auto [mg, wg] = finite_view(m, rep);
  int halted = 0;
  for (const auto& p : finite_view_paths(mg, wg, marker_cube(rep, m.heads), 40)) {
    if (p.provenance.back() >= 0) continue;
    ++halted;
    // the halting edge back to the accept region
    EXPECT_TRUE(p.theta.pushed().empty()) << to_string(p.theta);
  }
  EXPECT_GT(halted, 0);
}

TEST(Compiler, EmptyMachineHasEmptyView) {
  GraphingRep empty;
  empty.support = parse_region("a full V()");
  CompiledMachine m;
  m.graphing = empty;
  auto [mg, wg] = finite_view(m, canonical_representation("0"));
  EXPECT_TRUE(mg.edges.empty());
  EXPECT_FALSE(wg.edges.empty());
}
