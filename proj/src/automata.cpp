#include "ig/automata.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "ig/errors.hpp"
#include "ig/linear_solve.hpp"

namespace ig {

namespace {

bool is_tape_letter(char c) { return c == '*' || c == '0' || c == '1'; }

std::string popped_text(const std::optional<char>& p) { return p ? std::string(1, *p) : std::string("-"); }

struct Config {
  std::uint32_t state;
  std::vector<std::uint32_t> pos;
  std::string stack;  // top first, bottom marker last
  char popped;

  std::string key() const {
    std::string k;
    k += std::to_string(state);
    k += '|';
    for (auto p : pos) {
      k += std::to_string(p);
      k += ',';
    }
    k += '|';
    k += popped;
    k += stack;
    return k;
  }
};

std::string read_vector(const Config& c, const std::string& w) {
  std::string r;
  for (auto p : c.pos) r += p == 0 ? '*' : w[p - 1];
  return r;
}

// Successor of `c` under `t`; nullopt if the transition does not apply.
std::optional<Config> step(const Automaton& a, const Config& c, const Transition& t, const std::string& w) {
  const std::uint32_t n = static_cast<std::uint32_t>(w.size() + 1);
  Config next = c;
  for (const auto& m : t.moves) {
    int p = static_cast<int>(c.pos[m.head]) + step_of(m.dir);
    next.pos[m.head] = static_cast<std::uint32_t>((p + static_cast<int>(n)) % static_cast<int>(n));
  }
  if (t.op) {
    if (*t.op == StackOp::Pop) {
      if (next.stack.empty()) throw AutomatonError("pop on an empty stack (transition from " + a.states[t.state] + ")");
      next.popped = next.stack.front();
      next.stack.erase(0, 1);
    } else {
      next.stack.insert(next.stack.begin(), pushed_letter(*t.op));
    }
  }
  next.state = t.next;
  return next;
}

bool matches(const Transition& t, const Config& c, const std::string& read) {
  return t.state == c.state && t.read == read && (!t.popped || *t.popped == c.popped);
}

void check_halt(const Automaton& a, const Config& c) {
  for (auto p : c.pos)
    if (p != 0) throw AutomatonError("state " + a.states[c.state] + " entered with a head off the marker");
  if (c.stack != "*") throw AutomatonError("state " + a.states[c.state] + " entered with stack '" + c.stack + "'");
}

Config initial_config(const Automaton& a) {
  return Config{a.init, std::vector<std::uint32_t>(a.heads, 0), "*", '*'};
}

}  // namespace

std::uint32_t Automaton::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ValidationError("unknown state '" + name + "'");
  return static_cast<std::uint32_t>(it - states.begin());
}

std::vector<std::string> validate(const Automaton& a) {
  std::vector<std::string> v;
  const std::uint32_t n = static_cast<std::uint32_t>(a.states.size());
  if (a.heads == 0) v.push_back("at least one head is required");
  {
    auto sorted = a.states;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) v.push_back("duplicate state names");
  }
  if (a.init >= n || a.accept >= n || a.reject >= n) {
    v.push_back("init/accept/reject must be states");
    return v;
  }
  if (a.init == a.accept || a.init == a.reject || a.accept == a.reject)
    v.push_back("init, accept and reject must be distinct");

  std::map<std::tuple<std::string, std::uint32_t, std::string>, Rational> mass;
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    std::string at = "transition " + std::to_string(i + 1) + ": ";
    if (t.read.size() != a.heads) v.push_back(at + "read vector length differs from the head count");
    if (!std::all_of(t.read.begin(), t.read.end(), is_tape_letter)) v.push_back(at + "read vector over {*,0,1} expected");
    if (t.state >= n || t.next >= n) {
      v.push_back(at + "unknown state");
      continue;
    }
    if (t.state == a.accept || t.state == a.reject) v.push_back(at + "accept/reject have no outgoing transitions");
    if (t.moves.size() != 1) v.push_back(at + "exactly one head must move");
    for (const auto& m : t.moves)
      if (m.head >= a.heads) v.push_back(at + "head index out of range");
    if (t.prob <= 0 || t.prob > 1) v.push_back(at + "probability outside (0,1]");
    if (!a.pushdown && (t.op || t.popped)) v.push_back(at + "stack use in an automaton without stack");
    if (t.popped && !is_tape_letter(*t.popped)) v.push_back(at + "popped letter over {*,0,1} expected");
    mass[{t.read, t.state, popped_text(t.popped)}] += t.prob;
  }
  for (const auto& [key, p] : mass) {
    const auto& [read, state, popped] = key;
    if (p > 1)
      v.push_back("probabilities from (" + a.states[state] + ", " + read + ", " + popped + ") sum to " + to_string(p));
    if (popped != "-" && mass.count({read, state, "-"}))
      v.push_back("(" + a.states[state] + ", " + read + ") mixes a popped-letter key with the wildcard");
  }
  // The bottom marker comes back on the next transition.
  for (const auto& t : a.transitions) {
    if (t.op != StackOp::Pop || t.next >= n) continue;
    for (const auto& u : a.transitions) {
      if (u.state != t.next) continue;
      if ((!u.popped || *u.popped == '*') && u.op != StackOp::PushStar)
        v.push_back("after a pop into " + a.states[t.next] + " a popped '*' is not pushed back");
    }
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_valid(const Automaton& a) {
  auto v = validate(a);
  if (v.empty()) return;
  std::string msg = "invalid automaton:";
  for (const auto& s : v) msg += "\n  " + s;
  throw ValidationError(msg);
}

OracleResult oracle(const Automaton& a, const std::string& w, std::uint32_t stackDepth) {
  require_valid(a);
  for (char c : w)
    if (c != '0' && c != '1') throw ValidationError("words are over {0,1}");
  if (a.pushdown && stackDepth == 0) throw ValidationError("stack depth must be positive for pushdown automata");

  OracleResult res;
  FixpointSystem sys;
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<Config> configs;
  auto intern = [&](const Config& c) {
    auto [it, fresh] = ids.emplace(c.key(), configs.size());
    if (fresh) {
      configs.push_back(c);
      sys.add_variable();
    }
    return it->second;
  };
  intern(initial_config(a));
  for (std::size_t v = 0; v < configs.size(); ++v) {
    Config c = configs[v];
    std::string read = read_vector(c, w);
    for (const auto& t : a.transitions) {
      if (!matches(t, c, read)) continue;
      Config next = *step(a, c, t, w);
      if (next.state == a.accept || next.state == a.reject) {
        check_halt(a, next);
        sys.rhs[v][next.state == a.accept ? 0 : 1] += t.prob;
        continue;
      }
      if (next.stack.size() > std::size_t(stackDepth) + 1) {
        res.exact = false;
        continue;
      }
      std::size_t u = intern(next);
      sys.coeffs[v].emplace_back(u, t.prob);
    }
  }
  auto sol = solve_fixpoint(sys);
  if (auto it = sol[0].find(0); it != sol[0].end()) res.accept = it->second;
  if (auto it = sol[0].find(1); it != sol[0].end()) res.reject = it->second;
  return res;
}

std::vector<Trace> trace_enumerate(const Automaton& a, const std::string& w, std::size_t maxLen, bool haltedOnly) {
  require_valid(a);
  std::vector<Trace> out;
  Trace cur{{}, Rational(1), std::nullopt};
  auto rec = [&](auto&& self, const Config& c) -> void {
    if (cur.steps.size() >= maxLen) return;
    std::string read = read_vector(c, w);
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      if (!matches(t, c, read)) continue;
      Config next = *step(a, c, t, w);
      Rational saved = cur.prob;
      cur.steps.push_back(i);
      cur.prob *= t.prob;
      if (next.state == a.accept || next.state == a.reject) {
        check_halt(a, next);
        cur.accepted = next.state == a.accept;
        out.push_back(cur);
        cur.accepted.reset();
      } else {
        if (!haltedOnly) out.push_back(cur);
        self(self, next);
      }
      cur.steps.pop_back();
      cur.prob = saved;
    }
  };
  rec(rec, initial_config(a));
  return out;
}

void write_automaton(std::ostream& out, const Automaton& a) {
  out << "automaton\n";
  out << "heads " << a.heads << "\n";
  out << "stack " << (a.pushdown ? "yes" : "no") << "\n";
  out << "states";
  for (const auto& s : a.states) out << ' ' << s;
  out << "\n";
  out << "init " << a.states.at(a.init) << "\n";
  out << "accept " << a.states.at(a.accept) << "\n";
  out << "reject " << a.states.at(a.reject) << "\n";
  for (const auto& t : a.transitions) {
    out << "trans " << a.states.at(t.state) << ' ' << t.read << ' ' << popped_text(t.popped) << ' ';
    for (std::size_t i = 0; i < t.moves.size(); ++i) {
      if (i) out << ',';
      out << t.moves[i].head + 1 << (t.moves[i].dir == Direction::In ? '+' : '-');
    }
    out << ' ' << (t.op ? std::string(op_name(*t.op)) : std::string("id")) << ' ' << a.states.at(t.next) << ' '
        << to_string(t.prob) << "\n";
  }
}

Automaton read_automaton(std::istream& in) {
  Automaton a;
  std::string line;
  std::size_t lineNo = 0;
  bool header = false;
  std::string initName, acceptName, rejectName;
  struct Pending {
    std::size_t line;
    std::string state, read, popped, moves, op, next, prob;
  };
  std::vector<Pending> pending;
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto rest = [&]() {
      std::vector<std::string> r;
      std::string x;
      while (ls >> x) r.push_back(x);
      return r;
    };
    auto one = [&](const std::string& what) {
      auto r = rest();
      if (r.size() != 1) throw ParseError(lineNo, what + " takes one value");
      return r[0];
    };
    if (!header) {
      if (word != "automaton") throw ParseError(lineNo, "expected 'automaton'");
      header = true;
      continue;
    }
    if (word == "heads") {
      auto v = one("heads");
      if (v.empty() || !std::all_of(v.begin(), v.end(), ::isdigit) || v.size() > 3)
        throw ParseError(lineNo, "bad head count");
      a.heads = static_cast<std::uint32_t>(std::stoul(v));
    } else if (word == "stack") {
      auto v = one("stack");
      if (v != "yes" && v != "no") throw ParseError(lineNo, "stack is yes or no");
      a.pushdown = v == "yes";
    } else if (word == "states") {
      a.states = rest();
    } else if (word == "init") {
      initName = one("init");
    } else if (word == "accept") {
      acceptName = one("accept");
    } else if (word == "reject") {
      rejectName = one("reject");
    } else if (word == "trans") {
      auto r = rest();
      if (r.size() != 7) throw ParseError(lineNo, "trans takes 7 fields");
      pending.push_back({lineNo, r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
    } else {
      throw ParseError(lineNo, "unknown keyword '" + word + "'");
    }
  }
  if (!header) throw ParseError(lineNo, "empty automaton file");
  auto state = [&](const std::string& name, std::size_t ln) {
    auto it = std::find(a.states.begin(), a.states.end(), name);
    if (it == a.states.end()) throw ParseError(ln, "unknown state '" + name + "'");
    return static_cast<std::uint32_t>(it - a.states.begin());
  };
  if (initName.empty() || acceptName.empty() || rejectName.empty())
    throw ParseError(lineNo, "init, accept and reject are required");
  a.init = state(initName, lineNo);
  a.accept = state(acceptName, lineNo);
  a.reject = state(rejectName, lineNo);
  for (const auto& p : pending) {
    Transition t;
    t.state = state(p.state, p.line);
    t.next = state(p.next, p.line);
    t.read = p.read;
    if (p.popped != "-") {
      if (p.popped.size() != 1) throw ParseError(p.line, "popped letter is one of *,0,1 or -");
      t.popped = p.popped[0];
    }
    std::istringstream ms(p.moves);
    std::string m;
    while (std::getline(ms, m, ',')) {
      if (m.size() < 2 || (m.back() != '+' && m.back() != '-')) throw ParseError(p.line, "bad move '" + m + "'");
      std::string num = m.substr(0, m.size() - 1);
      if (num.size() > 3 || !std::all_of(num.begin(), num.end(), ::isdigit) || num == "0" || num.empty())
        throw ParseError(p.line, "bad head in move '" + m + "'");
      t.moves.push_back({static_cast<std::uint32_t>(std::stoul(num) - 1), m.back() == '+' ? Direction::In : Direction::Out});
    }
    if (p.op == "id") {
    } else if (p.op == "pop") {
      t.op = StackOp::Pop;
    } else if (p.op == "push*") {
      t.op = StackOp::PushStar;
    } else if (p.op == "push0") {
      t.op = StackOp::Push0;
    } else if (p.op == "push1") {
      t.op = StackOp::Push1;
    } else {
      throw ParseError(p.line, "unknown stack op '" + p.op + "'");
    }
    try {
      t.prob = parse_rational(p.prob);
    } catch (const Error& e) {
      throw ParseError(p.line, e.what());
    }
    a.transitions.push_back(std::move(t));
  }
  return a;
}

std::string to_text(const Automaton& a) {
  std::ostringstream os;
  write_automaton(os, a);
  return os.str();
}

Automaton automaton_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_automaton(is);
}

}  // namespace ig
