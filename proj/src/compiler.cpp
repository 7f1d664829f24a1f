#include "ig/compiler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ig/errors.hpp"

namespace ig {

namespace {

constexpr char kLetters[] = {'*', '0', '1'};

std::uint32_t letter_digit(char c) { return c == '*' ? 0 : c == '0' ? 1 : 2; }

std::uint32_t pow3(std::uint32_t k) {
  std::uint32_t r = 1;
  while (k--) r *= 3;
  return r;
}

Polarity emission_polarity(Direction d) { return d == Direction::In ? Polarity::Out : Polarity::In; }

}  // namespace

DialectCodec::DialectCodec(const Automaton& a) : heads_(a.heads), names_(a.states) {
  const auto n = static_cast<std::uint32_t>(a.states.size());
  stateRank_.resize(n);
  rankState_.push_back(a.init);
  for (std::uint32_t q = 0; q < n; ++q)
    if (q != a.init) rankState_.push_back(q);
  for (std::uint32_t r = 0; r < n; ++r) stateRank_[rankState_[r]] = r;
  std::vector<std::uint32_t> p(heads_);
  std::iota(p.begin(), p.end(), 0u);
  do perms_.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::uint64_t size = std::uint64_t(n) * perms_.size() * pow3(heads_) * 3;
  if (size > (1u << 30)) throw ValidationError("compiled dialect too large");
  size_ = static_cast<std::uint32_t>(size);
}

std::uint32_t DialectCodec::encode(const DialectState& d) const {
  auto it = std::find(perms_.begin(), perms_.end(), d.sigma);
  if (it == perms_.end() || d.read.size() != heads_ || d.state >= stateRank_.size())
    throw ValidationError("malformed dialect state");
  std::uint32_t read = 0;
  for (char c : d.read) read = read * 3 + letter_digit(c);
  const auto n = static_cast<std::uint32_t>(stateRank_.size());
  const auto np = static_cast<std::uint32_t>(perms_.size());
  std::uint32_t sigma = static_cast<std::uint32_t>(it - perms_.begin());
  return stateRank_[d.state] + n * (sigma + np * (read + pow3(heads_) * letter_digit(d.popped)));
}

DialectState DialectCodec::decode(std::uint32_t index) const {
  if (index >= size_) throw ValidationError("dialect index out of range");
  const auto n = static_cast<std::uint32_t>(stateRank_.size());
  const auto np = static_cast<std::uint32_t>(perms_.size());
  DialectState d;
  d.state = rankState_[index % n];
  index /= n;
  d.sigma = perms_[index % np];
  index /= np;
  std::uint32_t read = index % pow3(heads_);
  d.popped = kLetters[index / pow3(heads_)];
  d.read.assign(heads_, '*');
  for (std::uint32_t h = heads_; h-- > 0;) {
    d.read[h] = kLetters[read % 3];
    read /= 3;
  }
  return d;
}

std::string DialectCodec::describe(std::uint32_t index) const {
  DialectState d = decode(index);
  std::string s = "(" + names_[d.state] + ",[";
  for (std::size_t h = 0; h < d.sigma.size(); ++h) s += (h ? " " : "") + std::to_string(d.sigma[h] + 1);
  return s + "]," + d.read + "," + d.popped + ")";
}

CompiledMachine compile(const Automaton& a) {
  require_valid(a);
  CompiledMachine m;
  m.codec = DialectCodec(a);
  m.heads = a.heads;
  m.pushdown = a.pushdown;
  GraphingRep& g = m.graphing;
  g.dialect = m.codec.size();
  for (int s = 0; s < kSymbolCount; ++s) g.support.atoms.push_back(Atom{static_cast<Symbol>(s), Box{}, Cylinder{}, 0});

  const std::uint32_t k = a.heads;
  std::vector<std::vector<std::uint32_t>> perms;
  {
    std::vector<std::uint32_t> p(k);
    std::iota(p.begin(), p.end(), 0u);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  const std::string stars(k, '*');

  auto emit = [&](Symbol from, const std::string& guard, std::uint32_t in, std::uint32_t out, Realizer r,
                  Rational p, std::int64_t prov) {
    Edge e;
    e.source = Region{Atom{from, Box{}, Cylinder{guard}, 0}};
    e.inState = in;
    e.outState = out;
    e.realizer = std::move(r);
    e.weight = Weight{std::move(p), false};
    e.provenance = prov;
    g.edges.push_back(std::move(e));
  };
  // (guard, popped letter afterwards) for each source cylinder of a transition.
  auto stack_cases = [](const Transition& t, char u) {
    std::vector<std::pair<std::string, char>> cases;
    if (t.op == StackOp::Pop) {
      for (char top : kLetters) cases.emplace_back(std::string(1, top), top);
    } else {
      cases.emplace_back("", u);
    }
    return cases;
  };
  auto ops_of = [](const Transition& t) {
    return t.op ? std::vector<StackOp>{*t.op} : std::vector<StackOp>{};
  };

  for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
    const Transition& t = a.transitions[ti];
    const std::uint32_t head = t.moves.front().head;
    const Symbol target = letter_symbol(t.read[head], emission_polarity(t.moves.front().dir));
    const auto prov = static_cast<std::int64_t>(ti);

    for (const auto& sigma : perms) {
      const std::uint32_t h1 = static_cast<std::uint32_t>(std::find(sigma.begin(), sigma.end(), 0u) - sigma.begin());
      std::vector<std::uint32_t> next = sigma;
      for (auto& c : next) {
        if (c == 0) c = sigma[head];
        else if (c == sigma[head]) c = 0;
      }
      Realizer swap = sigma[head] == 0 ? Realizer{} : Realizer::transposition(0, sigma[head]);
      for (char old : kLetters) {
        std::string before = t.read;
        before[h1] = old;
        for (Polarity pol : {Polarity::In, Polarity::Out}) {
          const Symbol from = letter_symbol(t.read[h1], pol);
          Realizer r = compose(swap, Realizer::translation(psi(target) - psi(from)).with_ops(ops_of(t)));
          for (char u : kLetters) {
            if (t.popped && *t.popped != u) continue;
            std::uint32_t in = m.codec.encode({t.state, sigma, before, u});
            for (const auto& [guard, u2] : stack_cases(t, u))
              emit(from, guard, in, m.codec.encode({t.next, next, t.read, u2}), r, t.prob, prov);
          }
        }
      }
    }

    // The run starts from [[a]] or [[r]] on V(*) with every head on the marker.
    if (t.state == a.init && t.read == stars && (!t.popped || *t.popped == '*')) {
      std::vector<std::uint32_t> id(k);
      std::iota(id.begin(), id.end(), 0u);
      std::vector<std::uint32_t> next = id;
      std::swap(next[0], next[head]);
      Realizer swap = head == 0 ? Realizer{} : Realizer::transposition(0, head);
      for (Symbol v : {Symbol::Accept, Symbol::Reject}) {
        Realizer r = compose(swap, Realizer::translation(psi(target) - psi(v)).with_ops(ops_of(t)));
        emit(v, "*", 0, m.codec.encode({t.next, next, t.read, '*'}), r, t.prob, prov);
      }
    }
  }

  // Halting: every head reads the marker; restore the coordinates and leave.
  for (const auto& sigma : perms) {
    const std::uint32_t h1 = static_cast<std::uint32_t>(std::find(sigma.begin(), sigma.end(), 0u) - sigma.begin());
    std::vector<std::uint32_t> inverse(k);
    for (std::uint32_t h = 0; h < k; ++h) inverse[sigma[h]] = h;
    Realizer restore = Realizer::permutation(inverse);
    for (auto [halt, to, prov] : {std::tuple{a.accept, Symbol::Accept, kHaltAccept},
                                  std::tuple{a.reject, Symbol::Reject, kHaltReject}}) {
      for (char old : kLetters) {
        std::string before = stars;
        before[h1] = old;
        for (Polarity pol : {Polarity::In, Polarity::Out}) {
          const Symbol from = letter_symbol('*', pol);
          Realizer r = compose(restore, Realizer::translation(psi(to) - psi(from)));
          for (char u : kLetters) emit(from, "", m.codec.encode({halt, sigma, before, u}), 0, r, Rational(1), prov);
        }
      }
    }
  }
  return m;
}

CompiledMachine prune_unreachable(const CompiledMachine& m) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> succ;
  for (const auto& e : m.graphing.edges) succ[e.inState].push_back(e.outState);
  std::vector<char> seen(m.graphing.dialect, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : succ[v])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  CompiledMachine out = m;
  out.graphing.edges.clear();
  for (const auto& e : m.graphing.edges)
    if (seen[e.inState]) out.graphing.edges.push_back(e);
  return out;
}

Cube marker_cube(const WordRepresentation& w, std::uint32_t heads) { return Cube(heads, w.marker_cell()); }

Region accept_region(const CompiledMachine& m, const WordRepresentation& w) {
  return marker_region(w, m.heads, Symbol::Accept, "*");
}

PathSum run(const CompiledMachine& m, const WordRepresentation& w, const ExecOptions& opts) {
  ExecOptions o = opts;
  o.grid = w.grid;
  o.coords = std::max(o.coords, m.heads);
  if (m.pushdown && o.stackDepth == 0) throw ValidationError("stack depth must be positive for pushdown machines");
  return accept_path_sum(m.graphing, w.graphing, accept_region(m, w), o);
}

std::pair<ThickGraph, ThickGraph> finite_view(const CompiledMachine& m, const WordRepresentation& w) {
  return {discretize(m.graphing, w.grid, m.heads), discretize(w.graphing, w.grid, m.heads)};
}

std::vector<FinitePath> finite_view_paths(const ThickGraph& machine, const ThickGraph& word, const Cube& start,
                                          std::size_t maxEdges) {
  struct Out {
    std::map<std::tuple<Symbol, Cube, std::uint32_t>, std::vector<const ThickEdge*>> bySource;
    const ThickGraph* g;
    explicit Out(const ThickGraph& t) : g(&t) {
      for (const auto& e : t.edges) {
        const auto& n = t.nodes[e.from];
        bySource[{n.sym, n.cube, n.state}].push_back(&e);
      }
    }
    const std::vector<const ThickEdge*>* at(Symbol s, const Cube& c, std::uint32_t state) const {
      auto it = bySource.find({s, c, state});
      return it == bySource.end() ? nullptr : &it->second;
    }
  };
  Out mOut(machine), wOut(word);
  std::vector<FinitePath> paths;
  FinitePath cur;
  cur.prob = 1;
  std::vector<StackOp> ops;

  // turn: true for the machine
  auto rec = [&](auto&& self, Symbol sym, const Cube& cube, std::uint32_t dm, std::uint32_t dw, bool turn,
                 const std::string& stack) -> void {
    if (cur.length >= maxEdges) return;
    const Out& side = turn ? mOut : wOut;
    const auto* list = side.at(sym, cube, turn ? dm : dw);
    if (!list) return;
    for (const ThickEdge* e : *list) {
      if (stack.compare(0, e->guard.size(), e->guard) != 0) continue;
      std::string st = stack;
      bool ok = true;
      for (std::size_t i = 0; i < e->theta.pops(); ++i) {
        if (st.empty()) {
          ok = false;
          break;
        }
        st.erase(0, 1);
      }
      if (!ok) continue;
      st = e->theta.pushed() + st;
      const ThickNode& to = side.g->nodes[e->to];
      FinitePath saved = cur;
      ++cur.length;
      cur.prob *= e->weight.p;
      cur.theta = theta_mul(e->theta, cur.theta);
      if (turn) {
        cur.provenance.push_back(e->provenance);
        paths.push_back(cur);
      }
      if (is_letter_symbol(to.sym))
        self(self, to.sym, to.cube, turn ? to.state : dm, turn ? dw : to.state, !turn, st);
      cur = std::move(saved);
    }
  };
  rec(rec, Symbol::Accept, start, 0, 0, true, "*");
  return paths;
}

}  // namespace ig
