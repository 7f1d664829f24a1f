#include "ig/execution.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ig/errors.hpp"
#include "ig/linear_solve.hpp"

namespace ig {

namespace {

struct GridEdge {
  std::uint32_t in = 0, out = 0;
  Symbol sym = Symbol::Accept, target = Symbol::Accept;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> range;  // [lo, hi) per coordinate
  std::string guard;
  std::vector<std::uint32_t> perm;
  std::vector<std::int64_t> offset;  // per output coordinate, in cells
  std::vector<StackOp> ops;
  Weight weight;
  std::int64_t provenance = -1;

  bool covers(const Cube& c) const {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] < range[i].first || c[i] >= range[i].second) return false;
    return true;
  }
};

std::uint32_t cells(const Rational& x, std::uint32_t grid, const char* what) {
  Rational y = x * grid;
  if (y.get_den() != 1) throw DiscretizationError(std::string(what) + " " + to_string(x) + " is off the 1/" + std::to_string(grid) + " grid");
  return static_cast<std::uint32_t>(y.get_num().get_ui());
}

std::int64_t signed_cells(const Rational& x, std::uint32_t grid) {
  Rational y = x * grid;
  if (y.get_den() != 1) throw DiscretizationError("box translation " + to_string(x) + " is off the 1/" + std::to_string(grid) + " grid");
  return y.get_num().get_si();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges_of(const Box& box, std::uint32_t grid, std::uint32_t coords) {
  Box b = box.canonical();
  if (b.dims() > coords) throw DiscretizationError("box uses more than " + std::to_string(coords) + " coordinates");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> r(coords);
  for (std::uint32_t c = 0; c < coords; ++c) {
    Interval iv = b.coord(c);
    r[c] = {cells(iv.lo, grid, "box endpoint"), cells(iv.hi, grid, "box endpoint")};
  }
  return r;
}

class GridIndex {
 public:
  GridIndex(const GraphingRep& g, std::uint32_t grid, std::uint32_t coords) : grid_(grid), coords_(coords) {
    for (const auto& e : g.edges) {
      if (e.realizer.support() > coords) throw DiscretizationError("realizer acts beyond coordinate " + std::to_string(coords));
      for (const auto& atom : e.source.atoms) {
        GridEdge ge;
        ge.in = e.inState;
        ge.out = e.outState;
        ge.sym = atom.sym;
        auto target = symbol_at(psi(atom.sym) + e.realizer.shift());
        if (!target) throw InvalidTargetError("edge shifts " + std::string(symbol_name(atom.sym)) + " out of the symbol intervals");
        ge.target = *target;
        ge.range = ranges_of(atom.box, grid, coords);
        ge.guard = atom.cyl.prefix;
        ge.perm.resize(coords);
        ge.offset.assign(coords, 0);
        for (std::uint32_t c = 0; c < coords; ++c) ge.perm[c] = e.realizer.image(c);
        for (const auto& [c, amt] : e.realizer.box_shifts()) ge.offset[c] = signed_cells(amt, grid);
        ge.ops = e.realizer.stack_ops();
        ge.weight = e.weight;
        ge.provenance = e.provenance;
        if (ge.weight.p == 0) continue;
        byKey_[key(ge.sym, ge.in)].push_back(std::move(ge));
      }
    }
  }

  const std::vector<GridEdge>* at(Symbol s, std::uint32_t state) const {
    auto it = byKey_.find(key(s, state));
    return it == byKey_.end() ? nullptr : &it->second;
  }

  template <class Fn>
  void for_each(Fn fn) const {
    for (const auto& [k, list] : byKey_)
      for (const auto& e : list) fn(e);
  }

  Cube move(const GridEdge& e, const Cube& c) const {
    Cube out(coords_);
    for (std::uint32_t i = 0; i < coords_; ++i) {
      std::int64_t v = static_cast<std::int64_t>(c[i]) + e.offset[e.perm[i]];
      if (v < 0 || v >= static_cast<std::int64_t>(grid_)) throw InvalidTargetError("edge image leaves [0,1]");
      out[e.perm[i]] = static_cast<std::uint32_t>(v);
    }
    return out;
  }

 private:
  static std::uint64_t key(Symbol s, std::uint32_t state) { return (std::uint64_t(state) << 3) | std::uint64_t(s); }
  std::uint32_t grid_, coords_;
  std::unordered_map<std::uint64_t, std::vector<GridEdge>> byKey_;
};

struct StackView {
  std::string prefix;
  std::uint32_t popped = 0;
  std::string pushed;
};

// Stack views after checking `guard` and applying `ops`; several when the
// ops pop below the known part of the source stack.
std::vector<StackView> apply_stack(StackView v, const std::string& guard, const std::vector<StackOp>& ops) {
  std::string known = v.pushed + v.prefix.substr(v.popped);
  std::size_t common = std::min(known.size(), guard.size());
  if (known.compare(0, common, guard, 0, common) != 0) return {};
  if (guard.size() > known.size()) v.prefix += guard.substr(known.size());
  std::vector<StackView> cur{v};
  for (StackOp op : ops) {
    std::vector<StackView> next;
    for (auto& s : cur) {
      if (op != StackOp::Pop) {
        s.pushed.insert(s.pushed.begin(), pushed_letter(op));
        next.push_back(std::move(s));
      } else if (!s.pushed.empty()) {
        s.pushed.erase(0, 1);
        next.push_back(std::move(s));
      } else if (s.popped < s.prefix.size()) {
        ++s.popped;
        next.push_back(std::move(s));
      } else {
        for (char x : {'*', '0', '1'}) {
          StackView t = s;
          t.prefix += x;
          ++t.popped;
          next.push_back(std::move(t));
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

struct Config {
  Side turn = Side::F;
  PathExit at;  // current cell, states and stack
};

void put(std::string& k, std::uint32_t v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); }

std::string exit_key(const PathExit& e) {
  std::string k;
  k += static_cast<char>(e.sym);
  for (auto c : e.cube) put(k, c);
  put(k, e.stateF);
  put(k, e.stateG);
  put(k, e.popped);
  for (auto c : e.perm) put(k, c);
  k += e.flag ? '1' : '0';
  k += e.prefix;
  k += '|';
  k += e.pushed;
  return k;
}

std::string config_key(const Config& c) {
  std::string k = exit_key(c.at);
  k += c.turn == Side::F ? 'F' : 'G';
  return k;
}

Side other(Side s) { return s == Side::F ? Side::G : Side::F; }

void collect(const Region& r, std::uint32_t& grid, std::uint32_t& coords) {
  for (const auto& a : r.atoms) {
    Box b = a.box.canonical();
    coords = std::max<std::uint32_t>(coords, static_cast<std::uint32_t>(b.dims()));
    for (const auto& iv : b.intervals()) {
      grid = static_cast<std::uint32_t>(std::lcm<std::uint64_t>(grid, iv.lo.get_den().get_ui()));
      grid = static_cast<std::uint32_t>(std::lcm<std::uint64_t>(grid, iv.hi.get_den().get_ui()));
    }
  }
}

void collect(const GraphingRep& g, std::uint32_t& grid, std::uint32_t& coords) {
  collect(g.support, grid, coords);
  for (const auto& e : g.edges) {
    collect(e.source, grid, coords);
    coords = std::max<std::uint32_t>(coords, static_cast<std::uint32_t>(e.realizer.support()));
    for (const auto& [c, amt] : e.realizer.box_shifts())
      grid = static_cast<std::uint32_t>(std::lcm<std::uint64_t>(grid, amt.get_den().get_ui()));
  }
}

}  // namespace

ThetaWord PathExit::theta() const { return ThetaWord(pushed + std::string(popped, 'c')); }

bool PathExit::perm_identity() const {
  for (std::uint32_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

std::string to_string(const Cube& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

std::uint32_t grid_of(std::span<const GraphingRep* const> gs, std::span<const Region> regions) {
  std::uint32_t grid = 1, coords = 1;
  for (const auto* g : gs) collect(*g, grid, coords);
  for (const auto& r : regions) collect(r, grid, coords);
  return grid;
}

std::uint32_t coords_of(std::span<const GraphingRep* const> gs, std::span<const Region> regions) {
  std::uint32_t grid = 1, coords = 1;
  for (const auto* g : gs) collect(*g, grid, coords);
  for (const auto& r : regions) collect(r, grid, coords);
  return coords;
}

struct Execution::Impl {
  std::uint32_t grid, coords;
  ExecOptions opts;
  GridIndex f, g;
  std::uint32_t fDialect, gDialect;
  struct CutCell {
    Symbol sym;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> range;
  };
  std::vector<CutCell> cut;

  Impl(const GraphingRep& fg, const GraphingRep& gg, std::uint32_t gridSize, std::uint32_t n, const ExecOptions& o)
      : grid(gridSize),
        coords(n),
        opts(o),
        f(fg, gridSize, n),
        g(gg, gridSize, n),
        fDialect(fg.dialect),
        gDialect(gg.dialect) {}

  bool in_cut(Symbol s, const Cube& c) const {
    for (const auto& cc : cut) {
      if (cc.sym != s) continue;
      bool inside = true;
      for (std::size_t i = 0; i < c.size() && inside; ++i) inside = c[i] >= cc.range[i].first && c[i] < cc.range[i].second;
      if (inside) return true;
    }
    return false;
  }

  // Calls fn(edge, next, truncated) for every edge applicable at `c`.
  template <class Fn>
  void successors(const Config& c, Fn fn) const {
    const GridIndex& idx = c.turn == Side::F ? f : g;
    const auto* list = idx.at(c.at.sym, c.turn == Side::F ? c.at.stateF : c.at.stateG);
    if (!list) return;
    for (const auto& e : *list) {
      if (!e.covers(c.at.cube)) continue;
      StackView sv{c.at.prefix, c.at.popped, c.at.pushed};
      auto views = apply_stack(sv, e.guard, e.ops);
      if (views.empty()) continue;
      Cube cube = idx.move(e, c.at.cube);
      for (auto& v : views) {
        Config n;
        n.at.sym = e.target;
        n.at.cube = cube;
        n.at.stateF = c.turn == Side::F ? e.out : c.at.stateF;
        n.at.stateG = c.turn == Side::G ? e.out : c.at.stateG;
        n.at.prefix = std::move(v.prefix);
        n.at.popped = v.popped;
        n.at.pushed = std::move(v.pushed);
        n.at.perm.resize(coords);
        for (std::uint32_t i = 0; i < coords; ++i) n.at.perm[i] = e.perm[c.at.perm[i]];
        n.at.flag = c.at.flag || e.weight.flag;
        n.turn = other(c.turn);
        std::int64_t height = static_cast<std::int64_t>(n.at.pushed.size()) - n.at.popped;
        // Only the stack operations count against the budget: guards of a
        // refined source may look deeper without changing which paths exist.
        bool truncated = height > static_cast<std::int64_t>(opts.stackDepth) || n.at.popped > opts.stackDepth;
        fn(e, std::move(n), truncated);
      }
    }
  }

  Config initial(const PathStart& s) const {
    if (s.cube.size() != coords) throw ValidationError("start cube has the wrong dimension");
    Config c;
    c.turn = s.side;
    c.at.sym = s.sym;
    c.at.cube = s.cube;
    c.at.stateF = s.stateF;
    c.at.stateG = s.stateG;
    c.at.prefix = s.prefix;
    c.at.perm.resize(coords);
    std::iota(c.at.perm.begin(), c.at.perm.end(), 0u);
    return c;
  }
};

Execution::Execution(const GraphingRep& f, const GraphingRep& g, const Region& cut, const ExecOptions& opts,
                     std::span<const Region> aligned) {
  std::vector<Region> regions(aligned.begin(), aligned.end());
  regions.push_back(cut);
  const GraphingRep* gs[] = {&f, &g};
  std::uint32_t grid = opts.grid ? opts.grid : grid_of(gs, regions);
  std::uint32_t coords = std::max(opts.coords, coords_of(gs, regions));
  impl_ = std::make_unique<Impl>(f, g, grid, coords, opts);
  for (const auto& a : cut.atoms) {
    if (!a.cyl.prefix.empty()) throw ScopeError("cuts restricted to a stack cylinder are not supported");
    impl_->cut.push_back({a.sym, ranges_of(a.box, grid, coords)});
  }
}

Execution::~Execution() = default;
Execution::Execution(Execution&&) noexcept = default;

std::uint32_t Execution::grid() const { return impl_->grid; }
std::uint32_t Execution::coords() const { return impl_->coords; }
bool Execution::in_cut(Symbol s, const Cube& c) const { return impl_->in_cut(s, c); }

std::vector<Cube> Execution::cubes_of(const Atom& a) const {
  auto r = ranges_of(a.box, impl_->grid, impl_->coords);
  std::vector<Cube> out;
  Cube c(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].first >= r[i].second) return out;
    c[i] = r[i].first;
  }
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++c[i] < r[i].second) break;
      c[i] = r[i].first;
    }
    if (i == c.size()) break;
  }
  return out;
}

Atom Execution::cell_atom(Symbol s, const Cube& c, const std::string& prefix, std::uint32_t state) const {
  Box b;
  const Rational w(1, impl_->grid);
  for (std::size_t i = 0; i < c.size(); ++i) b.set(i, Interval{w * c[i], w * (c[i] + 1)});
  return Atom{s, b.canonical(), Cylinder{prefix}, state};
}

Exploration Execution::explore(const PathStart& start) const {
  const Impl& im = *impl_;
  Exploration res;
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<Config> configs;
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<SparseVector> rhs;
  std::unordered_map<std::string, std::size_t> exitIds;
  std::vector<PathExit> exits;

  auto intern = [&](Config c) {
    auto [it, fresh] = ids.emplace(config_key(c), configs.size());
    if (fresh) {
      if (configs.size() >= im.opts.maxConfigs) throw BudgetError("interaction exceeds the configuration budget");
      configs.push_back(std::move(c));
      rows.emplace_back();
      rhs.emplace_back();
    }
    return it->second;
  };
  intern(im.initial(start));
  for (std::size_t v = 0; v < configs.size(); ++v) {
    Config c = configs[v];
    im.successors(c, [&](const GridEdge& e, Config n, bool truncated) {
      if (truncated) {
        res.exact = false;
        return;
      }
      if (im.in_cut(n.at.sym, n.at.cube)) {
        std::size_t u = intern(std::move(n));
        rows[v][u] += e.weight.p;
      } else {
        auto [it, fresh] = exitIds.emplace(exit_key(n.at), exits.size());
        if (fresh) exits.push_back(n.at);
        rhs[v][it->second] += e.weight.p;
      }
    });
  }
  FixpointSystem sys;
  for (std::size_t v = 0; v < configs.size(); ++v) {
    sys.add_variable();
    sys.coeffs[v].assign(rows[v].begin(), rows[v].end());
    sys.rhs[v] = std::move(rhs[v]);
  }
  res.configs = configs.size();
  auto sol = solve_from(sys, 0);
  for (const auto& [col, w] : sol)
    if (w != 0) res.exits.emplace_back(exits[col], w);
  std::sort(res.exits.begin(), res.exits.end(),
            [](const auto& a, const auto& b) { return exit_key(a.first) < exit_key(b.first); });
  return res;
}

std::vector<AlternatingPath> Execution::enumerate(const PathStart& start, std::size_t maxEdges) const {
  const Impl& im = *impl_;
  std::vector<AlternatingPath> out;
  AlternatingPath cur;
  cur.weight = Weight{1, false};
  auto rec = [&](auto&& self, const Config& c) -> void {
    if (cur.edges.size() >= maxEdges) return;
    im.successors(c, [&](const GridEdge& e, Config n, bool) {
      AlternatingPath saved = cur;
      cur.edges.emplace_back(c.turn, e.provenance);
      cur.ops.insert(cur.ops.end(), e.ops.begin(), e.ops.end());
      cur.weight = cur.weight * e.weight;
      if (im.in_cut(n.at.sym, n.at.cube)) {
        self(self, n);
      } else {
        cur.end = n.at;
        out.push_back(cur);
      }
      cur = std::move(saved);
    });
  };
  rec(rec, im.initial(start));
  return out;
}

std::vector<PathStart> Execution::edge_starts() const {
  const Impl& im = *impl_;
  std::map<std::string, PathStart> found;
  auto add = [&](Side side, const GridIndex& idx, std::uint32_t otherDialect) {
    idx.for_each([&](const GridEdge& e) {
      Atom a{e.sym, Box{}, Cylinder{}, 0};
      std::vector<Interval> ivs;
      const Rational w(1, im.grid);
      for (const auto& [lo, hi] : e.range) ivs.push_back(Interval{w * lo, w * hi});
      a.box = Box(ivs);
      for (const auto& cube : cubes_of(a)) {
        if (im.in_cut(e.sym, cube)) continue;
        for (std::uint32_t d = 0; d < otherDialect; ++d) {
          PathStart s;
          s.side = side;
          s.sym = e.sym;
          s.cube = cube;
          s.stateF = side == Side::F ? e.in : d;
          s.stateG = side == Side::G ? e.in : d;
          std::string k = std::string(1, side == Side::F ? 'F' : 'G') + char(s.sym) + to_string(cube) + ":" +
                          std::to_string(s.stateF) + ":" + std::to_string(s.stateG);
          found.emplace(std::move(k), std::move(s));
        }
      }
    });
  };
  add(Side::F, im.f, im.gDialect);
  add(Side::G, im.g, im.fDialect);
  std::vector<PathStart> out;
  for (auto& [k, s] : found) out.push_back(std::move(s));
  return out;
}

}  // namespace ig

namespace ig {

Realizer Execution::realizer_of(const PathStart& start, const PathExit& exit) const {
  const Rational w(1, impl_->grid);
  Realizer r = Realizer::permutation(exit.perm);
  for (std::uint32_t c = 0; c < exit.perm.size(); ++c) {
    std::int64_t d = static_cast<std::int64_t>(exit.cube[exit.perm[c]]) - static_cast<std::int64_t>(start.cube[c]);
    if (d != 0) r = compose(r, Realizer::box_shift(exit.perm[c], w * Rational(static_cast<long>(d))));
  }
  std::vector<StackOp> ops(exit.popped, StackOp::Pop);
  for (auto it = exit.pushed.rbegin(); it != exit.pushed.rend(); ++it) ops.push_back(push_of(*it));
  return compose(r, Realizer::translation(psi(exit.sym) - psi(start.sym)).with_ops(std::move(ops)));
}

PlugResult plug(const GraphingRep& f, const GraphingRep& g, const CutSpec& cut, const ExecOptions& opts) {
  if (measure(intersect(cut.leftRest, cut.rightRest)) != 0) throw ValidationError("V and W overlap");
  const Region aligned[] = {cut.leftRest, cut.rightRest};
  Execution ex(f, g, cut.cut, opts, aligned);
  PlugResult res;
  res.graphing.dialect = f.dialect * g.dialect;
  Region support = cut.leftRest;
  support.atoms.insert(support.atoms.end(), cut.rightRest.atoms.begin(), cut.rightRest.atoms.end());
  res.graphing.support = canonical(support);

  std::map<std::tuple<std::uint32_t, std::uint32_t, Realizer, Weight>, std::size_t> fused;
  for (const auto& start : ex.edge_starts()) {
    Exploration e = ex.explore(start);
    if (!e.exact) {
      if (opts.requireExact) throw TruncationError("stack depth " + std::to_string(opts.stackDepth) + " exhausted");
      res.exact = false;
    }
    // Exits may need nested cylinders (V(u) and V(u0)); summing over a common
    // refinement keeps the fused sources disjoint.
    std::set<std::string> leaves;
    for (const auto& [exit, w] : e.exits) leaves.insert(exit.prefix);
    for (bool again = true; again;) {
      again = false;
      for (auto it = leaves.begin(); it != leaves.end(); ++it) {
        auto next = std::next(it);
        if (next != leaves.end() && next->starts_with(*it)) {
          std::string p = *it;
          leaves.erase(it);
          for (char c : std::string("*01")) leaves.insert(p + c);
          again = true;
          break;
        }
      }
    }
    const std::uint32_t in = start.stateF * g.dialect + start.stateG;
    for (const auto& leaf : leaves) {
      std::map<std::tuple<std::uint32_t, Realizer, bool>, Rational> mass;
      for (const auto& [exit, w] : e.exits)
        if (leaf.starts_with(exit.prefix))
          mass[{exit.stateF * g.dialect + exit.stateG, ex.realizer_of(start, exit), exit.flag}] += w;
      Atom a = ex.cell_atom(start.sym, start.cube, leaf);
      for (const auto& [k, w] : mass) {
        const auto& [out, realizer, flag] = k;
        Weight weight{w, flag};
        auto [it, fresh] = fused.emplace(std::make_tuple(in, out, realizer, weight), res.graphing.edges.size());
        if (fresh) {
          Edge edge;
          edge.inState = in;
          edge.outState = out;
          edge.realizer = realizer;
          edge.weight = weight;
          edge.source = Region{a};
          res.graphing.edges.push_back(std::move(edge));
        } else {
          res.graphing.edges[it->second].source.atoms.push_back(a);
        }
      }
    }
    if (res.graphing.edges.size() > opts.maxEdges) throw BudgetError("execution exceeds the edge budget");
  }
  for (auto& e : res.graphing.edges) e.source = canonical(e.source);
  return res;
}

PathSum accept_path_sum(const GraphingRep& m, const GraphingRep& w, const Region& acceptRegion,
                        const ExecOptions& opts) {
  const Region aligned[] = {acceptRegion};
  Execution ex(m, w, w.support, opts, aligned);
  struct Target {
    Symbol sym;
    std::vector<Cube> cubes;
  };
  std::vector<Target> targets;
  for (const auto& a : acceptRegion.atoms) targets.push_back({a.sym, ex.cubes_of(a)});
  auto landed = [&](const PathExit& e) {
    for (const auto& t : targets)
      if (t.sym == e.sym && std::find(t.cubes.begin(), t.cubes.end(), e.cube) != t.cubes.end()) return true;
    return false;
  };
  PathSum res;
  for (const auto& a : acceptRegion.atoms) {
    for (const auto& cube : ex.cubes_of(a)) {
      PathStart s;
      s.side = Side::F;
      s.sym = a.sym;
      s.cube = cube;
      s.prefix = a.cyl.prefix;
      Exploration e = ex.explore(s);
      if (!e.exact) {
        if (opts.requireExact) throw TruncationError("stack depth " + std::to_string(opts.stackDepth) + " exhausted");
        res.exact = false;
      }
      for (const auto& [exit, p] : e.exits) {
        if (!landed(exit)) continue;
        res.total[reduce(exit.theta())] += p;
        res.lowerBound += p;
        if (exit.stack_restored()) res.stackRestored += p;
      }
    }
  }
  return res;
}

Rational pure_pop_mass(const PathSum& s) {
  Rational r(0);
  for (const auto& [t, p] : s.total)
    if (t.is_pure_pop()) r += p;
  return r;
}

ThickGraph discretize(const GraphingRep& gr, std::uint32_t grid, std::uint32_t coords) {
  GridIndex idx(gr, grid, coords);
  ThickGraph t;
  t.grid = grid;
  t.coords = coords;
  struct Raw {
    ThickNode from, to;
    const GridEdge* e;
  };
  std::vector<Raw> raw;
  std::set<ThickNode> nodes;
  Region dummy;
  idx.for_each([&](const GridEdge& e) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> r = e.range;
    Cube c(coords);
    for (std::size_t i = 0; i < coords; ++i) {
      if (r[i].first >= r[i].second) return;
      c[i] = r[i].first;
    }
    while (true) {
      ThickNode a{e.sym, c, e.in}, b{e.target, idx.move(e, c), e.out};
      nodes.insert(a);
      nodes.insert(b);
      raw.push_back({a, b, &e});
      std::size_t i = 0;
      for (; i < coords; ++i) {
        if (++c[i] < r[i].second) break;
        c[i] = r[i].first;
      }
      if (i == coords) break;
    }
  });
  t.nodes.assign(nodes.begin(), nodes.end());
  auto index = [&](const ThickNode& n) {
    return static_cast<std::size_t>(std::lower_bound(t.nodes.begin(), t.nodes.end(), n) - t.nodes.begin());
  };
  for (const auto& r : raw)
    t.edges.push_back({index(r.from), index(r.to), r.e->weight, encode_ops(r.e->ops), r.e->guard, r.e->provenance});
  std::sort(t.edges.begin(), t.edges.end(), [](const ThickEdge& a, const ThickEdge& b) {
    return std::tie(a.from, a.to, a.provenance, a.guard, a.theta, a.weight) <
           std::tie(b.from, b.to, b.provenance, b.guard, b.theta, b.weight);
  });
  return t;
}

std::pair<ThickGraph, ThickGraph> discretize(const GraphingRep& f, const GraphingRep& g, std::uint32_t grid) {
  const GraphingRep* gs[] = {&f, &g};
  std::uint32_t n = coords_of(gs);
  return {discretize(f, grid, n), discretize(g, grid, n)};
}

void dump(std::ostream& out, const ThickGraph& t) {
  out << "thickgraph grid " << t.grid << " coords " << t.coords << " nodes " << t.nodes.size() << " edges "
      << t.edges.size() << "\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    out << "node " << i << ' ' << symbol_name(t.nodes[i].sym) << ' ' << to_string(t.nodes[i].cube) << ' '
        << t.nodes[i].state << "\n";
  for (const auto& e : t.edges)
    out << "edge " << e.from << ' ' << e.to << ' ' << to_string(e.weight) << ' ' << to_string(e.theta) << ' '
        << (e.guard.empty() ? "-" : e.guard) << ' ' << e.provenance << "\n";
}

void dump(std::ostream& out, const PathSum& s) {
  out << "pathsum exact " << (s.exact ? "yes" : "no") << "\n";
  out << "total " << to_string(s.lowerBound) << "\n";
  out << "restored " << to_string(s.stackRestored) << "\n";
  for (const auto& [t, p] : s.total) out << "class " << to_string(t) << ' ' << to_string(p) << "\n";
}

}  // namespace ig
