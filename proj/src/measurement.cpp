#include "ig/measurement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "ig/errors.hpp"

namespace ig {

namespace {

Region region_of(Symbol s, std::uint32_t n, const std::string& cyl) {
  Box b;
  for (std::uint32_t c = 0; c < n; ++c) b.set(c, Interval{Rational(0), Rational(1, n)});
  return Region{Atom{s, b.canonical(), Cylinder{cyl}, 0}};
}

GraphingRep test_graphing(const Region& source, Weight w) {
  GraphingRep g;
  g.support = Region{Atom{Symbol::Accept, Box{}, Cylinder{}, 0}, Atom{Symbol::Reject, Box{}, Cylinder{}, 0}};
  g.dialect = 1;
  Edge e;
  e.source = source;
  e.weight = w;
  g.edges.push_back(std::move(e));
  return g;
}

MeasurementValue classify(Wager v, bool infinite) {
  MeasurementValue r;
  r.value = std::move(v);
  r.kind = infinite ? MeasurementValue::Kind::Infinite
                    : r.value.is_zero() ? MeasurementValue::Kind::Zero : MeasurementValue::Kind::Finite;
  return r;
}

// Adds -log(1 - m) for each class.
MeasurementValue with_classes(Wager v, const std::vector<Rational>& classes) {
  for (const auto& m : classes) {
    if (m >= 1) return classify(v, true);
    v.logArg /= (1 - m);
  }
  return classify(v, false);
}

struct CycleKey {
  std::uint32_t state;
  std::uint32_t popped;
  std::string pushed;
  Rational mass;
  friend bool operator<(const CycleKey& a, const CycleKey& b) {
    return std::tie(a.state, a.popped, a.pushed) < std::tie(b.state, b.popped, b.pushed) ||
           (std::tie(a.state, a.popped, a.pushed) == std::tie(b.state, b.popped, b.pushed) && a.mass < b.mass);
  }
};

// Cycles M and W close on cells of a test region.
class CycleFinder {
 public:
  CycleFinder(const GraphingRep& m, const WordRepresentation& w, const ExecOptions& opts)
      : m_(m), w_(w), opts_(opts) {
    const GraphingRep* gs[] = {&m};
    heads_ = std::max<std::uint32_t>(1, coords_of(gs));
    cut_ = word_support();
  }

  std::uint32_t heads() const { return heads_; }
  bool exact() const { return exact_; }

  // Classes on the cells of [[s]] with coordinates c < limit restricted to
  // [0, 1/n] (n = 0: no restriction), start stack prefix `prefix`.
  std::set<CycleKey> classes(Symbol s, std::uint32_t n, std::uint32_t limit, const std::string& prefix) {
    std::uint32_t grid = n ? std::lcm(w_.grid, n) : w_.grid;
    Execution& ex = execution(grid);
    std::vector<std::uint32_t> starts;
    for (const auto& e : m_.edges)
      for (const auto& a : e.source.atoms)
        if (a.sym == s) starts.push_back(e.inState);
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

    Box box;
    for (std::uint32_t c = 0; c < std::min(limit, heads_); ++c) box.set(c, Interval{Rational(0), Rational(1, n)});
    std::set<CycleKey> out;
    for (const auto& cube : ex.cubes_of(Atom{s, box, Cylinder{}, 0})) {
      for (auto st : starts) {
        PathStart ps{Side::F, s, cube, st, 0, prefix};
        auto key = std::make_tuple(grid, cube, st, prefix, s);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
          Exploration e = ex.explore(ps);
          exact_ = exact_ && e.exact;
          std::map<std::tuple<std::uint32_t, std::string>, Rational> masses;
          for (const auto& [exit, p] : e.exits)
            if (exit.sym == s && exit.cube == cube && exit.stateF == st && exit.stateG == 0 && exit.perm_identity() &&
                exit.stack_restored())
              masses[{exit.popped, exit.pushed}] += p;
          std::vector<CycleKey> keys;
          for (const auto& [k, p] : masses) keys.push_back({st, std::get<0>(k), std::get<1>(k), p});
          it = cache_.emplace(key, std::move(keys)).first;
        }
        out.insert(it->second.begin(), it->second.end());
      }
    }
    return out;
  }

 private:
  Execution& execution(std::uint32_t grid) {
    auto it = executions_.find(grid);
    if (it == executions_.end()) {
      ExecOptions o = opts_;
      o.grid = grid;
      o.coords = std::max(o.coords, heads_);
      it = executions_.emplace(grid, Execution(m_, w_.graphing, cut_, o)).first;
    }
    return it->second;
  }

  const GraphingRep& m_;
  const WordRepresentation& w_;
  ExecOptions opts_;
  std::uint32_t heads_ = 1;
  Region cut_;
  bool exact_ = true;
  std::map<std::uint32_t, Execution> executions_;
  std::map<std::tuple<std::uint32_t, Cube, std::uint32_t, std::string, Symbol>, std::vector<CycleKey>> cache_;
};

std::vector<Rational> scaled(const std::set<CycleKey>& keys, const Rational& factor) {
  std::vector<Rational> out;
  for (const auto& k : keys)
    if (k.mass != 0) out.push_back(k.mass * factor);
  return out;
}

Rational product_of(const std::vector<Rational>& classes) {
  Rational p(1);
  for (const auto& c : classes) p *= 1 - c;
  return p;
}

}  // namespace

Wager Wager::log_of(Rational arg) {
  if (arg <= 0) throw ValidationError("log of a non-positive number");
  return {Rational(0), std::move(arg)};
}

std::string to_string(const Wager& w) {
  if (w.logArg == 1) return to_string(w.lin);
  std::string s = "log(" + to_string(w.logArg) + ")";
  return w.lin == 0 ? s : to_string(w.lin) + "+" + s;
}

std::string to_string(const MeasurementValue& v) {
  switch (v.kind) {
    case MeasurementValue::Kind::Zero: return "zero";
    case MeasurementValue::Kind::Infinite: return "infinite";
    case MeasurementValue::Kind::Finite: return to_string(v.value);
  }
  return "?";
}

MeasurementValue measure_projects(const Project& a, const Project& b) {
  std::vector<Rational> classes;
  for (const auto& t : b.graphing.edges) {
    if (!t.realizer.is_identity()) throw ScopeError("test edges must be identities");
    for (const auto& e : a.graphing.edges) {
      const Realizer& r = e.realizer;
      if (r.shift() != 0 || !r.perm().empty() || !r.box_shifts().empty() || e.inState != e.outState) continue;
      std::size_t pops = 0;
      std::string pushed;
      bool shaped = true;
      for (StackOp op : r.stack_ops()) {
        if (op == StackOp::Pop) {
          if (!pushed.empty()) shaped = false;
          ++pops;
        } else {
          pushed.insert(pushed.begin(), pushed_letter(op));
        }
      }
      if (!shaped || pushed.size() != pops) continue;
      bool fixed = false;
      for (const auto& sa : e.source.atoms)
        for (const auto& ta : t.source.atoms)
          if (auto x = intersect(sa, ta))
            if (intersect(*x, Atom{x->sym, x->box, Cylinder{pushed}, x->state})) fixed = true;
      if (fixed) classes.push_back((e.weight * t.weight).m());
    }
  }
  std::vector<Rational> nonzero;
  for (auto& c : classes)
    if (c != 0) nonzero.push_back(c);
  return with_classes(a.wager + b.wager, nonzero);
}

Test make_det_neg(std::vector<Wager> zetas) {
  for (const auto& z : zetas)
    if (z.is_zero()) throw ValidationError("zeta must be non-zero");
  Test t;
  t.kind = TestKind::DetNeg;
  t.zetas = std::move(zetas);
  return t;
}

Test make_det_pos(std::vector<std::uint32_t> ns) {
  for (auto n : ns)
    if (n == 0) throw ValidationError("test indices start at 1");
  Test t;
  t.kind = TestKind::DetPos;
  t.ns = std::move(ns);
  return t;
}

Test make_prob(Rational eps, std::vector<std::uint32_t> ns) {
  if (eps <= 0 || eps > 1) throw ValidationError("epsilon must lie in (0,1]");
  Test t = make_det_pos(std::move(ns));
  t.kind = TestKind::Prob;
  t.epsilon = std::move(eps);
  return t;
}

Test parse_test(const std::string& text) {
  if (text == "neg") return make_det_neg();
  if (text == "pos") return make_det_pos();
  if (text.rfind("prob:", 0) == 0) return make_prob(parse_rational(text.substr(5)));
  if (text == "prob") return make_prob(Rational(1, 2));
  throw ValidationError("unknown test '" + text + "' (neg, pos, prob:<eps>)");
}

std::string to_string(const Test& t) {
  switch (t.kind) {
    case TestKind::DetNeg: return "neg";
    case TestKind::DetPos: return "pos";
    case TestKind::Prob: return "prob:" + to_string(t.epsilon);
  }
  return "?";
}

Project test_member(const Test& t, std::uint32_t n, const Wager& zeta) {
  switch (t.kind) {
    case TestKind::DetNeg:
      return {zeta, test_graphing(Region{Atom{Symbol::Reject, Box{}, Cylinder{}, 0}}, Weight{1, true})};
    case TestKind::DetPos:
      return {Wager{}, test_graphing(region_of(Symbol::Accept, n, ""), Weight{Rational(1, 2), true})};
    case TestKind::Prob:
      return {Wager::log_of(1 - t.epsilon / 2),
              test_graphing(region_of(Symbol::Accept, n, std::string(n, '*')), Weight{Rational(1, 2), true})};
  }
  throw ValidationError("unknown test kind");
}

OrthogonalityReport orthogonal_to_test(const GraphingRep& m, const WordRepresentation& w, const Test& t,
                                       const ExecOptions& opts) {
  CycleFinder finder(m, w, opts);
  OrthogonalityReport rep;
  if (t.kind == TestKind::DetNeg) {
    auto classes = scaled(finder.classes(Symbol::Reject, 0, 0, ""), Rational(1));
    Rational prod = product_of(classes);
    if (t.zetas.empty()) {
      rep.members.push_back({"zeta!=0", classes, prod, classes.empty()});
    } else {
      for (const auto& z : t.zetas) {
        auto v = with_classes(z, classes);
        rep.members.push_back({"zeta=" + to_string(z), classes, prod, v.orthogonal()});
      }
    }
  } else {
    std::vector<std::uint32_t> ns = t.ns;
    if (ns.empty())
      for (std::uint32_t n = 1; n <= std::max(finder.heads(), w.grid); ++n) ns.push_back(n);
    for (auto n : ns) {
      std::string prefix = t.kind == TestKind::Prob ? std::string(n, '*') : "";
      auto classes = scaled(finder.classes(Symbol::Accept, n, n, prefix), Rational(1, 2));
      Rational prod = product_of(classes);
      bool ok = t.kind == TestKind::DetPos ? prod != 1 && prod != 0 : prod != 0 && prod < 1 - t.epsilon / 2;
      rep.members.push_back({"n=" + std::to_string(n), classes, prod, ok});
    }
  }
  rep.exact = finder.exact();
  for (const auto& mr : rep.members) rep.orthogonal = rep.orthogonal && mr.orthogonal;
  if (opts.requireExact && !rep.exact) throw TruncationError("stack depth " + std::to_string(opts.stackDepth) + " exhausted");
  return rep;
}

bool membership(const GraphingRep& m, const std::string& word, const Test& t, const ExecOptions& opts) {
  return orthogonal_to_test(m, canonical_representation(word), t, opts).orthogonal;
}

UniformityReport check_uniformity(const GraphingRep& m, const std::string& word, const Test& t, std::size_t reps,
                                  std::uint64_t seed, const ExecOptions& opts) {
  UniformityReport out;
  if (reps == 0) return out;
  WordGraph g = word_graph(word);
  const std::uint32_t k = static_cast<std::uint32_t>(word.size());
  const std::uint32_t top = k + 3;
  std::vector<WordRepresentation> chosen{canonical_representation(word)};
  std::set<std::vector<std::uint32_t>> seen;
  std::mt19937_64 rng(seed);
  // Injections fixing the marker on the first interval.
  std::uint64_t available = rep_family_size(k == 0 ? 0 : k - 1, top - 1);
  if (k == 0) available = 1;
  for (std::size_t tries = 0; chosen.size() < reps && seen.size() < available && tries < 100 * reps; ++tries) {
    std::vector<std::uint32_t> pool(top);
    std::iota(pool.begin(), pool.end(), 1u);
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng() % i]);
    std::vector<std::uint32_t> inj{0};
    inj.insert(inj.end(), pool.begin(), pool.begin() + k);
    if (seen.insert(inj).second) chosen.push_back(make_representation(g, inj, top));
  }
  std::optional<bool> first;
  for (const auto& r : chosen) {
    bool o = orthogonal_to_test(m, r, t, opts).orthogonal;
    out.outcomes.emplace_back(r.injection, o);
    if (!first) first = o;
    out.uniform = out.uniform && o == *first;
  }
  return out;
}

void write_report(std::ostream& out, const OrthogonalityReport& r) {
  out << "orthogonal " << (r.orthogonal ? "yes" : "no") << "\n";
  out << "exact " << (r.exact ? "yes" : "no") << "\n";
  for (const auto& m : r.members) {
    out << "member " << m.member << " " << (m.orthogonal ? "orthogonal" : "not-orthogonal") << " product "
        << to_string(m.product) << " classes";
    if (m.classes.empty()) out << " none";
    for (const auto& c : m.classes) out << ' ' << to_string(c);
    out << "\n";
  }
}

}  // namespace ig
