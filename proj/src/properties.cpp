#include "ig/properties.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ig/compiler.hpp"
#include "ig/corpus.hpp"
#include "ig/errors.hpp"
#include "ig/measurement.hpp"
#include "ig/words.hpp"

namespace ig {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<Cube> all_cubes(std::uint32_t grid, std::uint32_t coords) {
  std::vector<Cube> out{Cube(coords, 0)};
  for (std::uint32_t c = 0; c < coords; ++c) {
    std::vector<Cube> next;
    for (const auto& cube : out)
      for (std::uint32_t i = 0; i < grid; ++i) {
        Cube x = cube;
        x[c] = i;
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

Box cell_box(const Cube& cube, std::uint32_t grid) {
  Box b;
  for (std::size_t c = 0; c < cube.size(); ++c)
    b.set(c, {Rational(cube[c], grid), Rational(cube[c] + 1, grid)});
  return b;
}

Region whole(const std::vector<Symbol>& syms) {
  Region r;
  for (Symbol s : syms) r.atoms.push_back(Atom{s, Box{}, Cylinder{}, 0});
  return r;
}

// Edges leaving every (cell, state, guard) of `syms`.
GraphingRep random_side(std::mt19937_64& rng, const std::vector<Symbol>& syms, std::uint32_t dialect,
                        std::uint32_t grid, std::uint32_t coords, bool stack, bool deterministic) {
  GraphingRep g;
  g.support = whole(syms);
  g.dialect = dialect;
  const auto cubes = all_cubes(grid, coords);
  for (Symbol s : syms)
    for (const auto& cube : cubes)
      for (std::uint32_t st = 0; st < dialect; ++st) {
        if (pick(rng, 4) == 0) continue;
        std::vector<std::string> guards{""};
        if (stack && pick(rng, 4) == 0) guards = {"*", "0", "1"};
        for (const auto& guard : guards) {
          std::vector<Rational> weights;
          if (deterministic) {
            if (pick(rng, 5) != 0) weights.emplace_back(1);
          } else {
            std::vector<long> parts;
            long total = 0;
            for (std::uint64_t n = 1 + pick(rng, 3); n > 0; --n) {
              parts.push_back(1 + static_cast<long>(pick(rng, 3)));
              total += parts.back();
            }
            total += static_cast<long>(pick(rng, 2));
            for (long p : parts) {
              Rational w(p, total);
              w.canonicalize();
              weights.push_back(w);
            }
          }
          for (const auto& w : weights) {
            Symbol t = syms[pick(rng, syms.size())];
            Cube target = cubes[pick(rng, cubes.size())];
            std::vector<std::uint32_t> perm(coords);
            std::iota(perm.begin(), perm.end(), 0u);
            if (coords == 2 && pick(rng, 2)) std::swap(perm[0], perm[1]);
            Cube moved(coords);
            for (std::uint32_t c = 0; c < coords; ++c) moved[perm[c]] = cube[c];
            Realizer f = compose(Realizer::translation(psi(t) - psi(s)), Realizer::permutation(perm));
            for (std::uint32_t c = 0; c < coords; ++c)
              if (target[c] != moved[c])
                f = compose(f, Realizer::box_shift(c, Rational(static_cast<long>(target[c]) - static_cast<long>(moved[c]),
                                                               static_cast<long>(grid))));
            if (stack && pick(rng, 5) == 0) f = f.with_ops({static_cast<StackOp>(pick(rng, 4))});
            Edge e;
            e.source = Region{Atom{s, cell_box(cube, grid), Cylinder{guard}, 0}};
            e.inState = st;
            e.outState = static_cast<std::uint32_t>(pick(rng, dialect));
            e.realizer = f;
            e.weight = Weight{w, false};
            g.edges.push_back(std::move(e));
          }
        }
      }
  return g;
}

std::string pair_text(const RandomPair& p) {
  std::ostringstream out;
  out << "# F\n" << to_text(p.f) << "# G\n" << to_text(p.g);
  out << "# cut " << to_string(p.cut.cut) << "\n# V " << to_string(p.cut.leftRest) << "\n# W "
      << to_string(p.cut.rightRest) << "\n";
  return out.str();
}

void record(SuiteResult& r, bool ok, const std::string& text) {
  ++r.cases;
  if (ok) return;
  ++r.failures;
  if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(text);
}

ExecOptions suite_options() {
  ExecOptions o;
  o.stackDepth = 4;
  o.maxConfigs = 200'000;
  o.maxEdges = 50'000;
  return o;
}

SuiteResult closure_suite(const std::string& name, std::uint64_t seed, std::size_t count, bool deterministic) {
  SuiteResult r;
  r.name = name;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    RandomPair p = random_pair(rng, deterministic);
    std::string why;
    try {
      GraphingRep h = plug(p.f, p.g, p.cut, suite_options()).graphing;
      validate(h);
      bool ok = deterministic ? is_deterministic(h) : is_subprobabilistic(h);
      if (!ok) why = "# result\n" + to_text(h);
    } catch (const BudgetError&) {
      ++r.skipped;
      continue;
    } catch (const Error& e) {
      why = std::string("# error: ") + e.what() + "\n";
    }
    record(r, why.empty(), "# case " + std::to_string(i) + "\n" + pair_text(p) + why);
  }
  return r;
}

// Leftmost-innermost is what reduce() does; here any redex may go first.
std::string random_rewrite(std::string w, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == 'c' && w[i + 1] != 'c') at.push_back(i);
    if (at.empty()) return w;
    w.erase(at[pick(rng, at.size())], 2);
  }
}

}  // namespace

RandomPair random_pair(std::mt19937_64& rng, bool deterministic) {
  const std::uint32_t grid = 1 + static_cast<std::uint32_t>(pick(rng, 3));
  const std::uint32_t coords = 1 + static_cast<std::uint32_t>(pick(rng, 2));
  const bool stack = pick(rng, 3) == 0;
  // stack words already multiply the exits; a second coordinate on top gets out of hand
  const std::uint32_t dims = stack ? 1 : coords;

  std::vector<Symbol> syms;
  for (int i = 0; i < kSymbolCount; ++i) syms.push_back(static_cast<Symbol>(i));
  for (std::size_t i = syms.size(); i > 1; --i) std::swap(syms[i - 1], syms[pick(rng, i)]);
  syms.resize(3 + pick(rng, 3));
  std::vector<Symbol> left{syms[0]}, cut{syms[1]}, right{syms[2]};
  for (std::size_t i = 3; i < syms.size(); ++i) {
    auto role = pick(rng, 3);
    (role == 0 ? left : role == 1 ? cut : right).push_back(syms[i]);
  }
  std::vector<Symbol> fSyms = left, gSyms = cut;
  fSyms.insert(fSyms.end(), cut.begin(), cut.end());
  gSyms.insert(gSyms.end(), right.begin(), right.end());

  RandomPair p;
  p.f = random_side(rng, fSyms, 1 + static_cast<std::uint32_t>(pick(rng, 2)), grid, dims, stack, deterministic);
  p.g = random_side(rng, gSyms, 1 + static_cast<std::uint32_t>(pick(rng, 2)), grid, dims, stack, deterministic);
  p.cut = CutSpec{whole(cut), whole(left), whole(right)};
  return p;
}

GraphingRep random_split(std::mt19937_64& rng, const GraphingRep& g) {
  GraphingRep out = g;
  out.edges.clear();
  for (const auto& e : g.edges) {
    std::vector<Atom> pieces;
    for (const auto& a : e.source.atoms) {
      if (pick(rng, 2)) {
        pieces.push_back(a);
        continue;
      }
      if (pick(rng, 2)) {
        for (char c : std::string("*01")) {
          Atom child = a;
          child.cyl.prefix += c;
          pieces.push_back(child);
        }
      } else {
        std::size_t coord = pick(rng, std::max<std::size_t>(a.box.dims(), 1));
        Interval iv = a.box.coord(coord);
        Rational cutAt = (iv.lo + iv.hi) / 2;
        Atom lo = a, hi = a;
        lo.box.set(coord, {iv.lo, cutAt});
        hi.box.set(coord, {cutAt, iv.hi});
        pieces.push_back(lo);
        pieces.push_back(hi);
      }
    }
    // group the pieces into one or more edges
    std::vector<Region> groups(1 + pick(rng, pieces.size()));
    for (std::size_t i = 0; i < pieces.size(); ++i)
      groups[i < groups.size() ? i : pick(rng, groups.size())].atoms.push_back(pieces[i]);
    for (auto& src : groups) {
      Edge piece = e;
      piece.source = std::move(src);
      out.edges.push_back(std::move(piece));
    }
  }
  for (std::size_t i = out.edges.size(); i > 1; --i) std::swap(out.edges[i - 1], out.edges[pick(rng, i)]);
  return out;
}

SuiteResult det_closure_suite(std::uint64_t seed, std::size_t count) {
  return closure_suite("det-closure", seed, count, true);
}

SuiteResult subprob_closure_suite(std::uint64_t seed, std::size_t count) {
  return closure_suite("subprob-closure", seed, count, false);
}

SuiteResult refinement_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r;
  r.name = "refinement";
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    RandomPair p = random_pair(rng, pick(rng, 2) == 0);
    std::string why;
    try {
      GraphingRep f1 = random_split(rng, p.f), g1 = random_split(rng, p.g);
      GraphingRep f2 = random_split(rng, f1);
      if (!is_refinement(f1, p.f) || !is_refinement(g1, p.g)) why += "# split is not a refinement\n";
      if (!equivalent(f1, p.f) || !equivalent(p.f, f1)) why += "# split is not equivalent\n";
      if (!equivalent(f2, p.f) || !equivalent(f2, f1)) why += "# equivalence is not transitive\n";
      // a changed weight on a piece of positive measure must be noticed
      for (auto& e : f1.edges)
        if (measure(e.source) > 0) {
          e.weight.p /= 2;
          if (equivalent(f1, p.f)) why += "# halved weight went unnoticed\n";
          e.weight.p *= 2;
          break;
        }
      GraphingRep h = plug(p.f, p.g, p.cut, suite_options()).graphing;
      GraphingRep h1 = plug(f1, g1, p.cut, suite_options()).graphing;
      if (!equivalent(h, h1)) why += "# executions differ\n# plain\n" + to_text(h) + "# split\n" + to_text(h1);
    } catch (const BudgetError&) {
      ++r.skipped;
      continue;
    } catch (const Error& e) {
      why += std::string("# error: ") + e.what() + "\n";
    }
    record(r, why.empty(), "# case " + std::to_string(i) + "\n" + pair_text(p) + why);
  }
  return r;
}

SuiteResult theta_confluence_suite(std::uint64_t seed, std::size_t maxLen, std::size_t randomCount) {
  SuiteResult r;
  r.name = "theta-confluence";
  std::mt19937_64 rng(seed);
  auto check = [&](const std::string& w) {
    std::string nf = reduce(ThetaWord(w)).letters();
    std::string a = random_rewrite(w, rng), b = random_rewrite(w, rng);
    record(r, a == nf && b == nf, w + " -> " + nf + " / " + a + " / " + b + "\n");
  };
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= maxLen; ++len) {
    for (const auto& w : layer) check(w);
    std::vector<std::string> next;
    if (len < maxLen)
      for (const auto& w : layer)
        for (char c : std::string("01*c")) next.push_back(w + c);
    layer = std::move(next);
  }
  for (std::size_t i = 0; i < randomCount; ++i) {
    std::string w;
    for (std::size_t n = maxLen + 1 + pick(rng, 3 * maxLen + 1); n > 0; --n) w += "01*c"[pick(rng, 4)];
    check(w);
  }
  return r;
}

SuiteResult uniformity_suite(std::uint64_t seed, std::size_t machines, std::size_t words, std::size_t reps) {
  SuiteResult r;
  r.name = "uniformity";
  std::mt19937_64 rng(seed);
  auto all = corpus();
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[pick(rng, i)]);
  const Test tests[] = {make_det_neg(), make_det_pos(), make_prob(Rational(1, 2))};
  for (std::size_t mi = 0; mi < std::min(machines, all.size()); ++mi) {
    const auto& named = all[mi];
    CompiledMachine cm = compile(named.automaton);
    std::vector<std::string> chosen;
    for (std::size_t tries = 0; chosen.size() < words && tries < 100; ++tries) {
      std::string w;
      for (std::size_t n = pick(rng, 4); n > 0; --n) w += "01"[pick(rng, 2)];
      if (std::find(chosen.begin(), chosen.end(), w) == chosen.end()) chosen.push_back(w);
    }
    for (const auto& w : chosen)
      for (const auto& t : tests) {
        std::string why;
        try {
          UniformityReport u = check_uniformity(cm.graphing, w, t, reps, rng());
          if (!u.uniform) {
            for (const auto& [inj, o] : u.outcomes) {
              why += "# injection";
              for (auto x : inj) why += " " + std::to_string(x);
              why += o ? " orthogonal\n" : " not-orthogonal\n";
            }
          }
        } catch (const Error& e) {
          why = std::string("# error: ") + e.what() + "\n";
        }
        record(r, why.empty(), "# machine " + named.name + " word '" + w + "' test " + to_string(t) + "\n" + why);
      }
  }
  return r;
}

std::vector<std::string> suite_names() {
  return {"det-closure", "subprob-closure", "uniformity", "theta-confluence", "refinement"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
  if (name == "det-closure") return det_closure_suite(seed, count ? count : 200);
  if (name == "subprob-closure") return subprob_closure_suite(seed, count ? count : 200);
  if (name == "refinement") return refinement_suite(seed, count ? count : 100);
  if (name == "theta-confluence") return theta_confluence_suite(seed, 8, count ? count : 10000);
  if (name == "uniformity") return uniformity_suite(seed, count ? count : 10);
  throw ValidationError("unknown suite '" + name + "'");
}

}  // namespace ig
