// One line per acceptance criterion; exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ig/compiler.hpp"
#include "ig/corpus.hpp"
#include "ig/measurement.hpp"
#include "ig/properties.hpp"

using namespace ig;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::string> words_upto(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (char c : {'0', '1'}) out.push_back(out[i] + c);
  return out;
}

Outcome oracle_equivalence() {
  const auto words = words_upto(6);
  std::size_t machines = 0, checks = 0, bad = 0, pushdown = 0;
  std::string first;
  for (const auto& [name, a] : corpus()) {
    ++machines;
    pushdown += a.pushdown;
    auto m = compile(a);
    for (const auto& w : words) {
      auto o = oracle(a, w, 16);
      auto s = run(m, canonical_representation(w));
      ++checks;
      if (s.stackRestored != o.accept || s.exact != o.exact) {
        if (!bad++) first = name + " w='" + w + "'";
      }
    }
  }
  std::ostringstream d;
  d << machines << " machines (" << pushdown << " pushdown), " << checks << " words, " << bad << " disagreements";
  if (bad) d << ", first " << first;
  return {bad == 0 && machines >= 40, d.str()};
}

Outcome trace_bijection() {
  std::size_t pairs = 0, bad = 0, traces = 0;
  std::string first;
  for (const char* name : {"immediate", "coin", "retry", "even-ones", "halving", "lossy", "ends", "ends-biased",
                           "push-pop", "palindrome"}) {
    auto a = corpus_automaton(name);
    auto m = compile(a);
    for (const auto& w : words_upto(4)) {
      auto rep = canonical_representation(w);
      auto [mg, wg] = finite_view(m, rep);
      std::vector<Rational> p, t;
      // halting edges close the path but are not transitions
      for (const auto& path : finite_view_paths(mg, wg, marker_cube(rep, m.heads), 40))
        if (path.provenance.back() >= 0) p.push_back(path.prob);
      for (const auto& tr : trace_enumerate(a, w, 20)) t.push_back(tr.prob);
      std::sort(p.begin(), p.end());
      std::sort(t.begin(), t.end());
      ++pairs;
      traces += t.size();
      if (p != t && !bad++) first = std::string(name) + " w='" + w + "'";
    }
  }
  std::ostringstream d;
  d << "10 machines, " << pairs << " words, " << traces << " traces, " << bad << " mismatches";
  if (bad) d << ", first " << first;
  return {bad == 0, d.str()};
}

Outcome from_suite(const SuiteResult& r) {
  std::ostringstream d;
  d << r.name << ": " << r.cases << " cases, " << r.failures << " failures, " << r.skipped << " over budget";
  return {r.passed() && r.skipped == 0, d.str()};
}

Outcome test_laws() {
  const auto words = words_upto(3);
  std::size_t checks = 0, bad = 0;
  std::string first;
  for (const auto& [name, a] : corpus()) {
    auto m = compile(a);
    for (const auto& w : words) {
      auto o = oracle(a, w, 16);
      auto rep = canonical_representation(w);
      auto check = [&](const Test& t, bool expected) {
        ++checks;
        if (orthogonal_to_test(m.graphing, rep, t).orthogonal != expected && !bad++)
          first = name + " w='" + w + "' " + to_string(t);
      };
      check(make_det_pos(), o.accept > 0);
      check(make_det_neg(), o.reject == 0);
      for (Rational eps : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) check(make_prob(eps), o.accept > eps);
    }
  }
  std::ostringstream d;
  d << checks << " verdicts over the corpus and words up to length 3, " << bad << " disagreements";
  if (bad) d << ", first " << first;
  return {bad == 0, d.str()};
}

Outcome regular_desk_check() {
  auto a = corpus_automaton("even-ones");
  auto m = compile(a);
  std::size_t words = 0, bad = 0;
  for (const auto& w : words_upto(8)) {
    ++words;
    bool even = std::count(w.begin(), w.end(), '1') % 2 == 0;
    if (membership(m.graphing, w, make_det_pos()) != even) ++bad;
  }
  std::ostringstream d;
  d << words << " words, " << bad << " disagreements with parity";
  return {bad == 0 && words == 511, d.str()};
}

Outcome measure_and_monoid() {
  std::size_t prefixes = 0, bad = 0;
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= 6; ++len) {
    long pow3 = 1;
    for (std::size_t i = 0; i < len; ++i) pow3 *= 3;
    std::vector<std::string> next;
    for (const auto& w : layer) {
      ++prefixes;
      if (measure(parse_region("a full V(" + w + ")")) != Rational(1, pow3)) ++bad;
      for (char c : {'*', '0', '1'}) next.push_back(w + c);
    }
    layer = std::move(next);
  }
  SuiteResult theta = theta_confluence_suite(kSeed);
  std::ostringstream d;
  d << prefixes << " cylinders, " << bad << " wrong measures; " << theta.cases << " words, " << theta.failures
    << " normal form failures";
  return {bad == 0 && theta.passed(), d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "trace bijection", trace_bijection},
      {3, "deterministic closure", [] { return from_suite(det_closure_suite(kSeed, 200)); }},
      {4, "sub-probabilistic closure", [] { return from_suite(subprob_closure_suite(kSeed, 200)); }},
      {5, "test laws", test_laws},
      {6, "uniformity", [] { return from_suite(uniformity_suite(kSeed, 10, 5, 5)); }},
      {7, "regular desk check", regular_desk_check},
      {8, "measure and monoid facts", measure_and_monoid},
      {9, "refinement soundness", [] { return from_suite(refinement_suite(kSeed, 100)); }},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool ok = true;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s) [%.1fs]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
