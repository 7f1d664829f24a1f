#pragma once

// Projects, tests and the measurement between them. Values are sums of a
// rational and logarithms of rationals, kept as lin + log(arg); by
// Lindemann-Weierstrass such a value is zero exactly when lin = 0 and arg = 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ig/compiler.hpp"
#include "ig/execution.hpp"
#include "ig/words.hpp"

namespace ig {

struct Wager {
  Rational lin{0};
  Rational logArg{1};  // > 0

  static Wager rational(Rational r) { return {std::move(r), Rational(1)}; }
  static Wager log_of(Rational arg);  // throws ValidationError unless arg > 0
  bool is_zero() const { return lin == 0 && logArg == 1; }
  friend Wager operator+(const Wager& a, const Wager& b) { return {a.lin + b.lin, a.logArg * b.logArg}; }
  friend bool operator==(const Wager&, const Wager&) = default;
};

std::string to_string(const Wager& w);

struct Project {
  Wager wager;
  GraphingRep graphing;
};

struct MeasurementValue {
  enum class Kind : std::uint8_t { Zero, Finite, Infinite };
  Kind kind = Kind::Zero;
  Wager value;  // meaningful unless infinite
  bool orthogonal() const { return kind == Kind::Finite; }
};

std::string to_string(const MeasurementValue& v);

/// Measurement of two projects on a common support. `b` must consist of
/// identity edges (the tests); every fixed point of an edge of `a` inside a
/// test edge's source closes a cycle, and each edge of `a` gives one class of
/// weight m(w_a w_b). Throws ScopeError for non-identity test edges.
MeasurementValue measure_projects(const Project& a, const Project& b);

enum class TestKind : std::uint8_t { DetNeg, DetPos, Prob };

struct Test {
  TestKind kind = TestKind::DetPos;
  std::vector<Wager> zetas;        // DetNeg; empty means every zeta != 0
  std::vector<std::uint32_t> ns;   // DetPos / Prob; empty means 1..max(heads, grid)
  Rational epsilon{1, 2};          // Prob
};

Test make_det_neg(std::vector<Wager> zetas = {});
Test make_det_pos(std::vector<std::uint32_t> ns = {});
/// Throws ValidationError unless 0 < eps <= 1.
Test make_prob(Rational eps, std::vector<std::uint32_t> ns = {});
/// "neg", "pos", "prob:<eps>".
Test parse_test(const std::string& text);
std::string to_string(const Test& t);

/// Member n of T+ / T_prob (for T_prob the wager is log(1 - u/2) with u = eps),
/// or the zeta member of T-.
Project test_member(const Test& t, std::uint32_t n, const Wager& zeta = Wager::rational(1));

struct MemberReport {
  std::string member;
  std::vector<Rational> classes;  // fused cycle weights m(w) > 0
  Rational product{1};            // prod (1 - class)
  bool orthogonal = false;
};

struct OrthogonalityReport {
  bool orthogonal = true;
  bool exact = true;
  std::vector<MemberReport> members;
};

/// Orthogonality of M::W against every member of the test, computed from
/// the cycles M and W close on the test region (no materialised M::W).
OrthogonalityReport orthogonal_to_test(const GraphingRep& m, const WordRepresentation& w, const Test& t,
                                       const ExecOptions& opts = {});

bool membership(const GraphingRep& m, const std::string& word, const Test& t, const ExecOptions& opts = {});

struct UniformityReport {
  bool uniform = true;
  std::vector<std::pair<std::vector<std::uint32_t>, bool>> outcomes;  // injection, orthogonal
};

/// Orthogonality over `reps` representations of the word with the marker on
/// the first interval and m = |w| + 3; the canonical one comes first, the
/// others are drawn with `seed`.
UniformityReport check_uniformity(const GraphingRep& m, const std::string& word, const Test& t, std::size_t reps,
                                  std::uint64_t seed = 1, const ExecOptions& opts = {});

void write_report(std::ostream& out, const OrthogonalityReport& r);

}  // namespace ig
