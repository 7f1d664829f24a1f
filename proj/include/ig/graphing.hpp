#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ig/measure_space.hpp"
#include "ig/microcosm.hpp"

namespace ig {

/// Element of [0,1] x {0,1}; (a,0) prints "a", (a,1) prints "a.1".
struct Weight {
  Rational p{1};
  bool flag = false;

  /// The parameter map m(x, y) = xy.
  Rational m() const { return flag ? p : Rational(0); }

  /// The marker 1 is kept by products: (a.1)(b) = ab.1.
  friend Weight operator*(const Weight& a, const Weight& b) { return {a.p * b.p, a.flag || b.flag}; }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& a, const Weight& b) {
    return a.flag != b.flag ? a.flag < b.flag : a.p < b.p;
  }
};

std::string to_string(const Weight& w);

struct Edge {
  Region source;  // spatial part; atom states are ignored, inState applies
  std::uint32_t inState = 0;
  std::uint32_t outState = 0;
  Realizer realizer;
  Weight weight;
  /// Free-form tag (e.g. the automaton transition an edge was compiled from); -1 when unset.
  std::int64_t provenance = -1;
};

struct GraphingRep {
  Region support;
  std::uint32_t dialect = 1;
  std::vector<Edge> edges;
};

/// Source atoms carrying `inState` as their state, for intersection tests.
Region stated_source(const Edge& e);

/// Structural checks: states inside the dialect, weights in [0,1], sources and
/// targets inside the support. Throws ValidationError.
void validate(const GraphingRep& g);

bool is_refinement(const GraphingRep& f, const GraphingRep& g);
bool equivalent(const GraphingRep& f, const GraphingRep& g);
bool is_deterministic(const GraphingRep& g);
bool is_subprobabilistic(const GraphingRep& g);

/// Line format:
///   graphing
///   dialect <n>
///   support <region>
///   edge <in> <out> <p> <flag> | <realizer> | <region>
/// '#' starts a comment line.
void write_graphing(std::ostream& out, const GraphingRep& g, bool withProvenance = false);
GraphingRep read_graphing(std::istream& in);
std::string to_text(const GraphingRep& g);
GraphingRep from_text(const std::string& text);

}  // namespace ig
