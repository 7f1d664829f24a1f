#pragma once

// Execution F::G of two graphings on a rational grid. Every box endpoint and
// box translation involved must be a multiple of 1/grid, so the interaction
// happens between finitely many cells (symbol, cube); the stack component is
// tracked symbolically: a path needs its source to lie in a cylinder V(prefix),
// has consumed `popped` letters of that prefix, and has `pushed` letters on top.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ig/graphing.hpp"
#include "ig/stack_monoid.hpp"

namespace ig {

struct CutSpec {
  Region cut;        // C
  Region leftRest;   // V
  Region rightRest;  // W
};

struct ExecOptions {
  std::uint32_t stackDepth = 16;  // max stack height above the source stack
  bool requireExact = false;
  std::uint32_t grid = 0;    // 0: least common denominator of the inputs
  std::uint32_t coords = 0;  // 0: largest coordinate used by the inputs
  std::size_t maxConfigs = 4'000'000;  // per path start
  std::size_t maxEdges = 4'000'000;    // edges of a plugged graphing
};

using Cube = std::vector<std::uint32_t>;

enum class Side : std::uint8_t { F, G };

struct PathStart {
  Side side = Side::F;
  Symbol sym = Symbol::Accept;
  Cube cube;
  std::uint32_t stateF = 0, stateG = 0;
  std::string prefix;
};

struct PathExit {
  Symbol sym = Symbol::Accept;
  Cube cube;
  std::uint32_t stateF = 0, stateG = 0;
  std::string prefix;  // cylinder the source must lie in
  std::uint32_t popped = 0;
  std::string pushed;  // top first
  std::vector<std::uint32_t> perm;
  bool flag = false;

  ThetaWord theta() const;
  /// The stack ends as it started.
  bool stack_restored() const { return pushed == prefix.substr(0, popped); }
  bool perm_identity() const;
};

struct Exploration {
  std::vector<std::pair<PathExit, Rational>> exits;
  bool exact = true;
  std::size_t configs = 0;
};

/// Alternating path found by explicit enumeration.
struct AlternatingPath {
  std::vector<std::pair<Side, std::int64_t>> edges;  // (side, provenance)
  std::vector<StackOp> ops;
  Weight weight;
  PathExit end;
};

class Execution {
 public:
  /// `aligned` lists further regions whose boxes must sit on the grid.
  Execution(const GraphingRep& f, const GraphingRep& g, const Region& cut, const ExecOptions& opts = {},
            std::span<const Region> aligned = {});
  ~Execution();
  Execution(Execution&&) noexcept;

  std::uint32_t grid() const;
  std::uint32_t coords() const;
  bool in_cut(Symbol s, const Cube& c) const;
  /// Grid cubes inside the box of an atom.
  std::vector<Cube> cubes_of(const Atom& a) const;
  Atom cell_atom(Symbol s, const Cube& c, const std::string& prefix, std::uint32_t state = 0) const;

  /// Weighted exits of all alternating paths from `start`, cycles summed exactly.
  Exploration explore(const PathStart& start) const;
  /// Paths with at most `maxEdges` edges from `start`, ending outside the cut.
  std::vector<AlternatingPath> enumerate(const PathStart& start, std::size_t maxEdges) const;
  /// One start per (cell, states) from which an edge leaves V or W into the interaction.
  std::vector<PathStart> edge_starts() const;
  /// Realizer of a path from `start` to `exit`.
  Realizer realizer_of(const PathStart& start, const PathExit& exit) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct PlugResult {
  GraphingRep graphing;
  bool exact = true;
};

/// F::G over V+W with dialect D^F x D^G (state dF * |D^G| + dG).
PlugResult plug(const GraphingRep& f, const GraphingRep& g, const CutSpec& cut, const ExecOptions& opts = {});

struct PathSum {
  std::map<ThetaWord, Rational> total;
  bool exact = true;
  Rational lowerBound{0};    // sum over all classes
  Rational stackRestored{0};  // paths leaving the stack as they found it
};

/// Alternating paths of m and w from `acceptRegion` (machine state 0, word
/// state 0) back into it, summed per Theta-class. The cut is w's support.
PathSum accept_path_sum(const GraphingRep& m, const GraphingRep& w, const Region& acceptRegion,
                        const ExecOptions& opts = {});

/// Sum of the pure-pop classes c^i.
Rational pure_pop_mass(const PathSum& s);

struct ThickNode {
  Symbol sym;
  Cube cube;
  std::uint32_t state;
  friend auto operator<=>(const ThickNode&, const ThickNode&) = default;
};

struct ThickEdge {
  std::size_t from, to;
  Weight weight;
  ThetaWord theta;
  std::string guard;  // source cylinder prefix
  std::int64_t provenance;
};

struct ThickGraph {
  std::uint32_t grid = 1, coords = 1;
  std::vector<ThickNode> nodes;  // sorted
  std::vector<ThickEdge> edges;  // sorted by (from, to, provenance)
};

/// Cell-by-cell view of a graphing on a grid. Throws DiscretizationError if
/// some box or translation is not a multiple of 1/grid or the realizer moves
/// coordinates beyond `coords`.
ThickGraph discretize(const GraphingRep& g, std::uint32_t grid, std::uint32_t coords);
std::pair<ThickGraph, ThickGraph> discretize(const GraphingRep& f, const GraphingRep& g, std::uint32_t grid);

/// Least grid making every box endpoint and translation of the inputs integral.
std::uint32_t grid_of(std::span<const GraphingRep* const> gs, std::span<const Region> regions = {});
std::uint32_t coords_of(std::span<const GraphingRep* const> gs, std::span<const Region> regions = {});

void dump(std::ostream& out, const ThickGraph& t);
void dump(std::ostream& out, const PathSum& s);
std::string to_string(const Cube& c);

}  // namespace ig
