#pragma once

// Symbolic measurable subsets of X = Z x [0,1]^N x {*,0,1}^N.
//
// The integer component only ever appears through the eight unit intervals
// Psi(symbol) = [k, k+1); [0,1]^N is tracked on finitely many coordinates
// (the rest are implicitly the full interval) and the stack component is a
// cylinder V(prefix) of measure 3^-|prefix|. All arithmetic is exact.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ig/rational.hpp"

namespace ig {

/// Vertex symbols: ({*,0,1} x {In,Out}) plus accept and reject.
/// The declaration order fixes Psi: symbol k occupies [k, k+1).
enum class Symbol : std::uint8_t { StarIn, StarOut, ZeroIn, ZeroOut, OneIn, OneOut, Accept, Reject };

inline constexpr int kSymbolCount = 8;

enum class Polarity : std::uint8_t { In, Out };

/// Integer left endpoint of Psi(s).
constexpr int psi(Symbol s) { return static_cast<int>(s); }
std::optional<Symbol> symbol_at(int psiIndex);

/// Letter symbols are '*', '0', '1'. Throws ValidationError otherwise.
Symbol letter_symbol(char letter, Polarity p);
bool is_letter_symbol(Symbol s);
char symbol_letter(Symbol s);        // precondition: is_letter_symbol(s)
Polarity symbol_polarity(Symbol s);  // precondition: is_letter_symbol(s)
std::string_view symbol_name(Symbol s);
Symbol parse_symbol(std::string_view name);

struct Interval {
  Rational lo{0};
  Rational hi{1};

  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of per-coordinate intervals; coordinates past the end are [0,1].
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> intervals);

  /// Box equal to [0,1]^N except `iv` on coordinate `coord` (0-based).
  static Box along(std::size_t coord, Interval iv);

  std::size_t dims() const { return iv_.size(); }
  Interval coord(std::size_t i) const;
  const std::vector<Interval>& intervals() const { return iv_; }
  void set(std::size_t i, Interval iv);

  Rational measure() const;
  /// Drops trailing full coordinates so equal sets compare equal.
  Box canonical() const;

  friend bool operator==(const Box& a, const Box& b);

 private:
  std::vector<Interval> iv_;
};

/// Cylinder V(prefix) over {*,0,1}.
struct Cylinder {
  std::string prefix;

  Rational measure() const;
  /// True iff V(*this) contains V(other), i.e. other.prefix extends prefix.
  bool contains(const Cylinder& other) const;
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

struct Atom {
  Symbol sym = Symbol::Accept;
  Box box;
  Cylinder cyl;
  std::uint32_t state = 0;

  Rational measure() const { return box.measure() * cyl.measure(); }
  friend bool operator==(const Atom& a, const Atom& b);
};

/// Total order used for canonical serialisation.
std::strong_ordering compare(const Atom& a, const Atom& b);

struct Region {
  std::vector<Atom> atoms;

  Region() = default;
  Region(std::initializer_list<Atom> list) : atoms(list) {}
  explicit Region(std::vector<Atom> list) : atoms(std::move(list)) {}

  bool empty() const { return atoms.empty(); }
};

/// Throws ValidationError for intervals outside [0,1], lo > hi, bad letters.
void validate(const Atom& a);
void validate(const Region& r);

Rational measure(const Region& r);

/// Positive-measure intersection of two atoms (measure-zero overlaps vanish).
std::optional<Atom> intersect(const Atom& a, const Atom& b);
Region intersect(const Region& r1, const Region& r2);

/// a.e. containment of `inner` in `outer`.
bool contains(const Atom& outer, const Atom& inner);

/// Coarsest partition into atoms refining every atom in `atoms`; only cells
/// of positive measure covered by at least one input atom are returned.
std::vector<Atom> common_partition(std::span<const Atom> atoms);

struct CoveredCell {
  Atom cell;
  std::vector<std::size_t> owners;  // sorted, distinct
};
/// The same cells, each with the owners (owner[k] for atoms[k]) of the atoms
/// that contain it.
std::vector<CoveredCell> covered_partition(std::span<const Atom> atoms, std::span<const std::size_t> owner);

/// Symmetric difference has measure zero.
bool ae_equal(const Region& r1, const Region& r2);

/// Pairwise a.e. disjointness of the atoms.
bool pairwise_disjoint(const Region& r);

/// Sorted, trailing-trimmed copy; the form used when printing.
Region canonical(const Region& r);

std::string to_string(const Interval& iv);
std::string to_string(const Box& b);
std::string to_string(const Atom& a);
std::string to_string(const Region& r);

Atom parse_atom(std::string_view text);
Region parse_region(std::string_view text);

}  // namespace ig
