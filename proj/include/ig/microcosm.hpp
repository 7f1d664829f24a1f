#pragma once

// Realizers: the maps edges are allowed to use. A realizer acts on a point
// (x, s, pi) by an integer translation of x, a permutation of the box
// coordinates followed by rational per-coordinate translations, and a word
// of stack operations applied in order.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ig/measure_space.hpp"

namespace ig {

enum class StackOp : std::uint8_t { Pop, PushStar, Push0, Push1 };

/// Pushed letter for a push op.
char pushed_letter(StackOp op);
StackOp push_of(char letter);
std::string_view op_name(StackOp op);

class Realizer {
 public:
  Realizer() = default;

  static Realizer translation(int shift);
  /// Coordinate `coord` (0-based) is sent to `perm[coord]`.
  static Realizer permutation(std::vector<std::uint32_t> perm);
  /// Transposition of coordinates a and b (0-based).
  static Realizer transposition(std::uint32_t a, std::uint32_t b);
  static Realizer box_shift(std::uint32_t coord, Rational amount);
  static Realizer stack(std::vector<StackOp> ops);

  int shift() const { return shift_; }
  /// Image of a coordinate under the permutation.
  std::uint32_t image(std::uint32_t coord) const { return coord < perm_.size() ? perm_[coord] : coord; }
  const std::vector<std::uint32_t>& perm() const { return perm_; }
  const std::map<std::uint32_t, Rational>& box_shifts() const { return boxShift_; }
  const std::vector<StackOp>& stack_ops() const { return ops_; }

  /// Largest coordinate index moved or translated, plus one.
  std::size_t support() const;
  bool is_identity() const { return shift_ == 0 && perm_.empty() && boxShift_.empty() && ops_.empty(); }
  Realizer inverse_permutation() const;

  friend bool operator==(const Realizer&, const Realizer&) = default;
  friend bool operator<(const Realizer& a, const Realizer& b);

  /// `then` after `first`.
  friend Realizer compose(const Realizer& first, const Realizer& then);

  Realizer with_shift(int s) const;
  Realizer with_ops(std::vector<StackOp> ops) const;

 private:
  void normalize();

  int shift_ = 0;
  std::vector<std::uint32_t> perm_;
  std::map<std::uint32_t, Rational> boxShift_;
  std::vector<StackOp> ops_;
};

/// Cancels every push immediately followed by a pop (pop after push_c is the identity).
std::vector<StackOp> normalize_ops(std::vector<StackOp> ops);

/// Image of a region. A pop on an atom with empty cylinder prefix first
/// splits it into the three child cylinders; identical image atoms are merged.
/// Throws InvalidTargetError when the shift leaves the symbol intervals or a
/// box translation leaves [0,1].
Region apply(const Realizer& f, const Region& r);
Region apply(const Realizer& f, const Atom& a);

enum class Microcosm : std::uint8_t { M, N, MInf, NInf };

/// Membership in m_i / n_i (i >= 1) or m_inf / n_inf (i ignored).
/// Nonzero box translations are never members.
bool in_microcosm(const Realizer& f, Microcosm which, unsigned i = 0);

/// Smallest i such that f is in m_i (or n_i when it uses the stack).
unsigned head_bound(const Realizer& f);

/// "{shift=1;perm=(1 2);bshift=1:1/3;ops=pop,push0}" with 1-based coordinates.
std::string to_string(const Realizer& f);
Realizer parse_realizer(std::string_view text);

}  // namespace ig
