#pragma once

// The monoid generated by {0,1,*,c} with c0 = c1 = c* = e. Words are written
// in composition order: the letter of a later stack operation sits to the
// left, so "push 0 then pop" is c0 = e.

#include <optional>
#include <string>
#include <string_view>

#include "ig/microcosm.hpp"

namespace ig {

class ThetaWord {
 public:
  ThetaWord() = default;
  /// Letters over "01*c"; not reduced. Throws ValidationError.
  explicit ThetaWord(std::string_view letters);

  const std::string& letters() const { return letters_; }
  bool is_empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  /// True iff the word is c^i for some i >= 0.
  bool is_pure_pop() const;
  /// Normal-form pieces: word = pushed · c^pops.
  std::size_t pops() const;
  std::string pushed() const;

  friend bool operator==(const ThetaWord&, const ThetaWord&) = default;
  friend auto operator<=>(const ThetaWord&, const ThetaWord&) = default;

 private:
  std::string letters_;
};

/// Unique normal form (no factor c0, c1, c*).
ThetaWord reduce(const ThetaWord& w);
ThetaWord theta_mul(const ThetaWord& u, const ThetaWord& v);

/// [[push_1]] = 1, [[push_0]] = 0, [[push_*]] = *, [[pop]] = c; nullopt stands for id.
ThetaWord encode_stack_op(std::optional<StackOp> op);

/// Theta-weight of ops applied in order (later ops multiplied on the left).
ThetaWord encode_ops(const std::vector<StackOp>& ops);

/// "e" for the empty word, the letters otherwise.
std::string to_string(const ThetaWord& w);
ThetaWord parse_theta(std::string_view text);

}  // namespace ig
