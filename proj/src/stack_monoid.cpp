#include "ig/stack_monoid.hpp"

#include <algorithm>

#include "ig/errors.hpp"

namespace ig {

namespace {
bool is_push_letter(char c) { return c == '0' || c == '1' || c == '*'; }
}  // namespace

ThetaWord::ThetaWord(std::string_view letters) : letters_(letters) {
  for (char c : letters_)
    if (!is_push_letter(c) && c != 'c') throw ValidationError(std::string("bad theta letter '") + c + "'");
}

bool ThetaWord::is_pure_pop() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'c'; });
}

std::size_t ThetaWord::pops() const {
  std::size_t n = 0;
  for (auto it = letters_.rbegin(); it != letters_.rend() && *it == 'c'; ++it) ++n;
  return n;
}

std::string ThetaWord::pushed() const { return letters_.substr(0, letters_.size() - pops()); }

ThetaWord reduce(const ThetaWord& w) {
  // Left-to-right scan: a push letter directly right of a pending c cancels it.
  std::string out;
  for (char x : w.letters()) {
    if (is_push_letter(x) && !out.empty() && out.back() == 'c') {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return ThetaWord(out);
}

ThetaWord theta_mul(const ThetaWord& u, const ThetaWord& v) { return reduce(ThetaWord(u.letters() + v.letters())); }

ThetaWord encode_stack_op(std::optional<StackOp> op) {
  if (!op) return ThetaWord();
  if (*op == StackOp::Pop) return ThetaWord("c");
  return ThetaWord(std::string(1, pushed_letter(*op)));
}

ThetaWord encode_ops(const std::vector<StackOp>& ops) {
  ThetaWord acc;
  for (StackOp op : ops) acc = theta_mul(encode_stack_op(op), acc);
  return acc;
}

std::string to_string(const ThetaWord& w) { return w.is_empty() ? "e" : w.letters(); }

ThetaWord parse_theta(std::string_view text) {
  if (text == "e") return ThetaWord();
  return ThetaWord(text);
}

}  // namespace ig
