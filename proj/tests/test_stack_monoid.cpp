#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "ig/errors.hpp"
#include "ig/stack_monoid.hpp"

using namespace ig;

namespace {

// Rewrites a random redex c0, c1 or c* until none is left.
std::string random_rewrite(std::string w, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == 'c' && w[i + 1] != 'c') at.push_back(i);
    if (at.empty()) return w;
    w.erase(at[rng() % at.size()], 2);
  }
}

// Simulates ops (application order) on an explicit stack above a sentinel.
// Returns true when the stack ends where it started without going below it.
bool restores_stack(const std::vector<StackOp>& ops) {
  std::string stack;
  for (StackOp op : ops) {
    if (op == StackOp::Pop) {
      if (stack.empty()) return false;
      stack.pop_back();
    } else {
      stack += pushed_letter(op);
    }
  }
  return stack.empty();
}

}  // namespace

TEST(StackMonoid, ReduceExamples) {
  EXPECT_EQ(to_string(reduce(ThetaWord("c0"))), "e");
  EXPECT_EQ(to_string(reduce(ThetaWord("0c"))), "0c");
  EXPECT_EQ(to_string(reduce(ThetaWord("cc00"))), "e");
  EXPECT_EQ(to_string(reduce(ThetaWord("1c*c0c"))), "1c");
}

TEST(StackMonoid, MulExamples) {
  EXPECT_EQ(theta_mul(ThetaWord(), ThetaWord("0")), ThetaWord("0"));
  EXPECT_EQ(theta_mul(ThetaWord("c"), ThetaWord("0")), ThetaWord());
  EXPECT_EQ(theta_mul(ThetaWord("0"), ThetaWord("c")), ThetaWord("0c"));
}

TEST(StackMonoid, EncodeExamples) {
  EXPECT_EQ(encode_stack_op(StackOp::Pop), ThetaWord("c"));
  EXPECT_EQ(encode_stack_op(StackOp::PushStar), ThetaWord("*"));
  EXPECT_EQ(encode_stack_op(StackOp::Push1), ThetaWord("1"));
  EXPECT_EQ(encode_stack_op(std::nullopt), ThetaWord());
  // push 0 then pop: later op on the left
  EXPECT_EQ(encode_ops({StackOp::Push0, StackOp::Pop}), ThetaWord());
  EXPECT_EQ(encode_ops({StackOp::Pop, StackOp::Push0}), ThetaWord("0c"));
}

TEST(StackMonoid, ParseAndErrors) {
  EXPECT_EQ(parse_theta("e"), ThetaWord());
  EXPECT_EQ(parse_theta("0c*"), ThetaWord("0c*"));
  EXPECT_THROW(ThetaWord("0x"), ValidationError);
}

TEST(StackMonoid, NormalFormUniqueAllShortWords) {
  std::mt19937_64 rng(1);
  std::vector<std::string> layer{""};
  std::size_t total = 0;
  for (std::size_t len = 0; len <= 8; ++len) {
    for (const auto& w : layer) {
      ThetaWord nf = reduce(ThetaWord(w));
      ASSERT_EQ(random_rewrite(w, rng), nf.letters()) << w;
      ASSERT_EQ(random_rewrite(w, rng), nf.letters()) << w;
      ASSERT_EQ(reduce(nf), nf);
      ++total;
    }
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : std::string("01*c")) next.push_back(w + c);
    layer = std::move(next);
  }
  EXPECT_EQ(total, 87381u);
}

TEST(StackMonoid, NormalFormUniqueRandomLongWords) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    std::string w;
    for (std::size_t n = 9 + rng() % 24; n > 0; --n) w += "01*c"[rng() % 4];
    ASSERT_EQ(random_rewrite(w, rng), reduce(ThetaWord(w)).letters()) << w;
  }
}

TEST(StackMonoid, MulIsAssociative) {
  std::mt19937_64 rng(3);
  auto word = [&] {
    std::string w;
    for (std::size_t n = rng() % 6; n > 0; --n) w += "01*c"[rng() % 4];
    return ThetaWord(w);
  };
  for (int i = 0; i < 2000; ++i) {
    ThetaWord a = word(), b = word(), c = word();
    EXPECT_EQ(theta_mul(theta_mul(a, b), c), theta_mul(a, theta_mul(b, c)));
  }
}

TEST(StackMonoid, EmptyWeightIffStackRestored) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5000; ++i) {
    std::vector<StackOp> ops;
    for (std::size_t n = rng() % 8; n > 0; --n) ops.push_back(static_cast<StackOp>(rng() % 4));
    EXPECT_EQ(encode_ops(ops).is_empty(), restores_stack(ops));
  }
}
