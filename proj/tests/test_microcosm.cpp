#include <gtest/gtest.h>

#include <random>

#include "ig/errors.hpp"
#include "ig/microcosm.hpp"

using namespace ig;

namespace {

Realizer random_realizer(std::mt19937_64& rng) {
  Realizer f = Realizer::translation(static_cast<int>(rng() % 5) - 2);
  if (rng() % 2) f = compose(f, Realizer::transposition(rng() % 3, rng() % 3));
  if (rng() % 3 == 0) f = compose(f, Realizer::box_shift(rng() % 3, Rational(static_cast<long>(rng() % 5) - 2, 8)));
  std::vector<StackOp> ops;
  for (std::size_t n = rng() % 3; n > 0; --n) ops.push_back(static_cast<StackOp>(rng() % 4));
  return compose(f, Realizer::stack(ops));
}

}  // namespace

TEST(Microcosm, ApplyExamples) {
  Region r = parse_region("0i [0,1/2]x[1/2,1] V(*)");
  EXPECT_TRUE(ae_equal(apply(Realizer{}, r), r));
  EXPECT_TRUE(ae_equal(apply(Realizer::stack({StackOp::Push0}), parse_region("a full V(*)")),
                       parse_region("a full V(0*)")));
  EXPECT_TRUE(ae_equal(apply(Realizer::transposition(0, 1), parse_region("a [0,1/2]x[1/2,1] V()")),
                       parse_region("a [1/2,1]x[0,1/2] V()")));
  EXPECT_TRUE(ae_equal(apply(Realizer::translation(6), parse_region("*i full V()")), parse_region("a full V()")));
}

TEST(Microcosm, ApplyErrors) {
  EXPECT_THROW(apply(Realizer::translation(1), parse_region("r full V()")), InvalidTargetError);
  EXPECT_THROW(apply(Realizer::translation(-1), parse_region("*i full V()")), InvalidTargetError);
  EXPECT_THROW(apply(Realizer::box_shift(0, Rational(1, 2)), parse_region("a [0,2/3] V()")), InvalidTargetError);
}

TEST(Microcosm, PopSplitsTheEmptyPrefix) {
  // the three children all pop onto the whole cylinder
  Region img = apply(Realizer::stack({StackOp::Pop}), parse_region("a full V()"));
  EXPECT_TRUE(ae_equal(img, parse_region("a full V()")));
  EXPECT_TRUE(ae_equal(apply(Realizer::stack({StackOp::Pop}), parse_region("a full V(01)")),
                       parse_region("a full V(1)")));
}

TEST(Microcosm, ComposeExamples) {
  EXPECT_TRUE(compose(Realizer::stack({StackOp::Push0}), Realizer::stack({StackOp::Pop})).is_identity());
  EXPECT_EQ(compose(Realizer::translation(1), Realizer::translation(2)), Realizer::translation(3));
  EXPECT_TRUE(compose(Realizer::transposition(0, 1), Realizer::transposition(0, 1)).is_identity());
}

TEST(Microcosm, MembershipExamples) {
  EXPECT_TRUE(in_microcosm(Realizer::translation(3), Microcosm::M, 1));
  Realizer swap = Realizer::transposition(0, 1);
  EXPECT_TRUE(in_microcosm(swap, Microcosm::M, 2));
  EXPECT_FALSE(in_microcosm(swap, Microcosm::M, 1));
  Realizer push = Realizer::stack({StackOp::Push1});
  EXPECT_TRUE(in_microcosm(push, Microcosm::N, 1));
  EXPECT_FALSE(in_microcosm(push, Microcosm::MInf));
  EXPECT_TRUE(in_microcosm(push, Microcosm::NInf));
  EXPECT_FALSE(in_microcosm(Realizer::box_shift(0, Rational(1, 3)), Microcosm::NInf));
  EXPECT_EQ(head_bound(Realizer::transposition(0, 2)), 3u);
}

TEST(Microcosm, PopAfterPushIsIdentity) {
  Region r = parse_region("a [0,1/3]x[1/2,1] V(*1) + r full V(0)");
  for (StackOp push : {StackOp::PushStar, StackOp::Push0, StackOp::Push1}) {
    Realizer f = Realizer::stack({push, StackOp::Pop});
    EXPECT_TRUE(ae_equal(apply(f, r), r));
    EXPECT_TRUE(ae_equal(apply(Realizer::stack({StackOp::Pop}), apply(Realizer::stack({push}), r)), r));
  }
}

TEST(Microcosm, MonoidLawsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Realizer a = random_realizer(rng), b = random_realizer(rng), c = random_realizer(rng);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_EQ(compose(a, Realizer{}), a);
    EXPECT_EQ(compose(Realizer{}, a), a);
  }
}

// apply(compose(f, g)) == apply(g, apply(f)) on regions where both are defined.
TEST(Microcosm, ComposeMatchesSequentialApply) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Realizer f = random_realizer(rng), g = random_realizer(rng);
    Region r = parse_region("0o [1/4,1/2]x[0,1/4] V(*) + 0o [0,1/8]x[1/2,1] V(10)");
    Region seq, once;
    try {
      seq = apply(g, apply(f, r));
    } catch (const InvalidTargetError&) {
      continue;
    }
    once = apply(compose(f, g), r);
    EXPECT_TRUE(ae_equal(seq, once)) << to_string(f) << " then " << to_string(g);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Microcosm, MeasurePreservedWithoutStack) {
  std::mt19937_64 rng(3);
  Region r = parse_region("1i [0,1/2]x[1/4,3/4] V(*) + 1i [1/2,1] V()");
  for (int i = 0; i < 200; ++i) {
    Realizer f = compose(Realizer::translation(static_cast<int>(rng() % 3) - 1), Realizer::transposition(rng() % 3, rng() % 3));
    EXPECT_EQ(measure(apply(f, r)), measure(r));
  }
}

TEST(Microcosm, TextRoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Realizer f = random_realizer(rng);
    EXPECT_EQ(parse_realizer(to_string(f)), f) << to_string(f);
  }
  EXPECT_THROW(parse_realizer("shift=1"), ValidationError);
  EXPECT_THROW(parse_realizer("{perm=(0 1)}"), ValidationError);
}
