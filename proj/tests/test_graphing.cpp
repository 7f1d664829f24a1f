#include <gtest/gtest.h>

#include "ig/errors.hpp"
#include "ig/graphing.hpp"

using namespace ig;

namespace {

GraphingRep g(const std::string& edges, int dialect = 1) {
  return from_text("graphing\ndialect " + std::to_string(dialect) + "\nsupport a full V() + r full V()\n" + edges);
}

const char* kWhole = "edge 0 0 1 0 | {shift=1} | a [0,1] V()\n";
const char* kSplit =
    "edge 0 0 1 0 | {shift=1} | a [0,1/2] V()\n"
    "edge 0 0 1 0 | {shift=1} | a [1/2,1] V()\n";

}  // namespace

TEST(Graphing, RefinementExamples) {
  EXPECT_TRUE(is_refinement(g(kSplit), g(kWhole)));
  EXPECT_TRUE(is_refinement(g(kWhole), g(kWhole)));
  GraphingRep halved = g(
      "edge 0 0 1/2 0 | {shift=1} | a [0,1/2] V()\n"
      "edge 0 0 1 0 | {shift=1} | a [1/2,1] V()\n");
  EXPECT_FALSE(is_refinement(halved, g(kWhole)));
  // overlapping pieces are not a partition
  GraphingRep overlap = g(
      "edge 0 0 1 0 | {shift=1} | a [0,2/3] V()\n"
      "edge 0 0 1 0 | {shift=1} | a [1/3,1] V()\n");
  EXPECT_FALSE(is_refinement(overlap, g(kWhole)));
}

TEST(Graphing, EquivalenceExamples) {
  EXPECT_TRUE(equivalent(g(kSplit), g(kWhole)));
  EXPECT_TRUE(equivalent(g(kWhole), g(kSplit)));
  EXPECT_TRUE(equivalent(g("edge 0 0 1 0 | {shift=1} | a [0,1/2] V()\n"),
                         g("edge 0 0 1 0 | {shift=1} | a [0,1/2] V() + a [1/2,1/2] V()\n")));
  EXPECT_FALSE(equivalent(g(kWhole), g("edge 0 0 1 0 | {shift=1;ops=push0} | a [0,1] V()\n")));
  EXPECT_FALSE(equivalent(g(kWhole), g("edge 0 0 1 1 | {shift=1} | a [0,1] V()\n")));
  // duplicated edges are a multiset, not a set
  EXPECT_FALSE(equivalent(g(kWhole), g(std::string(kWhole) + kWhole)));
  // cylinder splits
  EXPECT_TRUE(equivalent(g(kWhole), g("edge 0 0 1 0 | {shift=1} | a full V(*) + a full V(0)\n"
                                      "edge 0 0 1 0 | {shift=1} | a full V(1)\n")));
}

TEST(Graphing, DeterminismExamples) {
  EXPECT_TRUE(is_deterministic(g(kSplit)));
  EXPECT_FALSE(is_deterministic(g(
      "edge 0 0 1 0 | {shift=1} | a [0,2/3] V()\n"
      "edge 0 0 1 0 | {} | a [1/3,1] V()\n")));
  EXPECT_FALSE(is_deterministic(g("edge 0 0 1/2 0 | {shift=1} | a full V()\n")));
  // distinct input states never overlap
  EXPECT_TRUE(is_deterministic(g(
      "edge 0 1 1 0 | {shift=1} | a full V()\n"
      "edge 1 0 1 0 | {} | a full V()\n",
      2)));
}

TEST(Graphing, SubprobabilityExamples) {
  EXPECT_TRUE(is_subprobabilistic(g(
      "edge 0 0 1/2 0 | {shift=1} | a full V()\n"
      "edge 0 0 1/2 0 | {} | a full V()\n")));
  EXPECT_FALSE(is_subprobabilistic(g(
      "edge 0 0 3/4 0 | {shift=1} | a full V()\n"
      "edge 0 0 1/2 0 | {} | a full V()\n")));
  EXPECT_TRUE(is_subprobabilistic(g(kSplit)));
  // only the overlap matters
  EXPECT_FALSE(is_subprobabilistic(g(
      "edge 0 0 3/4 0 | {shift=1} | a [0,1/2] V()\n"
      "edge 0 0 1/2 0 | {} | a [1/3,1] V()\n")));
  EXPECT_TRUE(is_subprobabilistic(g(
      "edge 0 0 3/4 0 | {shift=1} | a [0,1/2] V()\n"
      "edge 0 0 1/2 0 | {} | a [1/2,1] V()\n")));
}

TEST(Graphing, Validation) {
  EXPECT_THROW(validate(g("edge 0 3 1 0 | {shift=1} | a full V()\n", 2)), ParseError);
  EXPECT_THROW(validate(g("edge 0 0 1 0 | {shift=-1} | a full V()\n")), Error);
  EXPECT_THROW(from_text("graphing\ndialect 1\nsupport a full V()\nedge 0 0 3/2 0 | {} | a full V()\n"), Error);
  EXPECT_THROW(from_text("graphing\nsupport a full V()\nbogus\n"), ParseError);
  EXPECT_NO_THROW(validate(g(kSplit)));
}

TEST(Graphing, TextRoundTrip) {
  GraphingRep a = g(
      "# comment\n"
      "edge 0 1 2/3 1 | {shift=1;perm=(1 2);bshift=1:1/3;ops=pop,push0} | a [0,1/3]x[1/2,1] V(*)\n"
      "edge 1 0 1 0 | {} | r full V()\n",
      2);
  std::string text = to_text(a);
  EXPECT_EQ(to_text(from_text(text)), text);
  EXPECT_TRUE(equivalent(from_text(text), a));
}

TEST(Graphing, WeightProducts) {
  Weight half{Rational(1, 2), true}, three{Rational(3, 4), false};
  EXPECT_EQ((half * three).m(), Rational(3, 8));
  EXPECT_EQ((three * three).m(), Rational(0));
  EXPECT_EQ(to_string(half), "1/2.1");
  EXPECT_EQ(to_string(three), "3/4");
}
