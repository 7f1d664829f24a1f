#include <gtest/gtest.h>

#include <sstream>

#include "ig/compiler.hpp"
#include "ig/corpus.hpp"
#include "ig/errors.hpp"
#include "ig/execution.hpp"

using namespace ig;

namespace {

GraphingRep gr(const std::string& support, const std::string& edges, int dialect = 1) {
  return from_text("graphing\ndialect " + std::to_string(dialect) + "\nsupport " + support + "\n" + edges);
}

CutSpec cut(const std::string& v, const std::string& c, const std::string& w) {
  return CutSpec{parse_region(c), parse_region(v), parse_region(w)};
}

}  // namespace

TEST(Execution, TwoStepPlug) {
  // a -> *i on one side, *i -> r on the other: one edge a -> r
  GraphingRep f = gr("a full V() + *i full V()", "edge 0 0 1 0 | {shift=-6} | a [0,1/2] V()\n");
  GraphingRep g = gr("*i full V() + r full V()", "edge 0 0 1/3 1 | {shift=7;ops=push1} | *i full V()\n");
  auto res = plug(f, g, cut("a full V()", "*i full V()", "r full V()"));
  EXPECT_TRUE(res.exact);
  GraphingRep want = gr("a full V() + r full V()", "edge 0 0 1/3 1 | {shift=1;ops=push1} | a [0,1/2] V()\n");
  EXPECT_TRUE(equivalent(res.graphing, want)) << to_text(res.graphing);
}

TEST(Execution, GeometricSeriesSumsToOne) {
  // x = 1/2 + x/2: every bounce through the cut halves the mass
  GraphingRep f = gr("a full V() + *i full V() + *o full V()",
                     "edge 0 0 1 0 | {shift=-6} | a full V()\n"
                     "edge 0 0 1 0 | {shift=-1} | *o full V()\n");
  GraphingRep g = gr("*i full V() + *o full V() + r full V()",
                     "edge 0 0 1/2 0 | {shift=1} | *i full V()\n"
                     "edge 0 0 1/2 0 | {shift=7} | *i full V()\n");
  auto res = plug(f, g, cut("a full V()", "*i full V() + *o full V()", "r full V()"));
  EXPECT_TRUE(res.exact);
  GraphingRep want = gr("a full V() + r full V()", "edge 0 0 1 0 | {shift=1} | a full V()\n");
  EXPECT_TRUE(equivalent(res.graphing, want)) << to_text(res.graphing);
}

TEST(Execution, AcyclicPlugIsAssociative) {
  GraphingRep f = gr("a full V() + *i full V()",
                     "edge 0 0 1/2 0 | {shift=-6} | a [0,1/2] V()\n"
                     "edge 0 0 1 1 | {shift=-6;bshift=1:-1/2} | a [1/2,1] V(0)\n");
  GraphingRep g = gr("*i full V() + 0i full V()",
                     "edge 0 0 1 0 | {shift=2;ops=push0} | *i [0,1/2] V()\n"
                     "edge 0 0 2/3 0 | {shift=2} | *i [1/2,1] V()\n");
  GraphingRep h = gr("0i full V() + r full V()", "edge 0 0 3/4 1 | {shift=5;ops=pop} | 0i full V()\n");
  auto fg = plug(f, g, cut("a full V()", "*i full V()", "0i full V()")).graphing;
  auto left = plug(fg, h, cut("a full V()", "0i full V()", "r full V()")).graphing;
  auto gh = plug(g, h, cut("*i full V()", "0i full V()", "r full V()")).graphing;
  auto right = plug(f, gh, cut("a full V()", "*i full V()", "r full V()")).graphing;
  EXPECT_TRUE(equivalent(left, right)) << to_text(left) << "\n" << to_text(right);
  EXPECT_FALSE(left.edges.empty());
}

TEST(Execution, StatesMultiplyIntoTheDialect) {
  GraphingRep f = gr("a full V() + *i full V()", "edge 0 1 1 0 | {shift=-6} | a full V()\n", 2);
  GraphingRep g = gr("*i full V() + r full V()", "edge 0 2 1 0 | {shift=7} | *i full V()\n", 3);
  auto res = plug(f, g, cut("a full V()", "*i full V()", "r full V()"));
  EXPECT_EQ(res.graphing.dialect, 6u);
  ASSERT_EQ(res.graphing.edges.size(), 1u);
  EXPECT_EQ(res.graphing.edges[0].inState, 0u);
  EXPECT_EQ(res.graphing.edges[0].outState, 1u * 3 + 2);
}

TEST(Execution, DiscretizeExamples) {
  GraphingRep g = gr("a full V() + r full V()",
                     "edge 0 0 1 0 | {shift=1} | a [0,1/2] V()\n"
                     "edge 0 0 1/2 0 | {shift=1;bshift=1:1/2;ops=push0} | a [0,1/2] V(1)\n");
  ThickGraph t = discretize(g, 2, 1);
  ASSERT_EQ(t.edges.size(), 2u);
  std::ostringstream out;
  dump(out, t);
  EXPECT_FALSE(out.str().empty());
  const auto& e0 = t.edges[0];
  EXPECT_EQ(t.nodes[e0.from], (ThickNode{Symbol::Accept, {0}, 0}));
  EXPECT_EQ(t.nodes[e0.to], (ThickNode{Symbol::Reject, {0}, 0}));
  EXPECT_EQ(e0.guard, "");
  const auto& e1 = t.edges[1];
  EXPECT_EQ(t.nodes[e1.to], (ThickNode{Symbol::Reject, {1}, 0}));
  EXPECT_EQ(e1.guard, "1");
  EXPECT_EQ(e1.weight.p, Rational(1, 2));

  // four cells each
  EXPECT_EQ(discretize(g, 4, 1).edges.size(), 4u);
  EXPECT_THROW(discretize(g, 3, 1), DiscretizationError);
  std::vector<const GraphingRep*> gs{&g};
  EXPECT_EQ(grid_of(gs), 2u);
  EXPECT_EQ(coords_of(gs), 1u);
}

TEST(Execution, AcceptPathSums) {
  struct Case {
    const char* name;
    const char* word;
    Rational accept;
  };
  for (const auto& c : {Case{"immediate", "", Rational(1)}, Case{"coin", "0", Rational(1, 2)},
                        Case{"retry", "1", Rational(1)}, Case{"lossy", "", Rational(1, 3)}}) {
    auto m = compile(corpus_automaton(c.name));
    PathSum s = run(m, canonical_representation(c.word));
    EXPECT_TRUE(s.exact) << c.name;
    EXPECT_EQ(s.stackRestored, c.accept) << c.name;
    EXPECT_LE(s.stackRestored, s.lowerBound);
    std::ostringstream out;
    dump(out, s);
    EXPECT_FALSE(out.str().empty());
  }
}

TEST(Execution, TruncationIsReportedOrThrown) {
  auto a = corpus_automaton("stack-coin");
  auto m = compile(a);
  ExecOptions opts;
  opts.stackDepth = 3;
  ASSERT_FALSE(oracle(a, "", 3).exact);
  PathSum s = run(m, canonical_representation(""), opts);
  EXPECT_FALSE(s.exact);
  EXPECT_EQ(s.stackRestored, oracle(a, "", 3).accept);
  opts.requireExact = true;
  EXPECT_THROW(run(m, canonical_representation(""), opts), TruncationError);
}
