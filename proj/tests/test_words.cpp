#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ig/errors.hpp"
#include "ig/words.hpp"

using namespace ig;

namespace {

std::string cell(std::string_view sym, std::uint32_t i, std::uint32_t grid) {
  return std::string(sym) + " [" + to_string(Rational(i, grid)) + "," + to_string(Rational(i + 1, grid)) + "] V()";
}

std::uint64_t count_injections(std::size_t k, std::uint32_t m) {
  // brute force over all maps {0..k} -> {0..m}
  std::uint64_t total = 0, maps = 1;
  for (std::size_t i = 0; i <= k; ++i) maps *= (m + 1);
  for (std::uint64_t code = 0; code < maps; ++code) {
    std::set<std::uint64_t> seen;
    std::uint64_t c = code;
    for (std::size_t i = 0; i <= k; ++i, c /= (m + 1)) seen.insert(c % (m + 1));
    total += seen.size() == k + 1;
  }
  return total;
}

}  // namespace

TEST(Words, EdgeCounts) {
  EXPECT_EQ(word_graph("").edges.size(), 2u);
  EXPECT_EQ(word_graph("0").edges.size(), 4u);
  EXPECT_EQ(word_graph("01").edges.size(), 6u);
  EXPECT_EQ(word_graph("0110").positions(), 5u);
  EXPECT_THROW(word_graph("012"), ValidationError);
}

TEST(Words, SingleLetterGraph) {
  WordGraph g = word_graph("0");
  EXPECT_EQ(g.letter(0), '*');
  EXPECT_EQ(g.letter(1), '0');
  // moving right out of the marker enters the letter; moving left wraps
  std::set<std::string> got;
  for (const auto& e : g.edges)
    got.insert(std::string(1, e.kind) + std::string(symbol_name(e.srcSym)) + std::to_string(e.srcPos) + ">" +
               std::string(symbol_name(e.dstSym)) + std::to_string(e.dstPos));
  std::set<std::string> want{"r*o0>0i1", "r0o1>*i0", "l*i0>0o1", "l0i1>*o0"};
  EXPECT_EQ(got, want);
}

TEST(Words, CanonicalRepresentationIsIdentity) {
  WordRepresentation r = canonical_representation("0110");
  EXPECT_EQ(r.injection, (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(r.grid, 5u);
  EXPECT_EQ(r.marker_cell(), 0u);
  EXPECT_NO_THROW(validate(r.graphing));
}

TEST(Words, RepFamilySizes) {
  EXPECT_EQ(rep_family("0", 2).size(), 6u);
  EXPECT_EQ(rep_family_size(1, 2), 6u);
  EXPECT_EQ(rep_family("", 0).size(), 1u);
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::uint32_t m = 0; m <= 4; ++m) EXPECT_EQ(rep_family_size(k, m), count_injections(k, m)) << k << " " << m;
  EXPECT_EQ(rep_family("01", 4, 7).size(), 7u);
  EXPECT_THROW(rep_family("011", 2), ValidationError);
  auto fam = rep_family("01", 3);
  EXPECT_EQ(fam.front().injection, (std::vector<std::uint32_t>{0, 1, 2}));
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& r : fam) distinct.insert(r.injection);
  EXPECT_EQ(distinct.size(), fam.size());
}

TEST(Words, BangRejectsNonInjective) {
  WordGraph g = word_graph("0");
  std::vector<std::uint32_t> bad{1, 1};
  EXPECT_THROW(bang_representation(g, bad), ValidationError);
  std::vector<std::uint32_t> shortInj{0};
  EXPECT_THROW(bang_representation(g, shortInj), ValidationError);
}

TEST(Words, BangIsDeterministic) {
  WordGraph g = word_graph("10");
  std::vector<std::uint32_t> inj{3, 0, 2};
  EXPECT_EQ(to_text(bang_representation(g, inj, 4)), to_text(bang_representation(g, inj, 4)));
}

// Every edge moves the cell of its source position onto the cell of its target.
TEST(Words, EdgesMoveBetweenCells) {
  std::mt19937_64 rng(4);
  for (const std::string w : {"", "0", "1", "01", "110", "0101"}) {
    WordGraph g = word_graph(w);
    for (std::uint32_t m = static_cast<std::uint32_t>(w.size()); m <= w.size() + 2; ++m) {
      auto fam = rep_family(w, m);
      const auto& rep = fam[rng() % fam.size()];
      const GraphingRep& gr = rep.graphing;
      ASSERT_EQ(gr.edges.size(), g.edges.size());
      EXPECT_TRUE(is_deterministic(gr));
      EXPECT_TRUE(is_subprobabilistic(gr));
      for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        Region src = parse_region(cell(symbol_name(e.srcSym), rep.injection[e.srcPos], rep.grid));
        Region dst = parse_region(cell(symbol_name(e.dstSym), rep.injection[e.dstPos], rep.grid));
        EXPECT_TRUE(ae_equal(gr.edges[i].source, src)) << w << " edge " << i;
        EXPECT_TRUE(ae_equal(apply(gr.edges[i].realizer, src), dst)) << w << " edge " << i;
        EXPECT_EQ(gr.edges[i].weight.m(), 0);
      }
    }
  }
}

TEST(Words, MarkerRegion) {
  auto fam = rep_family("1", 2);
  const auto& rep = fam[2];  // injection (1, 0)
  ASSERT_EQ(rep.injection, (std::vector<std::uint32_t>{1, 0}));
  EXPECT_TRUE(ae_equal(marker_region(rep, 2, Symbol::StarIn), parse_region("*i [1/3,2/3]x[1/3,2/3] V(*)")));
  EXPECT_TRUE(ae_equal(marker_region(rep, 1, Symbol::Accept, ""), parse_region("a [1/3,2/3] V()")));
}
