#include <gtest/gtest.h>

#include <random>

#include "ig/errors.hpp"
#include "ig/measure_space.hpp"

using namespace ig;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::string random_prefix(std::mt19937_64& rng, std::size_t len) {
  static const char letters[] = "*01";
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += letters[rng() % 3];
  return s;
}

// Integer power of three, computed without Rational.
long pow3(std::size_t n) {
  long p = 1;
  while (n--) p *= 3;
  return p;
}

}  // namespace

TEST(MeasureSpace, CylinderExamples) {
  EXPECT_EQ(measure(parse_region("a full V(*0)")), q("1/9"));
  EXPECT_EQ(measure(parse_region("a full V()")), q("1"));
  EXPECT_EQ(measure(parse_region("a [0,1/3] V() + a [1/3,2/3] V()")), q("2/3"));
}

TEST(MeasureSpace, CylinderMeasureAllShortPrefixes) {
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= 6; ++len) {
    for (const auto& w : layer) EXPECT_EQ(Cylinder{w}.measure(), Rational(1, pow3(len))) << w;
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : std::string("*01")) next.push_back(w + c);
    layer = std::move(next);
  }
}

TEST(MeasureSpace, IntersectExamples) {
  EXPECT_TRUE(intersect(parse_region("a full V()"), parse_region("r full V()")).empty());
  EXPECT_TRUE(ae_equal(intersect(parse_region("a full V(*)"), parse_region("a full V(*0)")),
                       parse_region("a full V(*0)")));
  EXPECT_TRUE(ae_equal(intersect(parse_region("a [0,1/2]x[0,1] V()"), parse_region("a [1/4,1]x[0,1] V()")),
                       parse_region("a [1/4,1/2] V()")));
  EXPECT_TRUE(intersect(parse_region("a full V(0)"), parse_region("a full V(1)")).empty());
}

TEST(MeasureSpace, AeEqualExamples) {
  EXPECT_TRUE(ae_equal(parse_region("a [0,1] V()"), parse_region("a [0,1/2] V() + a [1/2,1] V()")));
  EXPECT_TRUE(ae_equal(parse_region("a [0,1/2] V()"), parse_region("a [0,1/2] V() + a [1/2,1/2] V()")));
  EXPECT_FALSE(ae_equal(parse_region("a [0,1/2] V()"), parse_region("a [0,2/3] V()")));
}

TEST(MeasureSpace, MalformedAtomsRejected) {
  EXPECT_THROW(validate(parse_region("a [1/2,1/3] V()")), ValidationError);
  EXPECT_THROW(validate(parse_region("a [0,3/2] V()")), ValidationError);
  EXPECT_THROW(parse_region("q full V()"), ValidationError);
  EXPECT_THROW(parse_region("a full V(2)"), ValidationError);
}

TEST(MeasureSpace, TextRoundTrip) {
  Region r = parse_region("r [0,1/2]x[1/3,1] V(*0) + a full V()@2 + 0i [1/4,1/2] V(1)");
  Region back = parse_region(to_string(r));
  EXPECT_EQ(to_string(back), to_string(r));
  EXPECT_TRUE(ae_equal(back, r));
}

// Random atoms on a small grid; properties checked against each other.
TEST(MeasureSpace, RandomRegionProperties) {
  std::mt19937_64 rng(7);
  auto atom = [&]() {
    Atom a;
    a.sym = static_cast<Symbol>(rng() % 2 == 0 ? 6 : rng() % 8);
    for (std::size_t c = 0; c < 2; ++c) {
      long lo = rng() % 6, hi = lo + 1 + rng() % (6 - lo);
      a.box.set(c, {Rational(lo, 6), Rational(hi, 6)});
    }
    a.cyl.prefix = random_prefix(rng, rng() % 3);
    return a;
  };
  for (int iter = 0; iter < 200; ++iter) {
    Region r;
    std::size_t n = 1 + rng() % 3;
    // disjoint by construction: distinct states
    for (std::size_t i = 0; i < n; ++i) {
      Atom a = atom();
      a.state = static_cast<std::uint32_t>(i);
      r.atoms.push_back(a);
    }
    Region s{atom(), atom()};
    s.atoms[1].state = 1;

    EXPECT_EQ(measure(intersect(r, r)), measure(r));
    EXPECT_TRUE(ae_equal(intersect(r, s), intersect(s, r)));
    Region t{atom()};
    EXPECT_TRUE(ae_equal(intersect(intersect(r, s), t), intersect(r, intersect(s, t))));

    // splitting a box interval at a rational point keeps the measure
    Region split;
    for (const auto& a : r.atoms) {
      Interval iv = a.box.coord(0);
      Rational mid = iv.lo + (iv.hi - iv.lo) * Rational(1 + rng() % 3, 4);
      Atom left = a, right = a;
      left.box.set(0, {iv.lo, mid});
      right.box.set(0, {mid, iv.hi});
      split.atoms.push_back(left);
      split.atoms.push_back(right);
    }
    EXPECT_EQ(measure(split), measure(r));
    EXPECT_TRUE(ae_equal(split, r));
    EXPECT_TRUE(pairwise_disjoint(split));

    // the common partition covers exactly the union
    auto parts = common_partition(r.atoms);
    EXPECT_TRUE(ae_equal(Region(parts), r));
  }
}

TEST(MeasureSpace, CoveredPartitionMatchesContainment) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 150; ++iter) {
    std::vector<Atom> atoms;
    std::vector<std::size_t> owner;
    std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      Atom a;
      a.sym = static_cast<Symbol>(rng() % 2);
      std::size_t dims = rng() % 3;
      for (std::size_t c = 0; c < dims; ++c) {
        long lo = rng() % 4, hi = lo + 1 + rng() % (4 - lo);
        a.box.set(c, {Rational(lo, 4), Rational(hi, 4)});
      }
      a.cyl.prefix = random_prefix(rng, rng() % 3);
      atoms.push_back(a);
      owner.push_back(rng() % 3);
    }
    auto cells = covered_partition(atoms, owner);
    Rational total(0);
    for (const auto& c : cells) {
      std::vector<std::size_t> expect;
      for (std::size_t k = 0; k < n; ++k)
        if (contains(atoms[k], c.cell)) expect.push_back(owner[k]);
      std::sort(expect.begin(), expect.end());
      expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
      EXPECT_EQ(c.owners, expect);
      // cells either sit inside an atom or miss it
      for (const auto& a : atoms)
        if (!contains(a, c.cell)) EXPECT_FALSE(intersect(a, c.cell));
      total += c.cell.measure();
    }
    EXPECT_TRUE(pairwise_disjoint(Region(common_partition(atoms))));
    EXPECT_EQ(total, measure(Region(common_partition(atoms))));
    EXPECT_TRUE(ae_equal(Region(common_partition(atoms)), Region(atoms)));
  }
}
