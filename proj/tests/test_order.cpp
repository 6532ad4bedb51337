#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "taildep/measures.hpp"
#include "taildep/order.hpp"
#include "taildep/serialize.hpp"

using namespace taildep;
using taildep::testing::sample_grid;

namespace {

TailDependenceFunction parabola(std::size_t m) {
  return make_tdf(sample_grid(m, [](double s) { return s * (1.0 - s); }), true);
}

TailDependenceFunction tent_half(std::size_t m) {
  return make_tdf(sample_grid(m, [](double s) { return std::min(s / 2.0, 1.0 - s); }), true);
}

bool at_most(Relation r) { return r == Relation::Less || r == Relation::Equal; }

}  // namespace

TEST(Compare, ZeroBelowComonotone) {
  const auto r = compare(zero_tdf(), comonotone_tdf());
  EXPECT_EQ(r.relation, Relation::Less);
  EXPECT_FALSE(r.first_exceeds.has_value());
  ASSERT_TRUE(r.second_exceeds.has_value());
  EXPECT_DOUBLE_EQ(r.second_exceeds->s, 0.5);
  EXPECT_EQ(compare(comonotone_tdf(), zero_tdf()).relation, Relation::Greater);
}

TEST(Compare, Reflexive) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto tdf = taildep::testing::random_tdf(rng, 30 + i);
    EXPECT_EQ(compare(tdf, tdf).relation, Relation::Equal);
    EXPECT_EQ(compare(tdf, tdf, 0.0).relation, Relation::Equal);
  }
}

TEST(Compare, ParabolaAgainstTentIsIncomparable) {
  const auto p = parabola(300);
  const auto t = tent_half(300);
  EXPECT_NEAR(p.eval(0.1), 0.09, 1e-15);
  EXPECT_NEAR(t.eval(0.1), 0.05, 1e-15);
  EXPECT_NEAR(p.eval(0.7), 0.21, 1e-15);
  EXPECT_NEAR(t.eval(0.7), 0.3, 1e-15);

  const auto r = compare(p, t);
  ASSERT_EQ(r.relation, Relation::Incomparable);
  ASSERT_TRUE(r.first_exceeds && r.second_exceeds);
  // Largest excesses: s/2 - s^2 peaks at 1/4, (1 - s)^2 - ... peaks at 2/3.
  EXPECT_NEAR(r.first_exceeds->s, 0.25, 1e-12);
  EXPECT_GT(r.first_exceeds->first, r.first_exceeds->second);
  EXPECT_NEAR(r.first_exceeds->first - r.first_exceeds->second, 1.0 / 16.0, 1e-12);
  EXPECT_NEAR(r.second_exceeds->s, 2.0 / 3.0, 1e-12);
  EXPECT_LT(r.second_exceeds->first, r.second_exceeds->second);
  EXPECT_NEAR(r.second_exceeds->second - r.second_exceeds->first, 1.0 / 9.0, 1e-12);

  const auto json = to_json(r);
  EXPECT_EQ(json["relation"], "incomparable");
  EXPECT_NEAR(json["witnesses"]["first_exceeds"]["s"].get<double>(), 0.25, 1e-12);
}

TEST(Compare, ToleranceDecidesEquality) {
  const auto a = make_tdf(std::vector<double>{0.0, 0.2, 0.0}, false);
  const auto b = make_tdf(std::vector<double>{0.0, 0.2 + 5e-10, 0.0}, false);
  EXPECT_FALSE(a == b);
  EXPECT_EQ(compare(a, b).relation, Relation::Equal);
  EXPECT_EQ(compare(a, b, 0.0).relation, Relation::Less);
  EXPECT_EQ(compare(a, b, 1e-10).relation, Relation::Less);
}

TEST(Compare, DifferentGridsCompareOnCommonRefinement) {
  const auto coarse = make_tdf(std::vector<double>{0.0, 0.5, 0.0}, true);
  EXPECT_EQ(compare(coarse, comonotone_tdf(4)).relation, Relation::Equal);
  // m = 3 and m = 4 share no interior node; the kinks differ.
  const auto three = make_tdf(std::vector<double>{0.0, 0.33, 0.33, 0.0}, true);
  const auto four = make_tdf(std::vector<double>{0.0, 0.24, 0.3, 0.24, 0.0}, true);
  // At s = 1/3: three -> 0.33, four -> 0.24 + (1/3 - 1/4) * 4 * 0.06 = 0.26.
  const auto r = compare(three, four);
  EXPECT_EQ(r.relation, Relation::Greater);
  ASSERT_TRUE(r.first_exceeds);
  EXPECT_NEAR(r.first_exceeds->first - r.first_exceeds->second, 0.07, 1e-12);
}

TEST(Compare, LessImpliesTdcOrdered) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto [lo, hi] = taildep::testing::random_ordered_pair(rng, 64);
    const double tol = 1e-9;
    const auto r = compare(lo, hi, tol);
    ASSERT_TRUE(at_most(r.relation));
    EXPECT_LE(tdc(lo).value, tdc(hi).value + 2.0 * tol);
  }
}

TEST(Compare, TransitiveOnRandomTriples) {
  std::mt19937_64 rng(10);
  int chains = 0;
  for (int i = 0; i < 500; ++i) {
    const auto a = taildep::testing::random_tdf(rng, 20);
    const auto b = taildep::testing::random_tdf(rng, 20);
    const auto c = taildep::testing::random_tdf(rng, 20);
    const TailDependenceFunction* t[3] = {&a, &b, &c};
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        for (int z = 0; z < 3; ++z) {
          if (at_most(compare(*t[x], *t[y], 0.0).relation) &&
              at_most(compare(*t[y], *t[z], 0.0).relation)) {
            ++chains;
            EXPECT_TRUE(at_most(compare(*t[x], *t[z], 0.0).relation));
          }
        }
      }
    }
  }
  // Built chains: scaled copies guarantee non-trivial cases.
  for (int i = 0; i < 200; ++i) {
    const auto [mid, top] = taildep::testing::random_ordered_pair(rng, 40);
    std::vector<double> low(mid.values().begin(), mid.values().end());
    for (double& v : low) v *= 0.5;
    const auto bottom = make_tdf(low, true);
    ASSERT_TRUE(at_most(compare(bottom, mid, 0.0).relation));
    ASSERT_TRUE(at_most(compare(mid, top, 0.0).relation));
    EXPECT_TRUE(at_most(compare(bottom, top, 0.0).relation));
    ++chains;
  }
  EXPECT_GT(chains, 200);
}

TEST(Compare, WitnessesHaveOppositeSigns) {
  std::mt19937_64 rng(12);
  int incomparable = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = taildep::testing::random_tdf(rng, 50);
    const auto b = taildep::testing::random_tdf(rng, 30);
    const auto r = compare(a, b);
    if (r.relation != Relation::Incomparable) continue;
    ++incomparable;
    ASSERT_TRUE(r.first_exceeds && r.second_exceeds);
    EXPECT_GT(r.first_exceeds->first - r.first_exceeds->second, 1e-9);
    EXPECT_GT(r.second_exceeds->second - r.second_exceeds->first, 1e-9);
    EXPECT_NEAR(a.eval(r.first_exceeds->s), r.first_exceeds->first, 1e-15);
    EXPECT_NEAR(b.eval(r.second_exceeds->s), r.second_exceeds->second, 1e-15);
  }
  EXPECT_GT(incomparable, 10);
}
