#include <gtest/gtest.h>

#include <cmath>

#include "taildep/error.hpp"
#include "taildep/estimator.hpp"
#include "taildep/measures.hpp"
#include "taildep/random.hpp"
#include "taildep/simulate.hpp"

using namespace taildep;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no taildep::Error thrown";
  return ErrorKind::Io;
}

double sup_distance(const TailDependenceFunction& a, const TailDependenceFunction& b) {
  double sup = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    sup = std::max(sup, std::abs(a.values()[i] - b.values()[i]));
  }
  return sup;
}

TailDependenceFunction projected_estimate(const CopulaFamily& family, std::uint64_t seed) {
  const auto s = sample({family, 20000, seed});
  return least_concave_majorant(empirical_tdf(ranks(s.u, s.v), {141, 200, Tail::Lower}));
}

}  // namespace

TEST(Xoshiro, ReferenceStream) {
  // Reference values from an independent implementation of SplitMix64
  // seeding followed by xoshiro256**.
  Xoshiro256 a(42);
  EXPECT_EQ(a(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(a(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(a(), 0xae17533239e499a1ULL);
  EXPECT_EQ(a(), 0xecb8ad4703b360a1ULL);
  Xoshiro256 b(0);
  EXPECT_EQ(b(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(b(), 0xbf6e1f784956452aULL);
  Xoshiro256 c(42);
  EXPECT_EQ(c.uniform_open(), 0.08386297105988222);
}

TEST(Xoshiro, UniformOpenStaysInside) {
  Xoshiro256 rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(NormalQuantile, ReferenceValues) {
  // 50-digit root finding of the normal CDF.
  const std::pair<double, double> table[] = {
      {1e-300, -37.0470962993612},        {1e-20, -9.262340089798407},
      {1e-10, -6.361340902404057},        {1e-05, -4.264890793922825},
      {0.001, -3.0902323061678136},       {0.02425, -1.972961051311885},
      {0.05, -1.6448536269514726},        {0.1, -1.2815515655446004},
      {0.3, -0.5244005127080408},         {0.425, -0.18911842627279252},
      {0.5, 0.0},                         {0.575, 0.18911842627279238},
      {0.6, 0.2533471031357997},          {0.9, 1.2815515655446006},
      {0.975, 1.9599639845400538},        {0.999, 3.090232306167813},
      {0.9999999999, 6.361340889697422},
  };
  for (const auto& [p, q] : table) EXPECT_NEAR(normal_quantile(p), q, 1e-9 * std::max(1.0, std::abs(q))) << p;
}

TEST(NormalQuantile, InvertsTheCdf) {
  // Lower half only: the CDF rounds toward 1 in the upper tail.
  for (double z = -8.0; z <= 0.0; z += 0.125) {
    EXPECT_NEAR(normal_quantile(normal_cdf(z)), z, 1e-9 * std::max(1.0, std::abs(z)));
  }
  for (double p : {0.001, 0.0625, 0.25, 0.375}) {
    EXPECT_NEAR(normal_quantile(1.0 - p), -normal_quantile(p), 1e-12);
  }
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
}

TEST(Sample, ComonotoneAndDeterminism) {
  const auto s = sample({copula::Comonotone{}, 1000, 3});
  for (std::size_t i = 0; i < 1000; ++i) EXPECT_EQ(s.u[i], s.v[i]);
  const auto g1 = sample({copula::Gaussian{0.3}, 500, 99});
  const auto g2 = sample({copula::Gaussian{0.3}, 500, 99});
  EXPECT_EQ(g1.u, g2.u);
  EXPECT_EQ(g1.v, g2.v);
  const auto g3 = sample({copula::Gaussian{0.3}, 500, 100});
  EXPECT_NE(g1.u, g3.u);
  const auto rho1 = sample({copula::Gaussian{1.0}, 100, 5});
  EXPECT_EQ(rho1.u, rho1.v);
}

TEST(Sample, IndependenceBinsAreUniform) {
  const std::size_t n = 10000;
  const auto s = sample({copula::Independence{}, n, 2024});
  const double tolerance = 4.0 * std::sqrt(n * 0.1 * 0.9);
  for (const auto* series : {&s.u, &s.v}) {
    std::array<int, 10> bins{};
    for (double x : *series) bins[std::min(9, static_cast<int>(x * 10.0))]++;
    for (int b : bins) EXPECT_NEAR(b, n / 10.0, tolerance);
  }
}

TEST(Sample, MarginalsAreUniformForEveryFamily) {
  const std::size_t n = 10000;
  const CopulaFamily families[] = {copula::Clayton{2.0}, copula::GumbelSurvival{1.7},
                                   copula::Gaussian{-0.4}};
  for (const auto& family : families) {
    const auto s = sample({family, n, 77});
    for (const auto* series : {&s.u, &s.v}) {
      std::array<int, 10> bins{};
      for (double x : *series) {
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
        bins[std::min(9, static_cast<int>(x * 10.0))]++;
      }
      for (int b : bins) EXPECT_NEAR(b, n / 10.0, 4.0 * std::sqrt(n * 0.09));
    }
  }
}

TEST(Sample, ClaytonTailCoefficient) {
  const auto s = sample({copula::Clayton{1.0}, 20000, 1});
  const auto tdf = empirical_tdf(ranks(s.u, s.v), {141, 200, Tail::Lower});
  EXPECT_NEAR(tdc(tdf).value, 0.5, 0.08);
}

TEST(Sample, ProjectedEstimateCloseToAnalytic) {
  const CopulaFamily families[] = {copula::Independence{}, copula::Comonotone{},
                                   copula::Clayton{1.0}, copula::Clayton{2.0},
                                   copula::GumbelSurvival{2.0}};
  std::uint64_t seed = 11;
  for (const auto& family : families) {
    EXPECT_LE(sup_distance(projected_estimate(family, seed++), analytic_tdf(family)), 0.05);
  }
}

TEST(Sample, GaussianIsTailIndependentAtTheCenter) {
  const auto s = sample({copula::Gaussian{0.5}, 20000, 3});
  const auto tdf = empirical_tdf(ranks(s.u, s.v), {141, 200, Tail::Lower});
  EXPECT_LE(tdc(tdf).value, 0.15);
}

TEST(Sample, ParameterErrors) {
  EXPECT_EQ(kind_of([] { make_copula_family("clayton", 0.0); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { make_copula_family("gumbel_survival", 0.5); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { make_copula_family("gaussian", 1.5); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { make_copula_family("student", 1.0); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { sample({copula::Clayton{-1.0}, 10, 1}); }), ErrorKind::Parameter);
}

TEST(Analytic, Examples) {
  for (double v : analytic_tdf(copula::Gaussian{0.9}).values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(analytic_tdf(copula::Gaussian{1.0}), comonotone_tdf());
  EXPECT_DOUBLE_EQ(analytic_tdf(copula::Clayton{1.0}).eval(0.5), 0.25);
  EXPECT_NEAR(analytic_tdf(copula::GumbelSurvival{2.0}).eval(0.5), 1.0 - std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(analytic_tdf(copula::GumbelSurvival{2.0}).eval(0.5), 0.29289, 1e-5);
  for (double theta : {1.0, 1.3, 2.0, 5.0, 20.0}) {
    const auto tdf = analytic_tdf(copula::GumbelSurvival{theta});
    EXPECT_EQ(tdf.kind(), TdfKind::Validated);
    EXPECT_NEAR(tdc(tdf).value, 2.0 - std::pow(2.0, 1.0 / theta), 1e-14);
  }
}
