#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "taildep/error.hpp"
#include "taildep/serialize.hpp"
#include "taildep/tdf.hpp"

using namespace taildep;
using taildep::testing::sample_grid;

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

TailDependenceFunction parabola(std::size_t m = 200) {
  return make_tdf(sample_grid(m, [](double s) { return s * (1.0 - s); }), true);
}

}  // namespace

TEST(FromGrid, ScaledTentIsValidated) {
  const std::vector<double> v{0.0, 0.25, 0.0};
  auto result = from_grid(v, true);
  ASSERT_TRUE(std::holds_alternative<TailDependenceFunction>(result));
  const auto& tdf = std::get<TailDependenceFunction>(result);
  EXPECT_EQ(tdf.kind(), TdfKind::Validated);
  EXPECT_EQ(tdf.grid_size(), 2u);
  EXPECT_DOUBLE_EQ(tdf.eval(0.5), 0.25);
}

TEST(FromGrid, FrechetViolationIsReported) {
  const std::vector<double> v{0.0, 0.6, 0.0};
  for (bool concave : {true, false}) {
    auto result = from_grid(v, concave);
    ASSERT_TRUE(std::holds_alternative<ValidationReport>(result));
    const auto& report = std::get<ValidationReport>(result);
    EXPECT_FALSE(report.is_valid());
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].constraint, "frechet_upper");
    EXPECT_EQ(report.violations[0].index, 1u);
    EXPECT_NEAR(report.violations[0].magnitude, 0.1, 1e-15);
  }
}

TEST(FromGrid, ParabolaSecondDifferencesAreNegative) {
  const std::size_t m = 200;
  const auto v = sample_grid(m, [](double s) { return s * (1.0 - s); });
  for (std::size_t i = 1; i < m; ++i) {
    EXPECT_NEAR(v[i + 1] - 2.0 * v[i] + v[i - 1], -2.0 / (m * m), 1e-15);
  }
  auto result = from_grid(v, true);
  ASSERT_TRUE(std::holds_alternative<TailDependenceFunction>(result));
}

TEST(FromGrid, ConcavityViolationOnlyWhenEnforced) {
  const std::vector<double> v{0.0, 0.1, 0.0, 0.1, 0.0};
  EXPECT_TRUE(std::holds_alternative<TailDependenceFunction>(from_grid(v, false)));
  auto result = from_grid(v, true);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(result));
  const auto& report = std::get<ValidationReport>(result);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].constraint, "concavity");
  EXPECT_EQ(report.violations[0].index, 2u);
  EXPECT_NEAR(report.violations[0].magnitude, 0.2, 1e-15);
  EXPECT_EQ(kind_of([&] { make_tdf(v, true); }), ErrorKind::Validation);
}

TEST(FromGrid, RejectsNonFiniteAndShortInput) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of([&] { from_grid(std::vector<double>{0.0, nan, 0.0}, false); }),
            ErrorKind::Data);
  EXPECT_EQ(kind_of([&] { from_grid(std::vector<double>{0.0, inf, 0.0}, false); }),
            ErrorKind::Data);
  EXPECT_EQ(kind_of([&] { from_grid(std::vector<double>{0.0, 0.0}, false); }), ErrorKind::Data);
}

TEST(FromGrid, NegativeBeyondToleranceRejectedWithinToleranceClamped) {
  auto bad = from_grid(std::vector<double>{0.0, -1e-6, 0.0}, false);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(bad));
  EXPECT_EQ(std::get<ValidationReport>(bad).violations[0].constraint, "nonnegative");

  auto ok = from_grid(std::vector<double>{0.0, -1e-12, 0.0}, false);
  ASSERT_TRUE(std::holds_alternative<TailDependenceFunction>(ok));
  EXPECT_EQ(std::get<TailDependenceFunction>(ok).values()[1], 0.0);
}

TEST(FromGrid, BoundaryMustBeZero) {
  auto bad = from_grid(std::vector<double>{0.01, 0.2, 0.0}, true);
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(bad));
  EXPECT_EQ(std::get<ValidationReport>(bad).violations[0].constraint, "boundary_zero");

  auto ok = from_grid(std::vector<double>{1e-12, 0.2, -1e-12}, true);
  ASSERT_TRUE(std::holds_alternative<TailDependenceFunction>(ok));
  const auto& tdf = std::get<TailDependenceFunction>(ok);
  EXPECT_EQ(tdf.values()[0], 0.0);
  EXPECT_EQ(tdf.values()[2], 0.0);
}

TEST(Eval, Examples) {
  EXPECT_DOUBLE_EQ(comonotone_tdf().eval(0.5), 0.5);
  const auto zero = zero_tdf();
  for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) EXPECT_EQ(zero.eval(s), 0.0);
  EXPECT_DOUBLE_EQ(parabola().eval(0.25), 0.1875);
}

TEST(Eval, LinearBetweenGridPoints) {
  const auto tdf = make_tdf(std::vector<double>{0.0, 0.2, 0.3, 0.0}, true);
  EXPECT_NEAR(tdf.eval(1.0 / 6.0), 0.1, 1e-15);
  EXPECT_NEAR(tdf.eval(0.5), 0.25, 1e-15);
  EXPECT_NEAR(tdf(5.0 / 6.0), 0.15, 1e-15);
}

TEST(Eval, DomainErrors) {
  const auto tdf = comonotone_tdf();
  EXPECT_EQ(kind_of([&] { tdf.eval(-0.01); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { tdf.eval(1.01); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { tdf.eval(std::nan("")); }), ErrorKind::Domain);
}

TEST(Eval, StaysWithinFrechetBound) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tdf = taildep::testing::random_tdf(rng, 7 + trial);
    for (int j = 0; j < 200; ++j) {
      const double s = unit(rng);
      const double v = tdf.eval(s);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, std::min(s, 1.0 - s) + 1e-15);
    }
  }
}

TEST(Extend2d, Examples) {
  EXPECT_DOUBLE_EQ(comonotone_tdf().extend_2d(2.0, 2.0), 2.0);
  EXPECT_EQ(parabola().extend_2d(0.0, 0.0), 0.0);
  // Clayton(1) is xy/(x+y) on the quadrant; s = 1/3 lies on grids divisible by 3.
  const auto clayton = from_parametric(family::Clayton{1.0}, 300);
  EXPECT_NEAR(clayton.extend_2d(1.0, 2.0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(kind_of([&] { clayton.extend_2d(-1.0, 1.0); }), ErrorKind::Domain);
}

TEST(Extend2d, Homogeneity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tdf = taildep::testing::random_tdf(rng, 50);
    const double x = 10.0 * unit(rng);
    const double y = 10.0 * unit(rng);
    const double a = std::exp(8.0 * unit(rng) - 4.0);
    const double base = tdf.extend_2d(x, y);
    EXPECT_NEAR(tdf.extend_2d(a * x, a * y), a * base, 1e-12 * std::max(a * base, 1e-300));
  }
}

TEST(Extend2d, ExtremeRatiosKeepRelativePrecision) {
  // x / (x + y) within 1e-6 of 1: the value is y times the boundary slope.
  const auto tdf = make_tdf(std::vector<double>{0.0, 0.2, 0.3, 0.25, 0.0});
  for (double y : {1e-6, 3e-7}) {
    EXPECT_NEAR(tdf.extend_2d(1.0, y), 4.0 * 0.25 * y, 1e-15 * y);
    EXPECT_NEAR(tdf.extend_2d(y, 1.0), 4.0 * 0.2 * y, 1e-15 * y);
    for (double a : {1e-3, 7.0, 1e3}) {
      const double base = tdf.extend_2d(1.0, y);
      EXPECT_NEAR(tdf.extend_2d(a, a * y), a * base, 1e-12 * a * base);
    }
  }
}

TEST(Parametric, Examples) {
  EXPECT_DOUBLE_EQ(from_parametric(family::Clayton{1.0}).eval(0.5), 0.25);
  for (double v : from_parametric(family::Independence{}).values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(from_parametric(family::Tent{1.0, 1.0}), comonotone_tdf());
  EXPECT_EQ(from_parametric(family::Parabola{1.0}), parabola());
}

TEST(Parametric, ClaytonCenterValue) {
  for (double theta : {0.5, 1.0, 2.0, 5.0}) {
    const double expected = std::pow(2.0, -1.0 / theta) / 2.0;
    EXPECT_NEAR(from_parametric(family::Clayton{theta}).eval(0.5), expected, 1e-15) << theta;
  }
}

TEST(Parametric, TentIsClippedAndParameterErrors) {
  const auto tent = from_parametric(family::Tent{3.0, 0.5}, 60);
  for (std::size_t i = 0; i <= 60; ++i) {
    const double s = tent.grid_point(i);
    EXPECT_NEAR(tent.values()[i], std::min({3.0 * s, 0.5 * (1.0 - s), s, 1.0 - s}), 1e-15);
  }
  EXPECT_EQ(kind_of([] { from_parametric(family::Clayton{0.0}); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { from_parametric(family::Tent{0.0, 1.0}); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { from_parametric(family::Tent{1.0, -1.0}); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { from_parametric(family::Parabola{0.0}); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { from_parametric(family::Parabola{1.5}); }), ErrorKind::Parameter);
}

TEST(Majorant, HandExample) {
  const auto input = make_tdf(std::vector<double>{0.0, 0.1, 0.0, 0.1, 0.0}, false);
  const auto hull = least_concave_majorant(input);
  EXPECT_EQ(hull.kind(), TdfKind::Validated);
  const std::vector<double> expected{0.0, 0.1, 0.1, 0.1, 0.0};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(hull.values()[i], expected[i], 1e-15);
}

TEST(Majorant, ConcaveInputAndZeroUnchanged) {
  EXPECT_EQ(least_concave_majorant(parabola()).values().size(), 201u);
  const auto p = parabola();
  const auto hp = least_concave_majorant(p);
  for (std::size_t i = 0; i <= 200; ++i) EXPECT_EQ(hp.values()[i], p.values()[i]);
  const auto z = least_concave_majorant(zero_tdf());
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

// Brute-force oracle: the least concave majorant at i is the maximum over all
// chords between a point left of i and a point right of i.
TEST(Majorant, MatchesChordOracleIdempotentAndMonotone) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 4 + trial % 37;
    std::vector<double> lo(m + 1, 0.0), hi(m + 1, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
      const double bound = std::min(i, m - i) / static_cast<double>(m);
      hi[i] = bound * unit(rng);
      lo[i] = hi[i] * unit(rng);
    }
    const auto hull = least_concave_majorant(make_tdf(hi, false));
    for (std::size_t i = 0; i <= m; ++i) {
      double best = hi[i];
      for (std::size_t a = 0; a <= i; ++a) {
        for (std::size_t b = i; b <= m; ++b) {
          if (a == b) continue;
          const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
          best = std::max(best, (1.0 - t) * hi[a] + t * hi[b]);
        }
      }
      EXPECT_NEAR(hull.values()[i], best, 1e-14);
    }
    EXPECT_EQ(least_concave_majorant(hull), hull);
    const auto hull_lo = least_concave_majorant(make_tdf(lo, false));
    for (std::size_t i = 0; i <= m; ++i) EXPECT_LE(hull_lo.values()[i], hull.values()[i] + 1e-15);
  }
}

TEST(Resample, RefinementKeepsValues) {
  const auto p = parabola(10);
  const auto fine = resample(p, 30);
  ASSERT_EQ(fine.size(), 31u);
  for (std::size_t i = 0; i <= 10; ++i) EXPECT_EQ(fine[3 * i], p.values()[i]);
  EXPECT_NEAR(fine[1], (2.0 * p.values()[0] + p.values()[1]) / 3.0, 1e-15);
}

TEST(Json, RoundTripIsBitExact) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tdf = taildep::testing::random_tdf(rng, 10 + trial);
    const auto back = parse_tdf(to_json(tdf).dump());
    ASSERT_EQ(back.grid_size(), tdf.grid_size());
    for (std::size_t i = 0; i <= tdf.grid_size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.values()[i]),
                std::bit_cast<std::uint64_t>(tdf.values()[i]));
    }
    EXPECT_EQ(back.kind(), TdfKind::Validated);
  }
  const auto empirical = make_tdf(std::vector<double>{0.0, 0.1, 0.0, 0.1, 0.0}, false);
  const auto text = to_json(empirical).dump();
  EXPECT_EQ(text, R"({"m":4,"values":[0.0,0.1,0.0,0.1,0.0],"kind":"empirical"})");
  EXPECT_EQ(parse_tdf(text), empirical);
}

TEST(Json, MalformedDocuments) {
  EXPECT_EQ(kind_of([] { parse_tdf("{"); }), ErrorKind::Data);
  EXPECT_EQ(kind_of([] { parse_tdf(R"({"m":2,"values":[0,0.1],"kind":"validated"})"); }),
            ErrorKind::Data);
  EXPECT_EQ(kind_of([] { parse_tdf(R"({"m":2,"values":[0,0.1,0],"kind":"other"})"); }),
            ErrorKind::Data);
  EXPECT_EQ(kind_of([] { parse_tdf(R"({"m":2,"values":[0,0.7,0],"kind":"empirical"})"); }),
            ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_tdf(R"({"m":4,"values":[0,0.1,0,0.1,0],"kind":"validated"})"); }),
            ErrorKind::Validation);
}
