#include "taildep/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "taildep/error.hpp"
#include "taildep/random.hpp"

namespace taildep {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kUnitEps = 0x1.0p-53;

double open_unit(double x) { return std::clamp(x, kUnitEps, 1.0 - kUnitEps); }

void check_family(const CopulaFamily& family) {
  std::visit(
      Overloaded{
          [](const copula::Independence&) {},
          [](const copula::Comonotone&) {},
          [](const copula::Clayton& c) {
            if (!(c.theta > 0.0) || !std::isfinite(c.theta)) {
              fail(ErrorKind::Parameter, "Clayton theta must be > 0");
            }
          },
          [](const copula::GumbelSurvival& c) {
            if (!(c.theta >= 1.0) || !std::isfinite(c.theta)) {
              fail(ErrorKind::Parameter, "Gumbel theta must be >= 1");
            }
          },
          [](const copula::Gaussian& c) {
            if (!(c.rho >= -1.0 && c.rho <= 1.0)) {
              fail(ErrorKind::Parameter, "Gaussian rho must lie in [-1, 1]");
            }
          },
      },
      family);
}

// Positive alpha-stable variable with Laplace transform exp(-t^alpha),
// 0 < alpha < 1 (Kanter's representation).
double positive_stable(Xoshiro256& rng, double alpha) {
  const double angle = std::numbers::pi * rng.uniform_open();
  const double e = rng.exponential();
  const double a = std::sin(alpha * angle) / std::pow(std::sin(angle), 1.0 / alpha);
  const double b = std::pow(std::sin((1.0 - alpha) * angle) / e, (1.0 - alpha) / alpha);
  return a * b;
}

}  // namespace

CopulaFamily make_copula_family(std::string_view name, double param) {
  CopulaFamily family;
  if (name == "independence") {
    family = copula::Independence{};
  } else if (name == "comonotone") {
    family = copula::Comonotone{};
  } else if (name == "clayton") {
    family = copula::Clayton{param};
  } else if (name == "gumbel_survival") {
    family = copula::GumbelSurvival{param};
  } else if (name == "gaussian") {
    family = copula::Gaussian{param};
  } else {
    fail(ErrorKind::Parameter, "unknown copula family '" + std::string(name) + "'");
  }
  check_family(family);
  return family;
}

PseudoSample sample(const CopulaSpec& spec) {
  check_family(spec.family);
  Xoshiro256 rng(spec.seed);
  PseudoSample out;
  out.u.resize(spec.n);
  out.v.resize(spec.n);

  auto comonotone = [&] {
    for (std::size_t i = 0; i < spec.n; ++i) out.u[i] = out.v[i] = rng.uniform_open();
  };
  auto independence = [&] {
    for (std::size_t i = 0; i < spec.n; ++i) {
      out.u[i] = rng.uniform_open();
      out.v[i] = rng.uniform_open();
    }
  };

  std::visit(
      Overloaded{
          [&](const copula::Independence&) { independence(); },
          [&](const copula::Comonotone&) { comonotone(); },
          [&](const copula::Clayton& c) {
            // Conditional distribution method.
            const double theta = c.theta;
            for (std::size_t i = 0; i < spec.n; ++i) {
              const double u = rng.uniform_open();
              const double t = rng.uniform_open();
              const double w =
                  (std::pow(t, -theta / (1.0 + theta)) - 1.0) * std::pow(u, -theta) + 1.0;
              out.u[i] = u;
              out.v[i] = open_unit(std::pow(w, -1.0 / theta));
            }
          },
          [&](const copula::GumbelSurvival& c) {
            if (c.theta == 1.0) {
              independence();
              return;
            }
            // Marshall-Olkin frailty construction of the Gumbel copula,
            // then reflected to move its upper tail dependence to the lower
            // tail.
            const double alpha = 1.0 / c.theta;
            for (std::size_t i = 0; i < spec.n; ++i) {
              const double s = positive_stable(rng, alpha);
              const double e1 = rng.exponential();
              const double e2 = rng.exponential();
              // 1 - exp(-x) through expm1 keeps the reflected tail accurate.
              out.u[i] = open_unit(-std::expm1(-std::pow(e1 / s, alpha)));
              out.v[i] = open_unit(-std::expm1(-std::pow(e2 / s, alpha)));
            }
          },
          [&](const copula::Gaussian& c) {
            if (c.rho == 1.0) {
              comonotone();
              return;
            }
            const double tail = std::sqrt(1.0 - c.rho * c.rho);
            for (std::size_t i = 0; i < spec.n; ++i) {
              const double z1 = rng.normal();
              const double z2 = rng.normal();
              out.u[i] = open_unit(normal_cdf(z1));
              out.v[i] = open_unit(normal_cdf(c.rho * z1 + tail * z2));
            }
          },
      },
      spec.family);
  return out;
}

TailDependenceFunction analytic_tdf(const CopulaFamily& fam, std::size_t m) {
  check_family(fam);
  return std::visit(
      Overloaded{
          [&](const copula::Independence&) { return zero_tdf(m); },
          [&](const copula::Comonotone&) { return comonotone_tdf(m); },
          [&](const copula::Clayton& c) {
            return from_parametric(family::Clayton{c.theta}, m);
          },
          [&](const copula::GumbelSurvival& c) {
            std::vector<double> values(m + 1);
            for (std::size_t i = 0; i <= m; ++i) {
              const double s = static_cast<double>(i) / static_cast<double>(m);
              const double norm = std::pow(
                  std::pow(s, c.theta) + std::pow(1.0 - s, c.theta), 1.0 / c.theta);
              values[i] = std::max(0.0, 1.0 - norm);
            }
            return make_tdf(values, true);
          },
          [&](const copula::Gaussian& c) {
            return c.rho == 1.0 ? comonotone_tdf(m) : zero_tdf(m);
          },
      },
      fam);
}

}  // namespace taildep
