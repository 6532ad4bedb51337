#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "taildep/tdf.hpp"

namespace taildep {

namespace copula {
struct Independence {};
struct Comonotone {};
struct Clayton {
  double theta;  // > 0
};
/// Survival (rotated by 180 degrees) Gumbel copula; lower tail dependent.
struct GumbelSurvival {
  double theta;  // >= 1
};
struct Gaussian {
  double rho;  // in [-1, 1]
};
}  // namespace copula

using CopulaFamily = std::variant<copula::Independence, copula::Comonotone,
                                  copula::Clayton, copula::GumbelSurvival,
                                  copula::Gaussian>;

struct CopulaSpec {
  CopulaFamily family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Parses "independence", "comonotone", "clayton", "gumbel_survival",
/// "gaussian"; `param` is theta or rho.
CopulaFamily make_copula_family(std::string_view name, double param);

struct PseudoSample {
  std::vector<double> u;
  std::vector<double> v;
};

/// n pairs in (0, 1)^2 from the xoshiro256** stream of `seed`.
PseudoSample sample(const CopulaSpec& spec);

/// Lower tail dependence function of the family on a grid of size m.
TailDependenceFunction analytic_tdf(const CopulaFamily& family,
                                    std::size_t m = kDefaultGridSize);

}  // namespace taildep
