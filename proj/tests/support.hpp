#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "taildep/tdf.hpp"

namespace taildep::testing {

inline double frechet(double s) { return std::min(s, 1.0 - s); }

inline std::vector<double> sample_grid(std::size_t m, auto&& f) {
  std::vector<double> values(m + 1);
  for (std::size_t i = 0; i <= m; ++i) values[i] = f(static_cast<double>(i) / static_cast<double>(m));
  return values;
}

// Random admissible concave function as a closure: a convex mixture of
// concave building blocks, each bounded by min(s, 1 - s), scaled into (0, 1].
class RandomConcave {
 public:
  explicit RandomConcave(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> weight(1.0);
    for (int j = 0; j < 4; ++j) w_[j] = weight(rng);
    const double total = w_[0] + w_[1] + w_[2] + w_[3];
    for (double& w : w_) w /= total;
    a_ = 0.05 + 3.0 * unit(rng);
    b_ = 0.05 + 3.0 * unit(rng);
    c_ = unit(rng);
    theta_ = 0.2 + 5.0 * unit(rng);
    line_lo_ = unit(rng);
    line_hi_ = unit(rng);
    scale_ = 0.05 + 0.95 * unit(rng);
  }

  double operator()(double s) const {
    const double f = frechet(s);
    const double tent = std::min(std::min(a_ * s, b_ * (1.0 - s)), f);
    const double parabola = c_ * s * (1.0 - s);
    double clayton = 0.0;
    if (s > 0.0 && s < 1.0) {
      clayton = std::pow(std::pow(s, -theta_) + std::pow(1.0 - s, -theta_), -1.0 / theta_);
    }
    const double line = std::min(line_lo_ * (1.0 - s) + line_hi_ * s, f);
    return scale_ * (w_[0] * tent + w_[1] * parabola + w_[2] * clayton + w_[3] * line);
  }

 private:
  double w_[4];
  double a_, b_, c_, theta_, line_lo_, line_hi_, scale_;
};

inline TailDependenceFunction random_tdf(std::mt19937_64& rng, std::size_t m) {
  return make_tdf(sample_grid(m, RandomConcave(rng)), true);
}

// A pair with first <= second pointwise: either a scaled-down copy or the
// minimum with an independent concave function.
inline std::pair<TailDependenceFunction, TailDependenceFunction> random_ordered_pair(
    std::mt19937_64& rng, std::size_t m) {
  const RandomConcave upper(rng);
  const RandomConcave other(rng);
  const double shrink = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const bool by_min = std::bernoulli_distribution(0.5)(rng);
  auto lower = [&](double s) { return by_min ? std::min(upper(s), other(s)) : shrink * upper(s); };
  return {make_tdf(sample_grid(m, lower), true), make_tdf(sample_grid(m, upper), true)};
}

inline TailDependenceFunction random_symmetric_tdf(std::mt19937_64& rng, std::size_t m) {
  const RandomConcave f(rng);
  auto values = sample_grid(m, f);
  for (std::size_t i = 0; i <= m / 2; ++i) {
    values[i] = values[m - i] = 0.5 * (values[i] + values[m - i]);
  }
  return make_tdf(values, true);
}

}  // namespace taildep::testing
