#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "taildep/tdf.hpp"

namespace taildep {

enum class TiePolicy { StableOrder };
enum class Tail { Lower, Upper };

std::string_view to_string(Tail tail);
Tail parse_tail(std::string_view text);

/// Paired marginal ranks, 1 = smallest.
struct RankedSample {
  std::vector<std::size_t> rank_x;
  std::vector<std::size_t> rank_y;
  TiePolicy tie_policy = TiePolicy::StableOrder;

  std::size_t size() const { return rank_x.size(); }
};

struct EstimatorConfig {
  std::size_t k = 0;  // tail sample size; 0 selects floor(sqrt(n))
  std::size_t grid_size = kDefaultGridSize;
  Tail tail = Tail::Lower;
};

/// floor(sqrt(n)), at least 1.
std::size_t default_threshold(std::size_t n);

/// Marginal ranks of one series; ties are broken by index order.
std::vector<std::size_t> rank_series(std::span<const double> values);

/// Throws ErrorKind::Data on length mismatch, n < 2 or non-finite entries.
RankedSample ranks(std::span<const double> x, std::span<const double> y);

/// Empirical tail copula (1/k) * #{j : R^X_j <= k x, R^Y_j <= k y} at a
/// point of the quadrant, with upper-tail ranks reflected to n + 1 - R.
double empirical_tail_copula(const RankedSample& sample, std::size_t k,
                             double x, double y, Tail tail = Tail::Lower);

/// Rank estimator of the simplex TDF on the configured grid. Thresholds are
/// evaluated in integer arithmetic (R * m <= k * i), and the boundary samples
/// are set to zero. The result is Empirical.
TailDependenceFunction empirical_tdf(const RankedSample& sample,
                                     const EstimatorConfig& cfg);

struct WindowEstimate {
  std::size_t start;  // first index of [start, start + window)
  TailDependenceFunction tdf;
};

struct RollingResult {
  std::vector<WindowEstimate> estimates;
  /// Window starts dropped because the window held a NaN.
  std::vector<std::size_t> skipped;
};

std::size_t window_count(std::size_t n, std::size_t window, std::size_t step);

/// Estimates one TDF per window [t, t + window), t = 0, step, 2 step, ...
/// Windows may be evaluated on `threads` workers; output order and values do
/// not depend on the thread count. A zero k in cfg means floor(sqrt(window)).
RollingResult rolling_estimate(std::span<const double> x,
                               std::span<const double> y, std::size_t window,
                               std::size_t step, const EstimatorConfig& cfg,
                               std::size_t threads = 1);

}  // namespace taildep
