#include "taildep/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "taildep/error.hpp"

namespace taildep {

std::string_view to_string(Tail tail) {
  return tail == Tail::Upper ? "upper" : "lower";
}

Tail parse_tail(std::string_view text) {
  if (text == "lower") return Tail::Lower;
  if (text == "upper") return Tail::Upper;
  fail(ErrorKind::Config,
       "tail must be 'lower' or 'upper', got '" + std::string(text) + "'");
}

std::size_t default_threshold(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (k * k > n) --k;
  while ((k + 1) * (k + 1) <= n) ++k;
  return std::max<std::size_t>(k, 1);
}

std::vector<std::size_t> rank_series(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<std::size_t> rank(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
  return rank;
}

RankedSample ranks(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    fail(ErrorKind::Data, "x and y must have the same length (" +
                              std::to_string(x.size()) + " vs " +
                              std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) fail(ErrorKind::Data, "need at least 2 observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      fail(ErrorKind::Data,
           "non-finite observation at index " + std::to_string(i));
    }
  }
  return {rank_series(x), rank_series(y), TiePolicy::StableOrder};
}

namespace {

std::size_t resolve_k(const EstimatorConfig& cfg, std::size_t n) {
  const std::size_t k = cfg.k == 0 ? default_threshold(n) : cfg.k;
  if (k > n) {
    fail(ErrorKind::Config, "threshold k = " + std::to_string(k) +
                                " exceeds sample size " + std::to_string(n));
  }
  return k;
}

std::size_t oriented(std::size_t rank, std::size_t n, Tail tail) {
  return tail == Tail::Upper ? n + 1 - rank : rank;
}

}  // namespace

double empirical_tail_copula(const RankedSample& sample, std::size_t k,
                             double x, double y, Tail tail) {
  const std::size_t n = sample.size();
  if (k == 0 || k > n) {
    fail(ErrorKind::Config, "threshold k must satisfy 1 <= k <= n");
  }
  if (!(x >= 0.0) || !(y >= 0.0)) {
    fail(ErrorKind::Domain, "tail copula arguments must be >= 0");
  }
  const double kx = static_cast<double>(k) * x;
  const double ky = static_cast<double>(k) * y;
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto rx = static_cast<double>(oriented(sample.rank_x[j], n, tail));
    const auto ry = static_cast<double>(oriented(sample.rank_y[j], n, tail));
    if (rx <= kx && ry <= ky) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(k);
}

TailDependenceFunction empirical_tdf(const RankedSample& sample,
                                     const EstimatorConfig& cfg) {
  const std::size_t n = sample.size();
  const std::size_t k = resolve_k(cfg, n);
  const std::size_t m = cfg.grid_size;
  if (m < 2) fail(ErrorKind::Config, "grid size must be >= 2");

  // Only observations with both ranks <= k can ever be counted.
  std::vector<std::pair<std::size_t, std::size_t>> tail_points;
  tail_points.reserve(k);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t rx = oriented(sample.rank_x[j], n, cfg.tail);
    const std::size_t ry = oriented(sample.rank_y[j], n, cfg.tail);
    if (rx <= k && ry <= k) tail_points.emplace_back(rx, ry);
  }

  std::vector<double> values(m + 1, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    const std::size_t limit_x = k * i;
    const std::size_t limit_y = k * (m - i);
    std::size_t count = 0;
    for (const auto& [rx, ry] : tail_points) {
      if (rx * m <= limit_x && ry * m <= limit_y) ++count;
    }
    values[i] = static_cast<double>(count) / static_cast<double>(k);
  }
  return make_tdf(values, false);
}

std::size_t window_count(std::size_t n, std::size_t window, std::size_t step) {
  if (step == 0) fail(ErrorKind::Config, "window step must be >= 1");
  if (window == 0) fail(ErrorKind::Config, "window length must be >= 1");
  if (window > n) {
    fail(ErrorKind::Data, "window length " + std::to_string(window) +
                              " exceeds series length " + std::to_string(n));
  }
  return (n - window) / step + 1;
}

RollingResult rolling_estimate(std::span<const double> x,
                               std::span<const double> y, std::size_t window,
                               std::size_t step, const EstimatorConfig& cfg,
                               std::size_t threads) {
  if (x.size() != y.size()) {
    fail(ErrorKind::Data, "x and y must have the same length");
  }
  const std::size_t count = window_count(x.size(), window, step);
  EstimatorConfig window_cfg = cfg;
  window_cfg.k = resolve_k(cfg, window);

  std::vector<std::optional<TailDependenceFunction>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) try {
      const std::size_t start = w * step;
      const auto wx = x.subspan(start, window);
      const auto wy = y.subspan(start, window);
      const bool has_nan =
          std::any_of(wx.begin(), wx.end(), [](double v) { return std::isnan(v); }) ||
          std::any_of(wy.begin(), wy.end(), [](double v) { return std::isnan(v); });
      if (has_nan) continue;
      slots[w] = empirical_tdf(ranks(wx, wy), window_cfg);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, count);
  if (threads == 1) {
    work(0, count);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  RollingResult result;
  result.estimates.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    if (slots[w]) {
      result.estimates.push_back({w * step, std::move(*slots[w])});
    } else {
      result.skipped.push_back(w * step);
    }
  }
  return result;
}

}  // namespace taildep
