#include "taildep/stats.hpp"

#include <algorithm>
#include <cmath>

#include "taildep/error.hpp"

namespace taildep {

namespace {

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void require_nonempty(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::Data, "statistic of an empty sample");
}

}  // namespace

double quantile(std::span<const double> values, double q) {
  require_nonempty(values);
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorKind::Domain, "quantile level must lie in [0, 1]");
  return sorted_quantile(sorted_copy(values), q);
}

// Sums are taken around the first value so a constant sample has mean equal
// to that value and standard deviation exactly zero.
double mean(std::span<const double> values) {
  require_nonempty(values);
  const double shift = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  return shift + sum / static_cast<double>(values.size());
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

double standard_deviation(std::span<const double> values) {
  require_nonempty(values);
  if (values.size() == 1) return 0.0;
  const double shift = values.front();
  const double mu = mean(values) - shift;
  double ss = 0.0;
  for (double v : values) ss += (v - shift - mu) * (v - shift - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::array<double, 7> as_array(const SeriesStats& s) {
  return {s.mean, s.median, s.sd, s.min, s.max, s.q05, s.q95};
}

std::array<double, 6> as_array(const CrossSectionStats& s) {
  return {s.q05, s.q10, s.mean, s.median, s.q90, s.q95};
}

SeriesStats series_stats(std::span<const double> values) {
  std::vector<double> present;
  present.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) present.push_back(v);
  }
  if (present.empty()) fail(ErrorKind::Data, "series has no observations");
  const auto sorted = sorted_copy(present);
  return {
      mean(present),
      sorted_quantile(sorted, 0.5),
      standard_deviation(present),
      sorted.front(),
      sorted.back(),
      sorted_quantile(sorted, 0.05),
      sorted_quantile(sorted, 0.95),
  };
}

CrossSectionStats cross_section_stats(std::span<const double> values) {
  const auto sorted = sorted_copy(values);
  require_nonempty(values);
  return {
      sorted_quantile(sorted, 0.05), sorted_quantile(sorted, 0.10), mean(values),
      sorted_quantile(sorted, 0.50), sorted_quantile(sorted, 0.90),
      sorted_quantile(sorted, 0.95),
  };
}

SummaryTable summary_stats(const ReturnPanel& panel, std::string_view benchmark) {
  if (panel.cols() == 0 || panel.rows() == 0) fail(ErrorKind::Data, "empty panel");
  if (!benchmark.empty()) panel.column_index(benchmark);

  SummaryTable table;
  table.tickers = panel.tickers;
  table.benchmark = std::string(benchmark);
  for (const auto& ticker : panel.tickers) {
    table.series.push_back(series_stats(panel.column(ticker)));
  }

  std::array<std::vector<double>, 7> by_stat;
  for (std::size_t c = 0; c < panel.cols(); ++c) {
    if (panel.tickers[c] == benchmark) continue;
    const auto values = as_array(table.series[c]);
    for (std::size_t i = 0; i < values.size(); ++i) by_stat[i].push_back(values[i]);
  }
  if (by_stat[0].empty()) {
    // Only the benchmark is present; aggregate it rather than nothing.
    for (std::size_t i = 0; i < by_stat.size(); ++i) {
      by_stat[i].push_back(as_array(table.series[0])[i]);
    }
  }
  for (std::size_t i = 0; i < by_stat.size(); ++i) {
    table.aggregates[i] = cross_section_stats(by_stat[i]);
  }
  return table;
}

}  // namespace taildep
