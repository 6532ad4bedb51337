#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taildep/panel.hpp"

namespace taildep {

/// Quantile by linear interpolation of order statistics: position
/// h = (n - 1) q on the sorted sample (0-based). Requires a nonempty sample.
double quantile(std::span<const double> values, double q);

double mean(std::span<const double> values);
double median(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for a single value.
double standard_deviation(std::span<const double> values);

/// Per-series statistics, in the row order of the summary table.
struct SeriesStats {
  double mean;
  double median;
  double sd;
  double min;
  double max;
  double q05;
  double q95;
};

inline constexpr std::array<std::string_view, 7> kSeriesStatLabels = {
    "Mean", "Median", "St.dev.", "Minimum", "Maximum", "5%-quantile", "95%-quantile"};

std::array<double, 7> as_array(const SeriesStats& stats);

/// Statistics of the non-missing values. Throws ErrorKind::Data when none.
SeriesStats series_stats(std::span<const double> values);

/// Cross-sectional aggregation of one statistic over many series.
struct CrossSectionStats {
  double q05;
  double q10;
  double mean;
  double median;
  double q90;
  double q95;
};

inline constexpr std::array<std::string_view, 6> kCrossSectionLabels = {
    "5%-quantile", "10%-quantile", "Mean", "Median", "90%-quantile", "95%-quantile"};

std::array<double, 6> as_array(const CrossSectionStats& stats);
CrossSectionStats cross_section_stats(std::span<const double> values);

struct SummaryTable {
  std::vector<std::string> tickers;
  std::vector<SeriesStats> series;
  /// Benchmark series reported separately and left out of the aggregation.
  std::string benchmark;
  /// aggregates[i] aggregates statistic kSeriesStatLabels[i].
  std::array<CrossSectionStats, 7> aggregates;
};

/// Per-ticker statistics and their cross-sectional aggregates. When
/// `benchmark` names a ticker it is excluded from the aggregates.
SummaryTable summary_stats(const ReturnPanel& panel, std::string_view benchmark = {});

}  // namespace taildep
