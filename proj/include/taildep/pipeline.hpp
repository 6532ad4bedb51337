#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taildep/estimator.hpp"
#include "taildep/measures.hpp"
#include "taildep/panel.hpp"
#include "taildep/stats.hpp"

namespace taildep {

struct PipelineConfig {
  EstimatorConfig estimator;  // k = 0 selects floor(sqrt(window))
  std::size_t window = 500;
  std::size_t step = 1;
  Normalization normalization = Normalization::Doubled;
  bool project = true;      // measure the least concave majorant
  bool store_tdf = false;   // keep every window's TDF in the report
  std::size_t threads = 1;
};

/// Per-window measure series; indices follow kPairMeasureNames.
enum PairMeasure : std::size_t { kTdc, kL1, kLinf, kSpearmanEv, kExtremalDep, kPairMeasureCount };

inline constexpr std::array<std::string_view, kPairMeasureCount> kPairMeasureNames = {
    "tdc", "l1", "linf", "spearman_ev", "extremal_dep"};

struct WindowRecord {
  Date end_date;
  std::size_t start;  // row of the window start in the pair's aligned span
  std::array<double, kPairMeasureCount> measures;
  double linf_min;  // attainable L-infinity range given the window's TDC
  double linf_max;
  std::optional<TailDependenceFunction> tdf;  // the measured TDF
};

struct PairReport {
  std::string ticker_a;
  std::string ticker_b;
  std::size_t k;
  std::vector<WindowRecord> windows;
  std::vector<Date> skipped;  // end dates of windows dropped for missing data
};

/// Rolling estimation and all measures for one pair. Both series are taken
/// on the span from the first to the last date where both are present;
/// windows containing a missing value are skipped. Throws ErrorKind::Data if
/// that span is shorter than the window.
PairReport run_pair(const ReturnPanel& returns, std::string_view ticker_a,
                    std::string_view ticker_b, const PipelineConfig& cfg);

/// Measures of one TDF as reported per window (projected or raw as given).
std::array<double, kPairMeasureCount> pair_measures(const TailDependenceFunction& tdf,
                                                    Normalization norm);

struct CrossSection {
  std::vector<Date> dates;
  /// per_date[measure][date] holds SeriesStats across pairs.
  std::array<std::vector<SeriesStats>, kPairMeasureCount> per_date;
  /// table[measure][stat] aggregates the per-pair time-series statistic
  /// kSeriesStatLabels[stat] across pairs.
  std::array<std::array<CrossSectionStats, 7>, kPairMeasureCount> table;
};

/// Throws ErrorKind::Alignment naming the pairs whose window dates differ
/// from the first report.
CrossSection cross_section(const std::vector<PairReport>& reports);

void write_pair_csv(std::ostream& out, const PairReport& report);
void write_cross_section_csv(std::ostream& out, const CrossSection& cs, std::size_t measure);
/// Summary keyed measure -> statistic -> cross-sectional aggregate.
std::string cross_section_table_json(const CrossSection& cs);
std::string summary_table_json(const SummaryTable& table);

struct ReportRequest {
  std::string prices_path;
  PriceFormat format = PriceFormat::Wide;
  bool input_is_returns = false;
  std::string benchmark;  // empty: first ticker
  std::vector<std::string> tickers;  // empty: every non-benchmark ticker
  std::string out_dir;
  PipelineConfig config;
};

/// The request as stored under "request" in manifest.json, and back.
std::string report_request_json(const ReportRequest& request);
ReportRequest parse_report_request(std::string_view json);

/// Full run: returns, per-ticker summary statistics, per-pair reports, cross
/// section and manifest.json under out_dir. Identical requests produce
/// byte-identical files. Returns the manifest text.
std::string run_report(const ReportRequest& request);

}  // namespace taildep
