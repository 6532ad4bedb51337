#include "taildep/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "taildep/csv.hpp"
#include "taildep/envelope.hpp"
#include "taildep/error.hpp"
#include "taildep/serialize.hpp"
#include "taildep/version.hpp"

namespace taildep {

namespace fs = std::filesystem;

std::array<double, kPairMeasureCount> pair_measures(const TailDependenceFunction& tdf,
                                                    Normalization norm) {
  std::array<double, kPairMeasureCount> out{};
  out[kTdc] = tdc(tdf).value;
  out[kL1] = average_tail_dependence(tdf, norm).value;
  out[kLinf] = max_tail_dependence(tdf, norm).value;
  out[kSpearmanEv] = spearman_ev(tdf).value;
  out[kExtremalDep] = extremal_dependence_coefficient(tdf).value;
  return out;
}

PairReport run_pair(const ReturnPanel& returns, std::string_view ticker_a,
                    std::string_view ticker_b, const PipelineConfig& cfg) {
  const auto a = returns.column(ticker_a);
  const auto b = returns.column(ticker_b);

  std::size_t first = returns.rows();
  std::size_t last = 0;
  for (std::size_t r = 0; r < returns.rows(); ++r) {
    if (std::isnan(a[r]) || std::isnan(b[r])) continue;
    first = std::min(first, r);
    last = r;
  }
  if (first == returns.rows() || last + 1 - first < cfg.window) {
    fail(ErrorKind::Data, "insufficient overlap between " + std::string(ticker_a) + " and " +
                              std::string(ticker_b) + " for a window of " +
                              std::to_string(cfg.window));
  }
  const std::span<const double> x(a.data() + first, last + 1 - first);
  const std::span<const double> y(b.data() + first, last + 1 - first);

  PairReport report;
  report.ticker_a = std::string(ticker_a);
  report.ticker_b = std::string(ticker_b);
  report.k = cfg.estimator.k == 0 ? default_threshold(cfg.window) : cfg.estimator.k;

  RollingResult rolling =
      rolling_estimate(x, y, cfg.window, cfg.step, cfg.estimator, cfg.threads);
  report.windows.reserve(rolling.estimates.size());
  for (auto& estimate : rolling.estimates) {
    WindowRecord record;
    record.end_date = returns.dates[first + estimate.start + cfg.window - 1];
    record.start = estimate.start;
    TailDependenceFunction measured =
        cfg.project ? least_concave_majorant(estimate.tdf) : std::move(estimate.tdf);
    record.measures = pair_measures(measured, cfg.normalization);
    const double lambda = std::clamp(record.measures[kTdc], 0.0, 1.0);
    std::tie(record.linf_min, record.linf_max) =
        linf_range_given_tdc(lambda, cfg.normalization);
    if (cfg.store_tdf) record.tdf = std::move(measured);
    report.windows.push_back(std::move(record));
  }
  for (std::size_t start : rolling.skipped) {
    report.skipped.push_back(returns.dates[first + start + cfg.window - 1]);
  }
  return report;
}

CrossSection cross_section(const std::vector<PairReport>& reports) {
  if (reports.empty()) fail(ErrorKind::Data, "cross section needs at least one report");

  std::vector<Date> dates;
  for (const auto& w : reports.front().windows) dates.push_back(w.end_date);
  std::string offenders;
  for (const auto& report : reports) {
    bool aligned = report.windows.size() == dates.size();
    for (std::size_t i = 0; aligned && i < dates.size(); ++i) {
      aligned = report.windows[i].end_date == dates[i];
    }
    if (!aligned) {
      offenders += (offenders.empty() ? "" : ", ") + report.ticker_a + "/" + report.ticker_b;
    }
  }
  if (!offenders.empty()) {
    fail(ErrorKind::Alignment, "window dates differ from " + reports.front().ticker_a + "/" +
                                   reports.front().ticker_b + " for: " + offenders);
  }
  if (dates.empty()) fail(ErrorKind::Data, "reports contain no windows");

  CrossSection cs;
  cs.dates = dates;
  std::vector<double> values(reports.size());
  for (std::size_t m = 0; m < kPairMeasureCount; ++m) {
    cs.per_date[m].reserve(dates.size());
    for (std::size_t d = 0; d < dates.size(); ++d) {
      for (std::size_t p = 0; p < reports.size(); ++p) {
        values[p] = reports[p].windows[d].measures[m];
      }
      cs.per_date[m].push_back(series_stats(values));
    }

    std::array<std::vector<double>, 7> by_stat;
    std::vector<double> series(dates.size());
    for (const auto& report : reports) {
      for (std::size_t d = 0; d < dates.size(); ++d) series[d] = report.windows[d].measures[m];
      const auto stats = as_array(series_stats(series));
      for (std::size_t s = 0; s < stats.size(); ++s) by_stat[s].push_back(stats[s]);
    }
    for (std::size_t s = 0; s < by_stat.size(); ++s) {
      cs.table[m][s] = cross_section_stats(by_stat[s]);
    }
  }
  return cs;
}

void write_pair_csv(std::ostream& out, const PairReport& report) {
  std::vector<std::string> fields{"date", "start"};
  for (auto name : kPairMeasureNames) fields.emplace_back(name);
  fields.emplace_back("linf_min");
  fields.emplace_back("linf_max");
  csv::write_row(out, fields);
  for (const auto& w : report.windows) {
    fields.clear();
    fields.push_back(format_date(w.end_date));
    fields.push_back(std::to_string(w.start));
    for (double v : w.measures) fields.push_back(csv::format_double(v));
    fields.push_back(csv::format_double(w.linf_min));
    fields.push_back(csv::format_double(w.linf_max));
    csv::write_row(out, fields);
  }
}

namespace {

// One row per window: end date, then the TDF samples; the header holds the
// grid points s_i = i / m.
void write_tdf_csv(std::ostream& out, const PairReport& report) {
  std::vector<std::string> header{"date"};
  const std::size_t m = report.windows.empty() || !report.windows.front().tdf
                            ? 0
                            : report.windows.front().tdf->grid_size();
  for (std::size_t i = 0; i <= m && m > 0; ++i) {
    header.push_back(csv::format_double(static_cast<double>(i) / static_cast<double>(m)));
  }
  csv::write_row(out, header);
  for (const auto& w : report.windows) {
    if (!w.tdf) continue;
    std::vector<std::string> fields{format_date(w.end_date)};
    for (double v : w.tdf->values()) fields.push_back(csv::format_double(v));
    csv::write_row(out, fields);
  }
}

}  // namespace

void write_cross_section_csv(std::ostream& out, const CrossSection& cs, std::size_t measure) {
  csv::write_row(out, std::vector<std::string>{"date", "mean", "median", "sd", "min", "max",
                                               "q05", "q95"});
  for (std::size_t d = 0; d < cs.dates.size(); ++d) {
    std::vector<std::string> fields{format_date(cs.dates[d])};
    for (double v : as_array(cs.per_date[measure][d])) fields.push_back(csv::format_double(v));
    csv::write_row(out, fields);
  }
}

std::string cross_section_table_json(const CrossSection& cs) {
  Json out;
  for (std::size_t m = 0; m < kPairMeasureCount; ++m) {
    Json measure;
    for (std::size_t s = 0; s < kSeriesStatLabels.size(); ++s) {
      Json row;
      const auto values = as_array(cs.table[m][s]);
      for (std::size_t c = 0; c < kCrossSectionLabels.size(); ++c) {
        row[std::string(kCrossSectionLabels[c])] = values[c];
      }
      measure[std::string(kSeriesStatLabels[s])] = std::move(row);
    }
    out[std::string(kPairMeasureNames[m])] = std::move(measure);
  }
  return out.dump(2) + "\n";
}

std::string summary_table_json(const SummaryTable& table) {
  Json out;
  out["benchmark"] = table.benchmark;
  Json series;
  for (std::size_t t = 0; t < table.tickers.size(); ++t) {
    Json row;
    const auto values = as_array(table.series[t]);
    for (std::size_t s = 0; s < kSeriesStatLabels.size(); ++s) {
      row[std::string(kSeriesStatLabels[s])] = values[s];
    }
    series[table.tickers[t]] = std::move(row);
  }
  out["series"] = std::move(series);
  Json aggregates;
  for (std::size_t s = 0; s < kSeriesStatLabels.size(); ++s) {
    Json row;
    const auto values = as_array(table.aggregates[s]);
    for (std::size_t c = 0; c < kCrossSectionLabels.size(); ++c) {
      row[std::string(kCrossSectionLabels[c])] = values[c];
    }
    aggregates[std::string(kSeriesStatLabels[s])] = std::move(row);
  }
  out["cross_section"] = std::move(aggregates);
  return out.dump(2) + "\n";
}

std::string report_request_json(const ReportRequest& request) {
  const auto& cfg = request.config;
  Json out;
  out["prices"] = request.prices_path;
  out["format"] = request.format == PriceFormat::Long ? "long" : "wide";
  out["input_is_returns"] = request.input_is_returns;
  out["benchmark"] = request.benchmark;
  out["tickers"] = request.tickers;
  out["out_dir"] = request.out_dir;
  out["grid"] = cfg.estimator.grid_size;
  out["k"] = cfg.estimator.k;
  out["tail"] = to_string(cfg.estimator.tail);
  out["window"] = cfg.window;
  out["step"] = cfg.step;
  out["normalization"] = to_string(cfg.normalization);
  out["project"] = cfg.project;
  out["store_tdf"] = cfg.store_tdf;
  return out.dump(2);
}

ReportRequest parse_report_request(std::string_view text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Data, std::string("invalid JSON: ") + e.what());
  }
  if (json.contains("request")) json = json.at("request");
  ReportRequest request;
  try {
    request.prices_path = json.at("prices").get<std::string>();
    const auto format = json.value("format", std::string("wide"));
    if (format != "wide" && format != "long") fail(ErrorKind::Config, "format must be wide or long");
    request.format = format == "long" ? PriceFormat::Long : PriceFormat::Wide;
    request.input_is_returns = json.value("input_is_returns", false);
    request.benchmark = json.value("benchmark", std::string());
    request.tickers = json.value("tickers", std::vector<std::string>{});
    request.out_dir = json.value("out_dir", std::string("taildep_report"));
    auto& cfg = request.config;
    cfg.estimator.grid_size = json.value("grid", kDefaultGridSize);
    cfg.estimator.k = json.value("k", std::size_t{0});
    cfg.estimator.tail = parse_tail(json.value("tail", std::string("lower")));
    cfg.window = json.value("window", std::size_t{500});
    cfg.step = json.value("step", std::size_t{1});
    cfg.normalization = parse_normalization(json.value("normalization", std::string("doubled")));
    cfg.project = json.value("project", true);
    cfg.store_tdf = json.value("store_tdf", false);
    cfg.threads = std::max<std::size_t>(json.value("threads", std::size_t{1}), 1);
  } catch (const Json::exception& e) {
    fail(ErrorKind::Config, std::string("invalid report request: ") + e.what());
  }
  return request;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

template <class Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

}  // namespace

std::string run_report(const ReportRequest& request) {
  const ReturnPanel loaded = load_prices(request.prices_path, request.format);
  const ReturnPanel returns = request.input_is_returns ? loaded : log_returns(loaded);
  if (returns.cols() < 2) fail(ErrorKind::Data, "report needs at least two tickers");

  const std::string benchmark =
      request.benchmark.empty() ? returns.tickers.front() : request.benchmark;
  returns.column_index(benchmark);
  std::vector<std::string> partners = request.tickers;
  if (partners.empty()) {
    for (const auto& t : returns.tickers) {
      if (t != benchmark) partners.push_back(t);
    }
  }
  if (partners.empty()) fail(ErrorKind::Data, "no tickers to pair with " + benchmark);

  const fs::path root(request.out_dir);
  fs::create_directories(root / "pairs");
  fs::create_directories(root / "cross_section");

  std::vector<std::string> files;
  auto emit = [&](const fs::path& relative, const std::string& content) {
    write_file(root / relative, content);
    files.push_back(relative.generic_string());
  };

  emit("returns.csv", render([&](std::ostream& o) { write_panel_csv(o, returns); }));
  emit("summary_stats.json", summary_table_json(summary_stats(returns, benchmark)));

  std::vector<PairReport> reports;
  Json pairs = Json::array();
  for (const auto& partner : partners) {
    PairReport report = run_pair(returns, benchmark, partner, request.config);
    const std::string stem = benchmark + "__" + partner;
    emit(fs::path("pairs") / (stem + ".csv"),
         render([&](std::ostream& o) { write_pair_csv(o, report); }));
    if (request.config.store_tdf) {
      emit(fs::path("pairs") / (stem + "_tdf.csv"),
           render([&](std::ostream& o) { write_tdf_csv(o, report); }));
    }
    Json entry;
    entry["a"] = report.ticker_a;
    entry["b"] = report.ticker_b;
    entry["k"] = report.k;
    entry["windows"] = report.windows.size();
    std::vector<std::string> skipped;
    for (const auto& d : report.skipped) skipped.push_back(format_date(d));
    entry["skipped"] = skipped;
    pairs.push_back(std::move(entry));
    reports.push_back(std::move(report));
  }

  const CrossSection cs = cross_section(reports);
  for (std::size_t m = 0; m < kPairMeasureCount; ++m) {
    emit(fs::path("cross_section") / (std::string(kPairMeasureNames[m]) + ".csv"),
         render([&](std::ostream& o) { write_cross_section_csv(o, cs, m); }));
  }
  emit("measure_summary.json", cross_section_table_json(cs));

  Json manifest;
  manifest["tool"] = "taildep";
  manifest["version"] = kVersion;
  manifest["request"] = Json::parse(report_request_json(request));
  manifest["benchmark"] = benchmark;
  manifest["pairs"] = std::move(pairs);
  manifest["files"] = files;
  const std::string text = manifest.dump(2) + "\n";
  write_file(root / "manifest.json", text);
  return text;
}

}  // namespace taildep
