// Command-line front end. Uses only the C interface of libtaildep.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taildep/taildep.h"

namespace {

namespace fs = std::filesystem;

struct Failure {
  td_status status;
  std::string message;
};

void check(td_status status) {
  if (status != TD_OK) throw Failure{status, td_last_error()};
}

struct StringDeleter {
  void operator()(char* p) const { td_string_free(p); }
};
struct TdfDeleter {
  void operator()(td_tdf* p) const { td_tdf_free(p); }
};
struct PanelDeleter {
  void operator()(td_panel* p) const { td_panel_free(p); }
};
struct BufferDeleter {
  void operator()(double* p) const { td_free(p); }
};
using String = std::unique_ptr<char, StringDeleter>;
using Tdf = std::unique_ptr<td_tdf, TdfDeleter>;
using Panel = std::unique_ptr<td_panel, PanelDeleter>;
using Buffer = std::unique_ptr<double, BufferDeleter>;

struct Globals {
  std::size_t grid = 200;
  std::size_t k = 0;
  std::size_t window = 0;
  std::size_t step = 1;
  std::string normalization;
  std::uint64_t seed = 42;
  std::string out_dir;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{TD_ERR_IO, "cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Explicit --out wins; otherwise default_name under --out-dir; otherwise stdout.
std::string output_path(const Globals& g, const std::string& out, const std::string& default_name) {
  fs::path path;
  if (!out.empty() && out != "-") {
    path = fs::path(out);
    if (path.is_relative() && !g.out_dir.empty()) path = fs::path(g.out_dir) / path;
  } else if (out.empty() && !g.out_dir.empty()) {
    path = fs::path(g.out_dir) / default_name;
  } else {
    return {};
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path.string();
}

void emit(const Globals& g, const std::string& out, const std::string& default_name,
          const std::string& text) {
  const std::string path = output_path(g, out, default_name);
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Failure{TD_ERR_IO, "cannot write '" + path + "'"};
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
  if (!file) throw Failure{TD_ERR_IO, "write failed for '" + path + "'"};
}

Tdf load_tdf(const std::string& path) {
  td_tdf* raw = nullptr;
  check(td_tdf_from_json(read_text(path).c_str(), &raw));
  return Tdf(raw);
}

Panel load_panel(const std::string& path, const std::string& format, bool prices) {
  td_panel* raw = nullptr;
  check(td_panel_load(path.c_str(), format.c_str(), &raw));
  Panel panel(raw);
  if (!prices) return panel;
  td_panel* returns = nullptr;
  check(td_panel_log_returns(panel.get(), &returns));
  return Panel(returns);
}

std::string normalization_or(const Globals& g, const char* fallback) {
  return g.normalization.empty() ? fallback : g.normalization;
}

std::string take(char* raw) { return String(raw).get(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail dependence functions: estimation, ordering, measures and envelopes"};
  app.set_version_flag("--version", std::string(td_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--grid", g.grid, "Grid size m of the simplex discretisation")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  app.add_option("--k", g.k, "Tail sample size (0 = floor(sqrt(n)))");
  app.add_option("--window", g.window, "Rolling window length");
  app.add_option("--step", g.step, "Rolling window step")->check(CLI::PositiveNumber);
  app.add_option("--normalization", g.normalization, "raw or doubled")
      ->check(CLI::IsMember({"raw", "doubled"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out-dir", g.out_dir, "Directory for output files");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Read a price panel and write log returns as CSV");
  std::string ingest_in, ingest_format = "wide", ingest_out;
  ingest->add_option("--prices", ingest_in, "Price CSV")->required();
  ingest->add_option("--format", ingest_format)->check(CLI::IsMember({"wide", "long"}));
  ingest->add_option("--out", ingest_out, "Output CSV (default: stdout or <out-dir>/returns.csv)");

  // stats
  auto* stats = app.add_subcommand("stats", "Summary statistics of a return panel as JSON");
  std::string stats_in, stats_format = "wide", stats_benchmark, stats_out;
  bool stats_prices = false;
  stats->add_option("--input", stats_in, "Return CSV (or prices with --prices)")->required();
  stats->add_option("--format", stats_format)->check(CLI::IsMember({"wide", "long"}));
  stats->add_flag("--prices", stats_prices, "Input holds prices; compute log returns first");
  stats->add_option("--benchmark", stats_benchmark, "Ticker excluded from the aggregates");
  stats->add_option("--out", stats_out);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Empirical TDF from a two-column sample");
  std::string est_in, est_x, est_y, est_tail = "lower", est_out;
  std::size_t est_threads = 1;
  bool est_project = false;
  estimate->add_option("--input", est_in, "CSV with a header row")->required();
  estimate->add_option("--x", est_x, "First column (default: first non-date column)");
  estimate->add_option("--y", est_y, "Second column (default: next non-date column)");
  estimate->add_option("--tail", est_tail)->check(CLI::IsMember({"lower", "upper"}));
  estimate->add_option("--threads", est_threads)->check(CLI::PositiveNumber);
  estimate->add_flag("--project", est_project, "Replace the estimate by its least concave majorant");
  estimate->add_option("--out", est_out);

  // measures
  auto* measures = app.add_subcommand("measures", "Measures of a TDF as JSON");
  std::string meas_in, meas_out;
  double meas_point = std::numeric_limits<double>::quiet_NaN();
  double meas_lp = 2.0;
  bool meas_project = false;
  measures->add_option("--tdf", meas_in, "TDF JSON file ('-' for stdin)")->required();
  measures->add_option("--point", meas_point, "Also evaluate Lambda(s0)");
  measures->add_option("--lp", meas_lp, "Exponent of the L^p norm")->capture_default_str();
  measures->add_flag("--project", meas_project, "Measure the least concave majorant");
  measures->add_option("--out", meas_out);

  // compare
  auto* cmp = app.add_subcommand("compare", "Tail dependence order between two TDFs");
  std::string cmp_first, cmp_second, cmp_out;
  double cmp_tol = -1.0;
  cmp->add_option("--first", cmp_first)->required();
  cmp->add_option("--second", cmp_second)->required();
  cmp->add_option("--tol", cmp_tol, "Comparison tolerance (default 1e-9)");
  cmp->add_option("--out", cmp_out);

  // envelope
  auto* envelope = app.add_subcommand("envelope", "Range of a measure given the TDC");
  double env_tdc = 0.0;
  std::string env_measure = "linf", env_out;
  envelope->add_option("--tdc", env_tdc, "Tail dependence coefficient")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  envelope->add_option("--measure", env_measure, "linf, l1 or point:<s0>")->capture_default_str();
  envelope->add_option("--out", env_out);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Sample a bivariate copula to CSV");
  std::string sim_family, sim_out;
  double sim_param = std::numeric_limits<double>::quiet_NaN();
  std::size_t sim_n = 0;
  simulate->add_option("--family", sim_family)
      ->required()
      ->check(CLI::IsMember({"independence", "comonotone", "clayton", "gumbel_survival",
                             "gaussian"}));
  auto* theta = simulate->add_option("--theta", sim_param, "Clayton or Gumbel parameter");
  simulate->add_option("--rho", sim_param, "Gaussian correlation")->excludes(theta);
  simulate->add_option("--n", sim_n)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_out, "Output CSV (default: stdout or <out-dir>/pairs.csv)");

  // report
  auto* report = app.add_subcommand("report", "Rolling pairwise report over a panel");
  std::string rep_prices, rep_format = "wide", rep_benchmark, rep_manifest, rep_tail = "lower";
  std::vector<std::string> rep_tickers;
  bool rep_returns = false, rep_raw = false, rep_store = false;
  std::size_t rep_threads = 1;
  auto* rep_prices_opt = report->add_option("--prices", rep_prices, "Price (or return) CSV");
  report->add_option("--format", rep_format)->check(CLI::IsMember({"wide", "long"}));
  report->add_option("--tail", rep_tail)->check(CLI::IsMember({"lower", "upper"}));
  report->add_flag("--returns", rep_returns, "Input already holds log returns");
  report->add_option("--benchmark", rep_benchmark, "Ticker paired with every other (default: first)");
  report->add_option("--tickers", rep_tickers, "Partners of the benchmark")->delimiter(',');
  report->add_flag("--raw-measures", rep_raw, "Measure the raw estimates, not their majorants");
  report->add_flag("--store-tdf", rep_store, "Write every window's TDF");
  report->add_option("--threads", rep_threads)->check(CLI::PositiveNumber);
  report->add_option("--manifest", rep_manifest, "Rerun the request stored in a manifest.json")
      ->excludes(rep_prices_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors share the argument status.
    const int code = app.exit(e);
    return code == 0 ? 0 : TD_ERR_ARGUMENT;
  }

  try {
    if (*ingest) {
      Panel panel = load_panel(ingest_in, ingest_format, true);
      char* csv = nullptr;
      check(td_panel_to_csv(panel.get(), &csv));
      emit(g, ingest_out, "returns.csv", take(csv));
    } else if (*stats) {
      Panel panel = load_panel(stats_in, stats_format, stats_prices);
      char* json = nullptr;
      check(td_panel_summary_json(panel.get(), stats_benchmark.c_str(), &json));
      emit(g, stats_out, "summary_stats.json", take(json));
    } else if (*estimate) {
      double* xs = nullptr;
      double* ys = nullptr;
      std::size_t n = 0;
      check(td_csv_columns(est_in.c_str(), est_x.empty() ? nullptr : est_x.c_str(),
                           est_y.empty() ? nullptr : est_y.c_str(), &xs, &ys, &n));
      Buffer bx(xs), by(ys);
      if (g.window > 0) {
        char* json = nullptr;
        check(td_estimate_rolling_json(xs, ys, n, g.window, g.step, g.k, g.grid,
                                       est_tail.c_str(), est_project ? 1 : 0, est_threads,
                                       &json));
        emit(g, est_out, "rolling.json", take(json));
      } else {
        td_tdf* raw = nullptr;
        check(td_estimate(xs, ys, n, g.k, g.grid, est_tail.c_str(), &raw));
        Tdf tdf(raw);
        if (est_project) {
          td_tdf* hull = nullptr;
          check(td_tdf_concave_majorant(tdf.get(), &hull));
          tdf.reset(hull);
        }
        char* json = nullptr;
        check(td_tdf_to_json(tdf.get(), &json));
        emit(g, est_out, "tdf.json", take(json));
      }
    } else if (*measures) {
      Tdf tdf = load_tdf(meas_in);
      if (meas_project) {
        td_tdf* hull = nullptr;
        check(td_tdf_concave_majorant(tdf.get(), &hull));
        tdf.reset(hull);
      }
      char* json = nullptr;
      check(td_measures_json(tdf.get(), normalization_or(g, "raw").c_str(), meas_point, meas_lp,
                             &json));
      emit(g, meas_out, "measures.json", take(json));
    } else if (*cmp) {
      Tdf first = load_tdf(cmp_first);
      Tdf second = load_tdf(cmp_second);
      char* json = nullptr;
      check(td_compare_json(first.get(), second.get(), cmp_tol, &json));
      emit(g, cmp_out, "compare.json", take(json));
    } else if (*envelope) {
      char* json = nullptr;
      check(td_envelope_json(env_tdc, env_measure.c_str(), g.grid,
                             normalization_or(g, "raw").c_str(), &json));
      emit(g, env_out, "envelope.json", take(json));
    } else if (*simulate) {
      if (std::isnan(sim_param)) {
        if (sim_family == "clayton" || sim_family == "gumbel_survival" || sim_family == "gaussian") {
          throw Failure{TD_ERR_PARAMETER, sim_family + " needs --theta or --rho"};
        }
        sim_param = 0.0;
      }
      std::vector<double> u(sim_n), v(sim_n);
      check(td_simulate(sim_family.c_str(), sim_param, sim_n, g.seed, u.data(), v.data()));
      std::string out = "u,v\r\n";
      out.reserve(out.size() + sim_n * 44);
      char buffer[32];
      for (std::size_t i = 0; i < sim_n; ++i) {
        out.append(buffer, std::to_chars(buffer, buffer + sizeof buffer, u[i]).ptr);
        out.push_back(',');
        out.append(buffer, std::to_chars(buffer, buffer + sizeof buffer, v[i]).ptr);
        out.append("\r\n");
      }
      emit(g, sim_out, "pairs.csv", out);
    } else if (*report) {
      nlohmann::ordered_json request;
      if (!rep_manifest.empty()) {
        request = nlohmann::ordered_json::parse(read_text(rep_manifest));
        if (request.contains("request")) request = request["request"];
        if (!g.out_dir.empty()) request["out_dir"] = g.out_dir;
        request["threads"] = rep_threads;
      } else {
        if (rep_prices.empty()) throw Failure{TD_ERR_CONFIG, "report needs --prices or --manifest"};
        request["prices"] = rep_prices;
        request["format"] = rep_format;
        request["input_is_returns"] = rep_returns;
        request["benchmark"] = rep_benchmark;
        request["tickers"] = rep_tickers;
        request["out_dir"] = g.out_dir.empty() ? std::string("taildep_report") : g.out_dir;
        request["grid"] = g.grid;
        request["k"] = g.k;
        request["tail"] = rep_tail;
        request["window"] = g.window == 0 ? std::size_t{500} : g.window;
        request["step"] = g.step;
        request["normalization"] = normalization_or(g, "doubled");
        request["project"] = !rep_raw;
        request["store_tdf"] = rep_store;
        request["threads"] = rep_threads;
      }
      char* manifest = nullptr;
      check(td_report_run(request.dump().c_str(), &manifest));
      std::cout << take(manifest);
    }
  } catch (const Failure& f) {
    std::cerr << "taildep: " << td_status_name(f.status) << ": " << f.message << '\n';
    return static_cast<int>(f.status);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "taildep: invalid JSON: " << e.what() << '\n';
    return static_cast<int>(TD_ERR_DATA);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "taildep: " << e.what() << '\n';
    return static_cast<int>(TD_ERR_IO);
  }
  return 0;
}
