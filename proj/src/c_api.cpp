#include "taildep/taildep.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "taildep/csv.hpp"
#include "taildep/envelope.hpp"
#include "taildep/error.hpp"
#include "taildep/estimator.hpp"
#include "taildep/measures.hpp"
#include "taildep/order.hpp"
#include "taildep/panel.hpp"
#include "taildep/pipeline.hpp"
#include "taildep/serialize.hpp"
#include "taildep/simulate.hpp"
#include "taildep/stats.hpp"
#include "taildep/tdf.hpp"
#include "taildep/version.hpp"

struct td_tdf {
  taildep::TailDependenceFunction value;
};

struct td_panel {
  taildep::ReturnPanel value;
};

namespace {

using namespace taildep;

thread_local std::string last_error;

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool condition, const char* what) {
  if (!condition) throw ArgumentError(what);
}

td_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return TD_ERR_DOMAIN;
    case ErrorKind::Parameter: return TD_ERR_PARAMETER;
    case ErrorKind::Data: return TD_ERR_DATA;
    case ErrorKind::Config: return TD_ERR_CONFIG;
    case ErrorKind::Validation: return TD_ERR_VALIDATION;
    case ErrorKind::Infeasible: return TD_ERR_INFEASIBLE;
    case ErrorKind::Alignment: return TD_ERR_ALIGNMENT;
    case ErrorKind::Io: return TD_ERR_IO;
  }
  return TD_ERR_INTERNAL;
}

template <class F>
td_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return TD_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TD_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

td_tdf* wrap(TailDependenceFunction tdf) { return new td_tdf{std::move(tdf)}; }

Family tdf_family(std::string_view name, double a, double b) {
  if (name == "comonotone") return family::Comonotone{};
  if (name == "independence") return family::Independence{};
  if (name == "clayton") return family::Clayton{a};
  if (name == "tent") return family::Tent{a, b};
  if (name == "parabola") return family::Parabola{a};
  throw ArgumentError("unknown TDF family '" + std::string(name) + "'");
}

RangeObjective parse_range_measure(std::string_view text) {
  if (text == "linf") return {RangeMeasure::MaxTD, 0.5};
  if (text == "l1") return {RangeMeasure::AvgTD, 0.5};
  if (text.starts_with("point:")) {
    const std::string arg(text.substr(6));
    char* end = nullptr;
    const double s0 = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) {
      fail(ErrorKind::Config, "cannot parse point '" + arg + "'");
    }
    return {RangeMeasure::PointEval, s0};
  }
  fail(ErrorKind::Config, "measure must be linf, l1 or point:<s0>, got '" + std::string(text) + "'");
}

PriceFormat parse_format(const char* format) {
  const std::string_view text = format == nullptr ? "wide" : format;
  if (text == "wide") return PriceFormat::Wide;
  if (text == "long") return PriceFormat::Long;
  fail(ErrorKind::Config, "format must be wide or long, got '" + std::string(text) + "'");
}

}  // namespace

extern "C" {

const char* td_last_error(void) { return last_error.c_str(); }

const char* td_status_name(td_status status) {
  switch (status) {
    case TD_OK: return "ok";
    case TD_ERR_DOMAIN: return "domain error";
    case TD_ERR_PARAMETER: return "parameter error";
    case TD_ERR_DATA: return "data error";
    case TD_ERR_CONFIG: return "configuration error";
    case TD_ERR_VALIDATION: return "validation error";
    case TD_ERR_INFEASIBLE: return "infeasible";
    case TD_ERR_ALIGNMENT: return "alignment error";
    case TD_ERR_IO: return "I/O error";
    case TD_ERR_ARGUMENT: return "invalid argument";
    case TD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* td_version(void) { return kVersion; }

void td_string_free(char* text) { std::free(text); }
void td_free(void* data) { std::free(data); }

td_status td_tdf_from_grid(const double* values, size_t count, int validated, td_tdf** out) {
  return guarded([&] {
    require(values != nullptr && out != nullptr, "null argument");
    *out = wrap(make_tdf(std::span<const double>(values, count), validated != 0));
  });
}

td_status td_tdf_parametric(const char* family, double a, double b, size_t m, td_tdf** out) {
  return guarded([&] {
    require(family != nullptr && out != nullptr, "null argument");
    *out = wrap(from_parametric(tdf_family(family, a, b), m));
  });
}

td_status td_tdf_from_json(const char* json, td_tdf** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = wrap(parse_tdf(json));
  });
}

td_status td_tdf_to_json(const td_tdf* tdf, char** json) {
  return guarded([&] {
    require(tdf != nullptr && json != nullptr, "null argument");
    *json = dup_string(to_json(tdf->value).dump());
  });
}

td_status td_tdf_clone(const td_tdf* tdf, td_tdf** out) {
  return guarded([&] {
    require(tdf != nullptr && out != nullptr, "null argument");
    *out = wrap(tdf->value);
  });
}

void td_tdf_free(td_tdf* tdf) { delete tdf; }

size_t td_tdf_grid_size(const td_tdf* tdf) { return tdf == nullptr ? 0 : tdf->value.grid_size(); }

int td_tdf_is_validated(const td_tdf* tdf) {
  return tdf != nullptr && tdf->value.kind() == TdfKind::Validated;
}

td_status td_tdf_values(const td_tdf* tdf, double* values, size_t capacity) {
  return guarded([&] {
    require(tdf != nullptr && values != nullptr, "null argument");
    const auto v = tdf->value.values();
    require(capacity >= v.size(), "buffer holds fewer than m + 1 values");
    std::copy(v.begin(), v.end(), values);
  });
}

td_status td_tdf_eval(const td_tdf* tdf, double s, double* value) {
  return guarded([&] {
    require(tdf != nullptr && value != nullptr, "null argument");
    *value = tdf->value.eval(s);
  });
}

td_status td_tdf_extend_2d(const td_tdf* tdf, double x, double y, double* value) {
  return guarded([&] {
    require(tdf != nullptr && value != nullptr, "null argument");
    *value = tdf->value.extend_2d(x, y);
  });
}

td_status td_tdf_concave_majorant(const td_tdf* tdf, td_tdf** out) {
  return guarded([&] {
    require(tdf != nullptr && out != nullptr, "null argument");
    *out = wrap(least_concave_majorant(tdf->value));
  });
}

td_status td_measures_json(const td_tdf* tdf, const char* normalization, double point_s0,
                           double lp_p, char** json) {
  return guarded([&] {
    require(tdf != nullptr && json != nullptr, "null argument");
    const Normalization norm =
        parse_normalization(normalization == nullptr ? "raw" : normalization);
    const auto& t = tdf->value;
    std::vector<MeasureValue> values{
        tdc(t),
        max_tail_dependence(t, norm),
        average_tail_dependence(t, norm),
        spearman_ev(t),
        extremal_dependence_coefficient(t),
    };
    if (!std::isnan(point_s0)) values.push_back(point_eval(t, point_s0));
    if (!std::isnan(lp_p)) values.push_back(lp_norm(t, lp_p, norm));
    *json = dup_string(to_json(values).dump(2));
  });
}

td_status td_ev_copula(const td_tdf* tdf, double u, double v, double* value) {
  return guarded([&] {
    require(tdf != nullptr && value != nullptr, "null argument");
    *value = ev_copula(tdf->value, u, v);
  });
}

td_status td_compare_json(const td_tdf* first, const td_tdf* second, double tolerance,
                          char** json) {
  return guarded([&] {
    require(first != nullptr && second != nullptr && json != nullptr, "null argument");
    const double tol = tolerance < 0.0 ? kDefaultOrderTolerance : tolerance;
    *json = dup_string(to_json(compare(first->value, second->value, tol)).dump(2));
  });
}

td_status td_estimate(const double* x, const double* y, size_t n, size_t k, size_t grid,
                      const char* tail, td_tdf** out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    EstimatorConfig cfg;
    cfg.k = k;
    cfg.grid_size = grid == 0 ? kDefaultGridSize : grid;
    cfg.tail = parse_tail(tail == nullptr ? "lower" : tail);
    const RankedSample sample = ranks({x, n}, {y, n});
    *out = wrap(empirical_tdf(sample, cfg));
  });
}

td_status td_estimate_rolling_json(const double* x, const double* y, size_t n, size_t window,
                                   size_t step, size_t k, size_t grid, const char* tail,
                                   int project, size_t threads, char** json) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && json != nullptr, "null argument");
    EstimatorConfig cfg;
    cfg.k = k;
    cfg.grid_size = grid == 0 ? kDefaultGridSize : grid;
    cfg.tail = parse_tail(tail == nullptr ? "lower" : tail);
    const RollingResult result =
        rolling_estimate({x, n}, {y, n}, window, step, cfg, threads == 0 ? 1 : threads);
    Json out;
    out["windows"] = Json::array();
    for (const auto& w : result.estimates) {
      Json entry;
      entry["start"] = w.start;
      entry["tdf"] = to_json(project != 0 ? least_concave_majorant(w.tdf) : w.tdf);
      out["windows"].push_back(std::move(entry));
    }
    out["skipped"] = result.skipped;
    *json = dup_string(out.dump());
  });
}

td_status td_envelope_json(double lambda, const char* measure, size_t grid,
                           const char* normalization, char** json) {
  return guarded([&] {
    require(json != nullptr, "null argument");
    const RangeObjective objective = parse_range_measure(measure == nullptr ? "linf" : measure);
    const Normalization norm =
        parse_normalization(normalization == nullptr ? "raw" : normalization);
    const EnvelopeResult result =
        measure_range(tdc_pin(lambda), objective, grid == 0 ? kDefaultGridSize : grid, norm);
    *json = dup_string(to_json(result).dump(2));
  });
}

td_status td_simulate(const char* family, double param, size_t n, uint64_t seed, double* u,
                      double* v) {
  return guarded([&] {
    require(family != nullptr && u != nullptr && v != nullptr, "null argument");
    const PseudoSample s = sample({make_copula_family(family, param), n, seed});
    std::copy(s.u.begin(), s.u.end(), u);
    std::copy(s.v.begin(), s.v.end(), v);
  });
}

td_status td_analytic_tdf(const char* family, double param, size_t m, td_tdf** out) {
  return guarded([&] {
    require(family != nullptr && out != nullptr, "null argument");
    *out = wrap(analytic_tdf(make_copula_family(family, param), m));
  });
}

td_status td_csv_columns(const char* path, const char* name_x, const char* name_y, double** x,
                         double** y, size_t* n) {
  return guarded([&] {
    require(path != nullptr && x != nullptr && y != nullptr && n != nullptr, "null argument");
    const auto rows = csv::read_file(path);
    if (rows.empty()) fail(ErrorKind::Data, std::string(path) + ": missing header row");
    const auto& header = rows.front().fields;

    auto find = [&](const char* name, std::size_t skip) -> std::size_t {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (name != nullptr ? header[c] == name : header[c] != "date" && c != skip) return c;
      }
      fail(ErrorKind::Data, std::string(path) + ": no column " +
                                (name != nullptr ? "'" + std::string(name) + "'"
                                                 : std::string("to read")));
    };
    const std::size_t cx = find(name_x, header.size());
    const std::size_t cy = find(name_y, cx);

    const std::size_t count = rows.size() - 1;
    std::vector<double> xs(count);
    std::vector<double> ys(count);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.fields.size() != header.size()) {
        fail(ErrorKind::Data, std::string(path) + ": line " + std::to_string(row.line) +
                                  " has " + std::to_string(row.fields.size()) +
                                  " fields, expected " + std::to_string(header.size()));
      }
      if (!csv::parse_double(row.fields[cx], xs[r - 1]) ||
          !csv::parse_double(row.fields[cy], ys[r - 1])) {
        fail(ErrorKind::Data, std::string(path) + ": line " + std::to_string(row.line) +
                                  ": cannot parse number");
      }
    }
    auto* bx = static_cast<double*>(std::malloc(std::max<std::size_t>(count, 1) * sizeof(double)));
    auto* by = static_cast<double*>(std::malloc(std::max<std::size_t>(count, 1) * sizeof(double)));
    if (bx == nullptr || by == nullptr) {
      std::free(bx);
      std::free(by);
      throw std::bad_alloc();
    }
    std::copy(xs.begin(), xs.end(), bx);
    std::copy(ys.begin(), ys.end(), by);
    *x = bx;
    *y = by;
    *n = count;
  });
}

td_status td_panel_load(const char* path, const char* format, td_panel** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new td_panel{load_prices(path, parse_format(format))};
  });
}

td_status td_panel_log_returns(const td_panel* prices, td_panel** out) {
  return guarded([&] {
    require(prices != nullptr && out != nullptr, "null argument");
    *out = new td_panel{log_returns(prices->value)};
  });
}

void td_panel_free(td_panel* panel) { delete panel; }

size_t td_panel_rows(const td_panel* panel) { return panel == nullptr ? 0 : panel->value.rows(); }
size_t td_panel_cols(const td_panel* panel) { return panel == nullptr ? 0 : panel->value.cols(); }

td_status td_panel_write_csv(const td_panel* panel, const char* path) {
  return guarded([&] {
    require(panel != nullptr && path != nullptr, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, std::string("cannot write '") + path + "'");
    write_panel_csv(out, panel->value);
    if (!out) fail(ErrorKind::Io, std::string("write failed for '") + path + "'");
  });
}

td_status td_panel_to_csv(const td_panel* panel, char** csv) {
  return guarded([&] {
    require(panel != nullptr && csv != nullptr, "null argument");
    std::ostringstream out;
    write_panel_csv(out, panel->value);
    *csv = dup_string(out.str());
  });
}

td_status td_panel_summary_json(const td_panel* panel, const char* benchmark, char** json) {
  return guarded([&] {
    require(panel != nullptr && json != nullptr, "null argument");
    *json = dup_string(
        summary_table_json(summary_stats(panel->value, benchmark == nullptr ? "" : benchmark)));
  });
}

td_status td_report_run(const char* request_json, char** manifest) {
  return guarded([&] {
    require(request_json != nullptr, "null argument");
    const std::string text = run_report(parse_report_request(request_json));
    if (manifest != nullptr) *manifest = dup_string(text);
  });
}

}  // extern "C"
