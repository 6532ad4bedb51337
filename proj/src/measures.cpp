#include "taildep/measures.hpp"

#include <algorithm>
#include <cmath>

#include "taildep/error.hpp"

namespace taildep {

namespace {

double scale(Normalization norm) {
  return norm == Normalization::Doubled ? 2.0 : 1.0;
}

constexpr int kSimpsonRefinement = 4;

}  // namespace

std::string_view to_string(MeasureName name) {
  switch (name) {
    case MeasureName::TDC: return "tdc";
    case MeasureName::PointEval: return "point";
    case MeasureName::MaxTD: return "linf";
    case MeasureName::AvgTD: return "l1";
    case MeasureName::LpNorm: return "lp";
    case MeasureName::SpearmanEV: return "spearman_ev";
    case MeasureName::ExtremalDep: return "extremal_dep";
    case MeasureName::Combined: return "combined";
  }
  return "unknown";
}

std::string_view to_string(Normalization norm) {
  return norm == Normalization::Doubled ? "doubled" : "raw";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "raw") return Normalization::Raw;
  if (text == "doubled") return Normalization::Doubled;
  fail(ErrorKind::Config,
       "normalization must be 'raw' or 'doubled', got '" + std::string(text) +
           "'");
}

MeasureValue tdc(const TailDependenceFunction& tdf) {
  return {MeasureName::TDC, 0.0, 2.0 * tdf.eval(0.5), Normalization::Raw};
}

MeasureValue point_eval(const TailDependenceFunction& tdf, double s0) {
  return {MeasureName::PointEval, s0, tdf.eval(s0), Normalization::Raw};
}

MeasureValue max_tail_dependence(const TailDependenceFunction& tdf,
                                 Normalization norm) {
  const auto v = tdf.values();
  const double peak = *std::max_element(v.begin(), v.end());
  return {MeasureName::MaxTD, 0.0, scale(norm) * peak, norm};
}

MeasureValue average_tail_dependence(const TailDependenceFunction& tdf,
                                     Normalization norm) {
  // Trapezoid rule; exact for the piecewise-linear interpolant. The boundary
  // samples are zero, so the end-point halves drop out.
  const auto v = tdf.values();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
  const double area = sum / static_cast<double>(tdf.grid_size());
  return {MeasureName::AvgTD, 0.0, scale(norm) * area, norm};
}

double integrate_composite_simpson(const TailDependenceFunction& tdf,
                                   const std::function<double(double)>& g) {
  const auto v = tdf.values();
  const std::size_t m = tdf.grid_size();
  const double h = 1.0 / static_cast<double>(m * kSimpsonRefinement);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    // Sub-nodes of segment i; the interpolant is linear on it.
    double f[kSimpsonRefinement + 1];
    for (int j = 0; j <= kSimpsonRefinement; ++j) {
      const double t = static_cast<double>(j) / kSimpsonRefinement;
      f[j] = g((1.0 - t) * v[i] + t * v[i + 1]);
    }
    double segment = 0.0;
    for (int j = 0; j < kSimpsonRefinement; j += 2) {
      segment += f[j] + 4.0 * f[j + 1] + f[j + 2];
    }
    total += segment * h / 3.0;
  }
  return total;
}

MeasureValue lp_norm(const TailDependenceFunction& tdf, double p,
                     Normalization norm) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::Parameter, "L^p norm requires finite p >= 1");
  }
  double value = 0.0;
  if (p == 1.0) {
    value = average_tail_dependence(tdf, Normalization::Raw).value;
  } else {
    const double integral = integrate_composite_simpson(
        tdf, [p](double lam) { return std::pow(lam, p); });
    value = std::pow(std::max(integral, 0.0), 1.0 / p);
  }
  return {MeasureName::LpNorm, p, scale(norm) * value, norm};
}

MeasureValue extremal_dependence_coefficient(const TailDependenceFunction& tdf) {
  const double lambda = tdc(tdf).value;
  return {MeasureName::ExtremalDep, 0.0, lambda / (2.0 - lambda),
          Normalization::Raw};
}

double ev_copula(const TailDependenceFunction& tdf, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
    fail(ErrorKind::Domain, "EV copula arguments must lie in [0, 1]");
  }
  if (u == 0.0 || v == 0.0) return 0.0;
  const double a = -std::log(u);
  const double b = -std::log(v);
  return std::exp(-a - b + tdf.extend_2d(a, b));
}

MeasureValue spearman_ev(const TailDependenceFunction& tdf) {
  const double integral = integrate_composite_simpson(tdf, [](double lam) {
    const double d = 2.0 - lam;
    return 1.0 / (d * d);
  });
  return {MeasureName::SpearmanEV, 0.0, 12.0 * integral - 3.0,
          Normalization::Raw};
}

MeasureValue combine(const std::function<double(std::span<const double>)>& f,
                     std::span<const MeasureValue> parts) {
  std::vector<double> values;
  values.reserve(parts.size());
  for (const auto& part : parts) values.push_back(part.value);
  return {MeasureName::Combined, 0.0, f(values), Normalization::Raw};
}

}  // namespace taildep
