#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taildep/tdf.hpp"

namespace taildep {

enum class MeasureName {
  TDC,
  PointEval,
  MaxTD,
  AvgTD,
  LpNorm,
  SpearmanEV,
  ExtremalDep,
  Combined,
};

/// Raw works directly on the simplex TDF; Doubled multiplies by two so the
/// value shares the [0, 1] scale of the tail dependence coefficient.
enum class Normalization { Raw, Doubled };

struct MeasureValue {
  MeasureName name;
  double param = 0.0;  // s0 for PointEval, p for LpNorm, unused otherwise
  double value = 0.0;
  Normalization normalization = Normalization::Raw;
};

std::string_view to_string(MeasureName name);
std::string_view to_string(Normalization norm);
Normalization parse_normalization(std::string_view text);

MeasureValue tdc(const TailDependenceFunction& tdf);
MeasureValue point_eval(const TailDependenceFunction& tdf, double s0);
MeasureValue max_tail_dependence(const TailDependenceFunction& tdf,
                                 Normalization norm = Normalization::Raw);
MeasureValue average_tail_dependence(const TailDependenceFunction& tdf,
                                     Normalization norm = Normalization::Raw);
MeasureValue lp_norm(const TailDependenceFunction& tdf, double p,
                     Normalization norm = Normalization::Raw);

/// lambda / (2 - lambda) with lambda the tail dependence coefficient.
MeasureValue extremal_dependence_coefficient(const TailDependenceFunction& tdf);

/// Extreme-value copula exp(log u + log v + Lambda(-log u, -log v)).
/// Returns 0 when either argument is 0.
double ev_copula(const TailDependenceFunction& tdf, double u, double v);

/// Spearman's rho of the extreme-value copula,
/// 12 * int_0^1 (2 - Lambda(s))^-2 ds - 3.
MeasureValue spearman_ev(const TailDependenceFunction& tdf);

/// Applies f to the part values. f must be increasing in every argument for
/// the result to be a tail dependence measure; this is not checked.
MeasureValue combine(const std::function<double(std::span<const double>)>& f,
                     std::span<const MeasureValue> parts);

/// Composite Simpson rule over each grid segment split into four
/// subintervals, applied to g(Lambda(s)).
double integrate_composite_simpson(const TailDependenceFunction& tdf,
                                   const std::function<double(double)>& g);

}  // namespace taildep
