#include "taildep/tdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "taildep/error.hpp"

namespace taildep {

namespace {

double frechet_bound(std::size_t i, std::size_t m) {
  const double s = static_cast<double>(i) / static_cast<double>(m);
  return std::min(s, 1.0 - s);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 5);
  for (std::size_t k = 0; k < shown; ++k) {
    const auto& v = violations[k];
    out << (k == 0 ? ": " : "; ") << v.constraint << " at index " << v.index
        << " (" << v.magnitude << ")";
  }
  if (shown < violations.size()) out << "; ...";
  return out.str();
}

double TailDependenceFunction::eval(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    fail(ErrorKind::Domain, "TDF argument must lie in [0, 1]");
  }
  return interpolate(s, 1.0 - s);
}

double TailDependenceFunction::interpolate(double s, double r) const {
  const std::size_t m = grid_size();
  const bool from_right = r < s;
  const double pos = (from_right ? r : s) * static_cast<double>(m);
  // Arguments of the form i / m land on node i up to a few ulps.
  const double nearest = std::nearbyint(pos);
  const auto node = [&](std::size_t j) { return values_[from_right ? m - j : j]; };
  if (std::abs(pos - nearest) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, pos)) {
    return node(static_cast<std::size_t>(nearest));
  }
  const auto i = std::min(static_cast<std::size_t>(pos), m - 1);
  const double t = pos - static_cast<double>(i);
  return (1.0 - t) * node(i) + t * node(i + 1);
}

double TailDependenceFunction::extend_2d(double x, double y) const {
  if (!(x >= 0.0) || !(y >= 0.0)) {
    fail(ErrorKind::Domain, "extend_2d requires x >= 0 and y >= 0");
  }
  const double total = x + y;
  if (total == 0.0) return 0.0;
  if (std::isinf(total)) {
    fail(ErrorKind::Domain, "extend_2d requires finite arguments");
  }
  return total * interpolate(x / total, y / total);
}

ValidationReport validate_grid(std::span<const double> values,
                               bool enforce_concavity) {
  if (values.size() < 3) {
    fail(ErrorKind::Data, "a TDF grid needs at least 3 samples");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::Data,
           "non-finite TDF sample at index " + std::to_string(i));
    }
  }

  ValidationReport report;
  const std::size_t m = values.size() - 1;
  for (std::size_t i : {std::size_t{0}, m}) {
    if (std::abs(values[i]) > kBoundTolerance) {
      report.violations.push_back({"boundary_zero", i, std::abs(values[i])});
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (values[i] < -kBoundTolerance) {
      report.violations.push_back({"nonnegative", i, -values[i]});
    }
    const double excess = values[i] - frechet_bound(i, m);
    if (excess > kBoundTolerance) {
      report.violations.push_back({"frechet_upper", i, excess});
    }
  }
  if (enforce_concavity) {
    for (std::size_t i = 1; i < m; ++i) {
      const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
      if (second > kConcavityTolerance) {
        report.violations.push_back({"concavity", i, second});
      }
    }
  }
  return report;
}

GridResult from_grid(std::span<const double> values, bool enforce_concavity) {
  ValidationReport report = validate_grid(values, enforce_concavity);
  if (!report.is_valid()) return report;

  const std::size_t m = values.size() - 1;
  std::vector<double> clean(values.begin(), values.end());
  clean.front() = 0.0;
  clean.back() = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    clean[i] = std::clamp(clean[i], 0.0, frechet_bound(i, m));
  }
  return TailDependenceFunction(
      std::move(clean),
      enforce_concavity ? TdfKind::Validated : TdfKind::Empirical);
}

TailDependenceFunction make_tdf(std::span<const double> values,
                                bool enforce_concavity) {
  GridResult result = from_grid(values, enforce_concavity);
  if (auto* report = std::get_if<ValidationReport>(&result)) {
    fail(ErrorKind::Validation, "invalid TDF grid: " + report->summary());
  }
  return std::get<TailDependenceFunction>(std::move(result));
}

double family_value(const Family& fam, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    fail(ErrorKind::Domain, "family argument must lie in [0, 1]");
  }
  const double bound = std::min(s, 1.0 - s);
  return std::visit(
      Overloaded{
          [&](const family::Comonotone&) { return bound; },
          [&](const family::Independence&) { return 0.0; },
          [&](const family::Clayton& f) {
            if (bound == 0.0) return 0.0;
            const double sum =
                std::pow(s, -f.theta) + std::pow(1.0 - s, -f.theta);
            return std::pow(sum, -1.0 / f.theta);
          },
          [&](const family::Tent& f) {
            return std::min(bound, std::min(f.a * s, f.b * (1.0 - s)));
          },
          [&](const family::Parabola& f) { return f.c * s * (1.0 - s); },
      },
      fam);
}

namespace {

void check_parameters(const Family& fam) {
  std::visit(Overloaded{
                 [](const family::Comonotone&) {},
                 [](const family::Independence&) {},
                 [](const family::Clayton& f) {
                   if (!(f.theta > 0.0) || !std::isfinite(f.theta)) {
                     fail(ErrorKind::Parameter, "Clayton theta must be > 0");
                   }
                 },
                 [](const family::Tent& f) {
                   if (!(f.a > 0.0) || !(f.b > 0.0) || !std::isfinite(f.a) ||
                       !std::isfinite(f.b)) {
                     fail(ErrorKind::Parameter, "tent slopes must be > 0");
                   }
                 },
                 [](const family::Parabola& f) {
                   if (!(f.c > 0.0 && f.c <= 1.0)) {
                     fail(ErrorKind::Parameter,
                          "parabola scale must lie in (0, 1]");
                   }
                 },
             },
             fam);
}

}  // namespace

TailDependenceFunction from_parametric(const Family& fam,
                                       std::size_t grid_size) {
  check_parameters(fam);
  if (grid_size < 2) fail(ErrorKind::Parameter, "grid size must be >= 2");
  std::vector<double> values(grid_size + 1);
  for (std::size_t i = 0; i <= grid_size; ++i) {
    values[i] = family_value(
        fam, static_cast<double>(i) / static_cast<double>(grid_size));
  }
  return make_tdf(values, true);
}

TailDependenceFunction zero_tdf(std::size_t grid_size) {
  return from_parametric(family::Independence{}, grid_size);
}

TailDependenceFunction comonotone_tdf(std::size_t grid_size) {
  return from_parametric(family::Comonotone{}, grid_size);
}

TailDependenceFunction least_concave_majorant(
    const TailDependenceFunction& tdf) {
  const auto v = tdf.values();
  const std::size_t m = tdf.grid_size();

  // Upper hull over integer abscissae. A point stays unless it lies below the
  // chord of its neighbours by more than the tolerance, so concave inputs come
  // back bit-identical.
  constexpr double kChordTolerance = 1e-13;
  std::vector<std::size_t> hull;
  hull.reserve(m + 1);
  for (std::size_t b = 0; b <= m; ++b) {
    while (hull.size() >= 2) {
      const std::size_t a = hull.back();
      const std::size_t o = hull[hull.size() - 2];
      const double chord =
          v[o] + (v[b] - v[o]) * static_cast<double>(a - o) /
                     static_cast<double>(b - o);
      if (v[a] < chord - kChordTolerance) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(b);
  }

  std::vector<double> out(m + 1);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t lo = hull[h];
    const std::size_t hi = hull[h + 1];
    out[lo] = v[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) {
      out[i] = v[lo] + (v[hi] - v[lo]) * static_cast<double>(i - lo) /
                           static_cast<double>(hi - lo);
    }
  }
  out[m] = v[m];
  for (std::size_t i = 0; i <= m; ++i) {
    out[i] = std::min(out[i], frechet_bound(i, m));
  }
  return make_tdf(out, true);
}

std::vector<double> resample(const TailDependenceFunction& tdf, std::size_t m) {
  std::vector<double> out(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    out[i] = tdf.eval(static_cast<double>(i) / static_cast<double>(m));
  }
  return out;
}

}  // namespace taildep
