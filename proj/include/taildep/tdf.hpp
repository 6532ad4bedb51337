#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace taildep {

inline constexpr std::size_t kDefaultGridSize = 200;
inline constexpr double kConcavityTolerance = 1e-9;
inline constexpr double kBoundTolerance = 1e-9;

enum class TdfKind { Validated, Empirical };

struct Violation {
  std::string constraint;  // "boundary_zero", "nonnegative", "frechet_upper", "concavity"
  std::size_t index = 0;
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool is_valid() const { return violations.empty(); }
  std::string summary() const;
};

/// A lower tail dependence function restricted to the segment x + y = 1,
/// stored as m + 1 samples at s_i = i / m and interpolated linearly.
///
/// Instances are immutable and can only be obtained through the factories
/// below, which guarantee the boundary zeros and the Frechet bound
/// 0 <= values[i] <= min(s_i, 1 - s_i). Validated instances are in addition
/// concave up to kConcavityTolerance on their second differences.
class TailDependenceFunction {
 public:
  std::size_t grid_size() const { return values_.size() - 1; }
  std::span<const double> values() const { return values_; }
  TdfKind kind() const { return kind_; }

  double grid_point(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(grid_size());
  }

  /// Piecewise-linear value at s in [0, 1]; exact at grid points.
  double eval(double s) const;
  double operator()(double s) const { return eval(s); }

  /// Homogeneous extension (x + y) * eval(x / (x + y)) to the quadrant.
  double extend_2d(double x, double y) const;

  bool operator==(const TailDependenceFunction&) const = default;

 private:
  // Interpolates at s given both s and 1 - s, measuring the position from
  // the nearer end so neither coordinate loses precision to cancellation.
  double interpolate(double s, double r) const;

  TailDependenceFunction(std::vector<double> values, TdfKind kind)
      : values_(std::move(values)), kind_(kind) {}

  std::vector<double> values_;
  TdfKind kind_;

  friend std::variant<TailDependenceFunction, ValidationReport> from_grid(
      std::span<const double>, bool);
};

using GridResult = std::variant<TailDependenceFunction, ValidationReport>;

/// Checks the admissibility constraints without constructing anything.
ValidationReport validate_grid(std::span<const double> values,
                               bool enforce_concavity);

/// Builds a TDF from grid samples. With enforce_concavity the result is
/// Validated, otherwise Empirical (bounds and boundary zeros only). Entries
/// within kBoundTolerance of a bound are clamped onto it. Throws
/// ErrorKind::Data for non-finite entries or fewer than three samples.
GridResult from_grid(std::span<const double> values, bool enforce_concavity);

/// Same as from_grid but throws ErrorKind::Validation carrying the report
/// summary when a constraint is violated.
TailDependenceFunction make_tdf(std::span<const double> values,
                                bool enforce_concavity = true);

namespace family {
struct Comonotone {};
struct Independence {};
struct Clayton {
  double theta;
};
/// min(a s, b (1 - s)), clipped at min(s, 1 - s).
struct Tent {
  double a;
  double b;
};
/// c s (1 - s), c in (0, 1].
struct Parabola {
  double c;
};
}  // namespace family

using Family = std::variant<family::Comonotone, family::Independence,
                            family::Clayton, family::Tent, family::Parabola>;

/// Closed-form simplex value of a family, for s in [0, 1].
double family_value(const Family& family, double s);

TailDependenceFunction from_parametric(const Family& family,
                                       std::size_t grid_size = kDefaultGridSize);

TailDependenceFunction zero_tdf(std::size_t grid_size = kDefaultGridSize);
TailDependenceFunction comonotone_tdf(std::size_t grid_size = kDefaultGridSize);

/// Smallest concave grid function dominating the input, clipped at the
/// Frechet bound. Always returns a Validated TDF.
TailDependenceFunction least_concave_majorant(const TailDependenceFunction& tdf);

/// Values of `tdf` resampled (by interpolation) onto a grid of size m.
std::vector<double> resample(const TailDependenceFunction& tdf, std::size_t m);

}  // namespace taildep
