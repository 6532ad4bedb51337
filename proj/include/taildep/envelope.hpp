#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "taildep/lp.hpp"
#include "taildep/measures.hpp"
#include "taildep/tdf.hpp"

namespace taildep {

/// Equality constraint Lambda(s) = value at a grid point s.
struct Pin {
  double s;
  double value;
};

using PinSet = std::vector<Pin>;

/// The single pin {(1/2, lambda/2)} fixing the tail dependence coefficient.
PinSet tdc_pin(double lambda);

/// Discretised admissible TDFs on a grid of size m: variables Lambda_1 ..
/// Lambda_{m-1} (the boundary samples are zero), box bounds
/// 0 <= Lambda_i <= min(s_i, 1 - s_i), non-positive second differences, and
/// the pins as fixed variables.
class FeasiblePolytope {
 public:
  /// Throws ErrorKind::Domain for pins off the grid and
  /// ErrorKind::Infeasible for pins outside the Frechet bounds or pins that
  /// contradict each other.
  FeasiblePolytope(const PinSet& pins, std::size_t m);

  std::size_t grid_size() const { return m_; }
  const lp::Problem& problem() const { return problem_; }

  /// Runs phase 1 of the simplex method.
  bool feasible() const;

  /// Grid samples (with the zero boundary) from an LP point.
  std::vector<double> to_grid(std::span<const double> x) const;

 private:
  std::size_t m_;
  lp::Problem problem_;
};

FeasiblePolytope feasible_polytope(const PinSet& pins, std::size_t m);

enum class RangeMeasure { MaxTD, AvgTD, PointEval };

struct RangeObjective {
  RangeMeasure measure = RangeMeasure::MaxTD;
  double s0 = 0.5;  // PointEval only
};

struct EnvelopeResult {
  double min_value;
  double max_value;
  TailDependenceFunction argmin;
  TailDependenceFunction argmax;
};

/// Exact optimum of the measure over the discretised polytope; values are
/// scaled by two under Normalization::Doubled. Throws ErrorKind::Infeasible
/// when no admissible TDF satisfies the pins.
EnvelopeResult measure_range(const PinSet& pins, RangeObjective objective,
                             std::size_t m = kDefaultGridSize,
                             Normalization norm = Normalization::Raw);

/// Closed-form range of the maximal tail dependence given the tail
/// dependence coefficient: [lambda/2, lambda/(1+lambda)] raw,
/// [lambda, 2 lambda/(1+lambda)] doubled.
std::pair<double, double> linf_range_given_tdc(
    double lambda, Normalization norm = Normalization::Raw);

/// Draws random points of one polytope as convex mixtures of vertices reached
/// by random linear objectives. Each draw restarts from the same phase-1
/// basis, so a draw depends only on its seed.
class RandomFeasibleSampler {
 public:
  RandomFeasibleSampler(const PinSet& pins, std::size_t m,
                        std::size_t vertices_per_draw = 3);

  TailDependenceFunction draw(std::uint64_t seed) const;

 private:
  FeasiblePolytope polytope_;
  std::optional<lp::BoundedSimplex> start_;
  std::size_t vertices_;
};

TailDependenceFunction random_feasible(const PinSet& pins, std::size_t m,
                                       std::uint64_t seed);

}  // namespace taildep
