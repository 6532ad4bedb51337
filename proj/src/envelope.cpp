#include "taildep/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "taildep/error.hpp"
#include "taildep/random.hpp"

namespace taildep {

namespace {

constexpr double kPinTolerance = 1e-9;

double frechet_bound(std::size_t i, std::size_t m) {
  const double s = static_cast<double>(i) / static_cast<double>(m);
  return std::min(s, 1.0 - s);
}

[[noreturn]] void solver_failure(lp::Status status) {
  if (status == lp::Status::Infeasible) {
    fail(ErrorKind::Infeasible, "no admissible TDF satisfies the pins");
  }
  fail(ErrorKind::Infeasible,
       status == lp::Status::Unbounded ? "LP unexpectedly unbounded"
                                       : "LP iteration limit reached");
}

}  // namespace

PinSet tdc_pin(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(ErrorKind::Domain, "tail dependence coefficient must lie in [0, 1]");
  }
  return {{0.5, lambda / 2.0}};
}

FeasiblePolytope::FeasiblePolytope(const PinSet& pins, std::size_t m) : m_(m) {
  if (m < 2) fail(ErrorKind::Parameter, "grid size must be >= 2");

  std::map<std::size_t, double> fixed;
  for (const Pin& pin : pins) {
    const double pos = pin.s * static_cast<double>(m);
    const double index = std::nearbyint(pos);
    if (!(pin.s >= 0.0 && pin.s <= 1.0) || std::abs(pos - index) > kPinTolerance) {
      fail(ErrorKind::Domain, "pin at s = " + std::to_string(pin.s) +
                                  " is not a point of the grid of size " +
                                  std::to_string(m));
    }
    const auto i = static_cast<std::size_t>(index);
    const double bound = frechet_bound(i, m);
    if (!std::isfinite(pin.value) || pin.value < -kPinTolerance ||
        pin.value > bound + kPinTolerance) {
      fail(ErrorKind::Infeasible, "pin value " + std::to_string(pin.value) +
                                      " at s = " + std::to_string(pin.s) +
                                      " violates 0 <= Lambda(s) <= min(s, 1-s)");
    }
    const double value = std::clamp(pin.value, 0.0, bound);
    if (auto it = fixed.find(i); it != fixed.end() &&
                                 std::abs(it->second - value) > kPinTolerance) {
      fail(ErrorKind::Infeasible, "conflicting pins at s = " + std::to_string(pin.s));
    }
    fixed[i] = value;
  }

  for (std::size_t i = 1; i < m; ++i) {
    if (auto it = fixed.find(i); it != fixed.end()) {
      problem_.add_variable(it->second, it->second);
    } else {
      problem_.add_variable(0.0, frechet_bound(i, m));
    }
  }
  // Lambda_{i-1} - 2 Lambda_i + Lambda_{i+1} <= 0, variable j holds Lambda_{j+1}.
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    if (i > 1) terms.emplace_back(i - 2, 1.0);
    terms.emplace_back(i - 1, -2.0);
    if (i + 1 < m) terms.emplace_back(i, 1.0);
    problem_.add_constraint(std::move(terms), lp::Sense::LessEqual, 0.0);
  }
}

bool FeasiblePolytope::feasible() const {
  return lp::BoundedSimplex(problem_).feasible();
}

std::vector<double> FeasiblePolytope::to_grid(std::span<const double> x) const {
  std::vector<double> grid(m_ + 1, 0.0);
  for (std::size_t i = 1; i < m_; ++i) grid[i] = x[i - 1];
  return grid;
}

FeasiblePolytope feasible_polytope(const PinSet& pins, std::size_t m) {
  return FeasiblePolytope(pins, m);
}

namespace {

std::vector<double> linear_objective(RangeObjective objective, std::size_t m) {
  std::vector<double> cost(m - 1, 0.0);
  if (objective.measure == RangeMeasure::AvgTD) {
    std::fill(cost.begin(), cost.end(), 1.0 / static_cast<double>(m));
    return cost;
  }
  const double s0 = objective.s0;
  if (!(s0 >= 0.0 && s0 <= 1.0)) {
    fail(ErrorKind::Domain, "point evaluation requires s0 in [0, 1]");
  }
  const double pos = s0 * static_cast<double>(m);
  const auto i = std::min(static_cast<std::size_t>(pos), m - 1);
  const double t = pos - static_cast<double>(i);
  // Grid sample i maps to variable i - 1; samples 0 and m are fixed at zero.
  if (i >= 1) cost[i - 1] += 1.0 - t;
  if (i + 1 <= m - 1) cost[i] += t;
  return cost;
}

}  // namespace

EnvelopeResult measure_range(const PinSet& pins, RangeObjective objective,
                             std::size_t m, Normalization norm) {
  const FeasiblePolytope polytope(pins, m);
  const double factor = norm == Normalization::Doubled ? 2.0 : 1.0;
  const std::size_t n = m - 1;

  lp::BoundedSimplex simplex(polytope.problem());
  if (!simplex.feasible()) solver_failure(lp::Status::Infeasible);

  lp::Solution low;
  lp::Solution high;
  if (objective.measure == RangeMeasure::MaxTD) {
    // Largest attainable peak: best per-coordinate maximum.
    std::vector<double> unit(n, 0.0);
    high.objective = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      unit[j] = 1.0;
      lp::Solution candidate = simplex.maximize(unit);
      unit[j] = 0.0;
      if (candidate.status != lp::Status::Optimal) solver_failure(candidate.status);
      if (candidate.objective > high.objective) high = std::move(candidate);
    }

    // Smallest attainable peak: min t subject to Lambda_i <= t.
    lp::Problem epigraph = polytope.problem();
    const std::size_t t = epigraph.add_variable(0.0, lp::kInfinity);
    for (std::size_t j = 0; j < n; ++j) {
      epigraph.add_constraint({{j, 1.0}, {t, -1.0}}, lp::Sense::LessEqual, 0.0);
    }
    lp::BoundedSimplex epi_simplex(epigraph);
    std::vector<double> cost(n + 1, 0.0);
    cost[t] = 1.0;
    low = epi_simplex.minimize(cost);
    if (low.status != lp::Status::Optimal) solver_failure(low.status);
    low.x.resize(n);
  } else {
    const std::vector<double> cost = linear_objective(objective, m);
    low = simplex.minimize(cost);
    if (low.status != lp::Status::Optimal) solver_failure(low.status);
    high = simplex.maximize(cost);
    if (high.status != lp::Status::Optimal) solver_failure(high.status);
  }

  return EnvelopeResult{
      factor * low.objective,
      factor * high.objective,
      make_tdf(polytope.to_grid(low.x), true),
      make_tdf(polytope.to_grid(high.x), true),
  };
}

std::pair<double, double> linf_range_given_tdc(double lambda,
                                               Normalization norm) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(ErrorKind::Domain, "tail dependence coefficient must lie in [0, 1]");
  }
  const double factor = norm == Normalization::Doubled ? 2.0 : 1.0;
  return {factor * lambda / 2.0, factor * lambda / (1.0 + lambda)};
}

RandomFeasibleSampler::RandomFeasibleSampler(const PinSet& pins, std::size_t m,
                                             std::size_t vertices_per_draw)
    : polytope_(pins, m), vertices_(std::max<std::size_t>(vertices_per_draw, 1)) {
  start_.emplace(polytope_.problem());
  if (!start_->feasible()) solver_failure(lp::Status::Infeasible);
}

TailDependenceFunction RandomFeasibleSampler::draw(std::uint64_t seed) const {
  Xoshiro256 rng(seed);
  lp::BoundedSimplex simplex = *start_;
  const std::size_t n = polytope_.grid_size() - 1;

  std::vector<double> mixture(n, 0.0);
  std::vector<double> cost(n);
  double total_weight = 0.0;
  for (std::size_t v = 0; v < vertices_; ++v) {
    for (double& c : cost) c = rng.uniform(-1.0, 1.0);
    const lp::Solution vertex = simplex.minimize(cost);
    if (vertex.status != lp::Status::Optimal) solver_failure(vertex.status);
    const double weight = rng.exponential();
    total_weight += weight;
    for (std::size_t j = 0; j < n; ++j) mixture[j] += weight * vertex.x[j];
  }
  for (double& value : mixture) value /= total_weight;
  return make_tdf(polytope_.to_grid(mixture), true);
}

TailDependenceFunction random_feasible(const PinSet& pins, std::size_t m,
                                       std::uint64_t seed) {
  return RandomFeasibleSampler(pins, m).draw(seed);
}

}  // namespace taildep
