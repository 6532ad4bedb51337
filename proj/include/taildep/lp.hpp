#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace taildep::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<std::pair<std::size_t, double>> terms;
  Sense sense;
  double rhs;
};

/// Linear constraint system over bounded variables. Every variable needs at
/// least one finite bound.
struct Problem {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const { return lower.size(); }

  std::size_t add_variable(double lo, double hi) {
    lower.push_back(lo);
    upper.push_back(hi);
    return lower.size() - 1;
  }

  void add_constraint(std::vector<std::pair<std::size_t, double>> terms,
                      Sense sense, double rhs) {
    constraints.push_back({std::move(terms), sense, rhs});
  }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense bounded-variable primal simplex.
///
/// Construction runs phase 1; afterwards the solver holds a feasible basis
/// (unless feasible() is false) and each minimize/maximize call continues from
/// the current basis, so a sequence of objectives over one polytope is cheap.
/// Pricing is Dantzig's rule, switching to Bland's rule while pivots stall on
/// a degenerate vertex. The object is copyable to snapshot a basis.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const Problem& problem);

  bool feasible() const { return feasible_; }
  std::size_t pivots() const { return pivots_; }

  Solution minimize(std::span<const double> cost);
  Solution maximize(std::span<const double> cost);

  /// Current primal point on the structural variables.
  std::vector<double> point() const;

 private:
  enum class Position { Basic, AtLower, AtUpper };

  // Runs primal simplex on `cost` (one entry per column).
  Status optimize(const std::vector<double>& cost);
  void pivot(std::size_t row, std::size_t col);
  void refresh_basic_values();
  double nonbasic_value(std::size_t col) const;

  std::size_t num_struct_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Eigen::MatrixXd tableau_;       // B^-1 [A | I | artificial]
  Eigen::MatrixXd original_;      // [A | I | artificial]
  Eigen::VectorXd rhs_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Position> position_;
  std::vector<std::size_t> basis_;  // column basic in each row
  std::vector<double> basic_value_;
  std::size_t pivots_ = 0;
  bool feasible_ = false;
};

}  // namespace taildep::lp
