#include "taildep/lp.hpp"

#include <algorithm>
#include <cmath>

#include "taildep/error.hpp"

namespace taildep::lp {

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kCostTolerance = 1e-9;
constexpr double kPhaseOneTolerance = 1e-8;
constexpr std::size_t kDegenerateStreakForBland = 50;
constexpr std::size_t kMaxIterations = 200000;
constexpr std::size_t kRefreshInterval = 200;

}  // namespace

BoundedSimplex::BoundedSimplex(const Problem& problem) {
  num_struct_ = problem.num_vars();
  rows_ = problem.constraints.size();
  if (problem.upper.size() != num_struct_) {
    fail(ErrorKind::Parameter, "LP bound vectors differ in length");
  }
  for (std::size_t j = 0; j < num_struct_; ++j) {
    if (std::isinf(problem.lower[j]) && std::isinf(problem.upper[j])) {
      fail(ErrorKind::Parameter, "LP variable without a finite bound");
    }
    if (problem.lower[j] > problem.upper[j]) {
      feasible_ = false;
      return;
    }
  }

  lower_ = problem.lower;
  upper_ = problem.upper;
  position_.assign(num_struct_, Position::AtLower);
  for (std::size_t j = 0; j < num_struct_; ++j) {
    if (std::isinf(lower_[j])) position_[j] = Position::AtUpper;
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows_, num_struct_);
  rhs_.resize(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [j, coef] : problem.constraints[r].terms) {
      if (j >= num_struct_) fail(ErrorKind::Parameter, "LP term index out of range");
      a(r, j) += coef;
    }
    rhs_(r) = problem.constraints[r].rhs;
  }

  // Slack s_r with A_r x + s_r = b_r; its bounds encode the row sense.
  std::vector<double> slack_lo(rows_), slack_hi(rows_), residual(rows_);
  std::vector<int> sign(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    switch (problem.constraints[r].sense) {
      case Sense::LessEqual: slack_lo[r] = 0.0; slack_hi[r] = kInfinity; break;
      case Sense::GreaterEqual: slack_lo[r] = -kInfinity; slack_hi[r] = 0.0; break;
      case Sense::Equal: slack_lo[r] = 0.0; slack_hi[r] = 0.0; break;
    }
    double activity = 0.0;
    for (std::size_t j = 0; j < num_struct_; ++j) {
      activity += a(r, j) * nonbasic_value(j);
    }
    residual[r] = rhs_(r) - activity;
    if (residual[r] > slack_hi[r]) sign[r] = 1;
    if (residual[r] < slack_lo[r]) sign[r] = -1;
  }

  const auto artificial_count = static_cast<std::size_t>(
      std::count_if(sign.begin(), sign.end(), [](int s) { return s != 0; }));
  cols_ = num_struct_ + rows_ + artificial_count;
  original_ = Eigen::MatrixXd::Zero(rows_, cols_);
  original_.leftCols(num_struct_) = a;
  original_.block(0, num_struct_, rows_, rows_).setIdentity();

  basis_.resize(rows_);
  basic_value_.resize(rows_);
  std::vector<double> phase_one_cost(cols_, 0.0);
  std::size_t next_artificial = num_struct_ + rows_;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::size_t slack = num_struct_ + r;
    lower_.push_back(slack_lo[r]);
    upper_.push_back(slack_hi[r]);
    if (sign[r] == 0) {
      position_.push_back(Position::Basic);
      basis_[r] = slack;
      basic_value_[r] = residual[r];
    } else {
      position_.push_back(Position::AtLower);
      if (std::isinf(slack_lo[r])) position_.back() = Position::AtUpper;
    }
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (sign[r] == 0) continue;
    const std::size_t art = next_artificial++;
    original_(r, art) = sign[r];
    lower_.push_back(0.0);
    upper_.push_back(kInfinity);
    position_.push_back(Position::Basic);
    basis_[r] = art;
    basic_value_[r] = std::abs(residual[r]);  // slack sits at 0
    phase_one_cost[art] = 1.0;
  }

  tableau_ = original_;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (sign[r] < 0) tableau_.row(r) *= -1.0;
  }

  if (artificial_count > 0) {
    const Status status = optimize(phase_one_cost);
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] >= num_struct_ + rows_) infeasibility += basic_value_[r];
    }
    if (status != Status::Optimal || infeasibility > kPhaseOneTolerance) {
      feasible_ = false;
      return;
    }
    for (std::size_t j = num_struct_ + rows_; j < cols_; ++j) upper_[j] = 0.0;
  }
  feasible_ = true;
}

double BoundedSimplex::nonbasic_value(std::size_t col) const {
  return position_[col] == Position::AtUpper ? upper_[col] : lower_[col];
}

std::vector<double> BoundedSimplex::point() const {
  std::vector<double> x(num_struct_);
  for (std::size_t j = 0; j < num_struct_; ++j) {
    if (position_[j] != Position::Basic) x[j] = nonbasic_value(j);
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (basis_[r] < num_struct_) x[basis_[r]] = basic_value_[r];
  }
  for (std::size_t j = 0; j < num_struct_; ++j) {
    x[j] = std::clamp(x[j], lower_[j], upper_[j]);
  }
  return x;
}

void BoundedSimplex::refresh_basic_values() {
  Eigen::VectorXd residual = rhs_;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (position_[j] == Position::Basic) continue;
    const double value = nonbasic_value(j);
    if (value != 0.0) residual -= original_.col(j) * value;
  }
  const Eigen::VectorXd values =
      tableau_.block(0, num_struct_, rows_, rows_) * residual;
  for (std::size_t r = 0; r < rows_; ++r) basic_value_[r] = values(r);
}

void BoundedSimplex::pivot(std::size_t row, std::size_t col) {
  const double element = tableau_(row, col);
  tableau_.row(row) /= element;
  Eigen::VectorXd column = tableau_.col(col);
  column(row) = 0.0;
  tableau_.noalias() -= column * tableau_.row(row);
  ++pivots_;
}

Status BoundedSimplex::optimize(const std::vector<double>& cost) {
  Eigen::VectorXd reduced(cols_);
  for (std::size_t j = 0; j < cols_; ++j) reduced(j) = cost[j];
  for (std::size_t r = 0; r < rows_; ++r) {
    const double cb = cost[basis_[r]];
    if (cb != 0.0) reduced -= cb * tableau_.row(r).transpose();
  }

  std::size_t degenerate_streak = 0;
  std::size_t since_refresh = 0;
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    const bool bland = degenerate_streak >= kDegenerateStreakForBland;

    // Pricing.
    std::size_t entering = cols_;
    double best = 0.0;
    int direction = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (position_[j] == Position::Basic || lower_[j] == upper_[j]) continue;
      const double d = reduced(j);
      int dir = 0;
      if (d < -kCostTolerance && position_[j] == Position::AtLower) dir = 1;
      if (d > kCostTolerance && position_[j] == Position::AtUpper) dir = -1;
      if (dir == 0) continue;
      if (bland) {
        entering = j;
        direction = dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        direction = dir;
      }
    }
    if (entering == cols_) {
      refresh_basic_values();
      return Status::Optimal;
    }

    // Ratio test; the entering variable may also just flip bounds.
    double step = upper_[entering] - lower_[entering];
    std::size_t leaving_row = rows_;
    double leaving_alpha = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double alpha = tableau_(r, entering) * direction;
      if (std::abs(alpha) <= kPivotTolerance) continue;
      const std::size_t b = basis_[r];
      double limit;
      if (alpha > 0.0) {
        if (std::isinf(lower_[b])) continue;
        limit = std::max(0.0, basic_value_[r] - lower_[b]) / alpha;
      } else {
        if (std::isinf(upper_[b])) continue;
        limit = std::max(0.0, upper_[b] - basic_value_[r]) / -alpha;
      }
      bool take = limit < step;
      if (!take && leaving_row < rows_ && limit == step) {
        take = bland ? b < basis_[leaving_row]
                     : std::abs(alpha) > std::abs(leaving_alpha);
      }
      if (take) {
        step = limit;
        leaving_row = r;
        leaving_alpha = alpha;
      }
    }
    if (std::isinf(step)) return Status::Unbounded;

    degenerate_streak = step == 0.0 ? degenerate_streak + 1 : 0;
    const double delta = step * direction;
    for (std::size_t r = 0; r < rows_; ++r) {
      basic_value_[r] -= delta * tableau_(r, entering);
    }

    if (leaving_row == rows_) {
      position_[entering] = direction > 0 ? Position::AtUpper : Position::AtLower;
      continue;
    }

    const std::size_t leaving = basis_[leaving_row];
    position_[leaving] = leaving_alpha > 0.0 ? Position::AtLower : Position::AtUpper;
    const double entering_value = nonbasic_value(entering) + delta;
    position_[entering] = Position::Basic;
    basis_[leaving_row] = entering;
    basic_value_[leaving_row] = entering_value;

    pivot(leaving_row, entering);
    const double d = reduced(entering);
    reduced -= d * tableau_.row(leaving_row).transpose();
    reduced(entering) = 0.0;

    if (++since_refresh >= kRefreshInterval) {
      refresh_basic_values();
      since_refresh = 0;
    }
  }
  return Status::IterationLimit;
}

Solution BoundedSimplex::minimize(std::span<const double> cost) {
  Solution solution;
  if (!feasible_) {
    solution.status = Status::Infeasible;
    return solution;
  }
  if (cost.size() != num_struct_) {
    fail(ErrorKind::Parameter, "LP cost vector has the wrong length");
  }
  std::vector<double> full(cols_, 0.0);
  std::copy(cost.begin(), cost.end(), full.begin());
  solution.status = optimize(full);
  solution.x = point();
  for (std::size_t j = 0; j < num_struct_; ++j) {
    solution.objective += cost[j] * solution.x[j];
  }
  return solution;
}

Solution BoundedSimplex::maximize(std::span<const double> cost) {
  std::vector<double> negated(cost.begin(), cost.end());
  for (double& c : negated) c = -c;
  Solution solution = minimize(negated);
  solution.objective = -solution.objective;
  return solution;
}

}  // namespace taildep::lp
