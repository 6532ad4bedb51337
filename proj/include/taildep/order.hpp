#pragma once

#include <optional>
#include <string_view>

#include "taildep/tdf.hpp"

namespace taildep {

inline constexpr double kDefaultOrderTolerance = 1e-9;

enum class Relation { Equal, Less, Greater, Incomparable };

std::string_view to_string(Relation relation);

struct Witness {
  double s;
  double first;   // Lambda_1(s)
  double second;  // Lambda_2(s)
};

struct OrderResult {
  Relation relation;
  /// Point where Lambda_1 <= Lambda_2 + tol fails (largest excess).
  std::optional<Witness> first_exceeds;
  /// Point where Lambda_2 <= Lambda_1 + tol fails (largest excess).
  std::optional<Witness> second_exceeds;
};

/// Pointwise tail dependence preorder. Differing grids are compared on the
/// union of their nodes, which is exact for piecewise-linear functions.
OrderResult compare(const TailDependenceFunction& first,
                    const TailDependenceFunction& second,
                    double tol = kDefaultOrderTolerance);

}  // namespace taildep
