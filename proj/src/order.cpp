#include "taildep/order.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "taildep/error.hpp"

namespace taildep {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::Equal: return "equal";
    case Relation::Less: return "less";
    case Relation::Greater: return "greater";
    case Relation::Incomparable: return "incomparable";
  }
  return "unknown";
}

namespace {

std::vector<double> merged_nodes(std::size_t m1, std::size_t m2) {
  std::vector<double> nodes;
  if (m1 == m2) {
    nodes.resize(m1 + 1);
    for (std::size_t i = 0; i <= m1; ++i) {
      nodes[i] = static_cast<double>(i) / static_cast<double>(m1);
    }
    return nodes;
  }
  // Node i/m1 coincides with j/m2 iff i * m2 == j * m1; merge on the common
  // refinement l / lcm(m1, m2) to keep the comparison exact.
  const std::size_t l = std::lcm(m1, m2);
  const std::size_t step1 = l / m1;
  const std::size_t step2 = l / m2;
  for (std::size_t k = 0; k <= l; ++k) {
    if (k % step1 == 0 || k % step2 == 0) {
      nodes.push_back(static_cast<double>(k) / static_cast<double>(l));
    }
  }
  return nodes;
}

}  // namespace

OrderResult compare(const TailDependenceFunction& first,
                    const TailDependenceFunction& second, double tol) {
  if (!(tol >= 0.0)) fail(ErrorKind::Parameter, "tolerance must be >= 0");

  const auto nodes = merged_nodes(first.grid_size(), second.grid_size());
  std::optional<Witness> first_exceeds;
  std::optional<Witness> second_exceeds;
  double worst_first = tol;
  double worst_second = tol;
  bool equal = true;

  for (double s : nodes) {
    const double a = first.eval(s);
    const double b = second.eval(s);
    if (std::abs(a - b) > tol) equal = false;
    if (a - b > worst_first) {
      worst_first = a - b;
      first_exceeds = Witness{s, a, b};
    }
    if (b - a > worst_second) {
      worst_second = b - a;
      second_exceeds = Witness{s, a, b};
    }
  }

  OrderResult result{Relation::Incomparable, first_exceeds, second_exceeds};
  if (equal) {
    result.relation = Relation::Equal;
  } else if (!first_exceeds) {
    result.relation = Relation::Less;
  } else if (!second_exceeds) {
    result.relation = Relation::Greater;
  }
  return result;
}

}  // namespace taildep
