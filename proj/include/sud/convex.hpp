#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sud/finite_ud.hpp"

namespace sud {

/// A point of a convex hull given explicitly as a finite combination:
/// target = sum weights[i] * points[i] with positive weights summing to one,
/// plus the radius of a ball around the origin containing every point.
struct convex_target {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd weights;
  Eigen::VectorXd target;
  double radius;

  static convex_target from_weights(std::vector<Eigen::VectorXd> points, Eigen::VectorXd weights,
                                    std::optional<double> radius = std::nullopt);

  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }

  finite_signed_measure weight_measure() const;
};

struct cesaro_result {
  std::vector<std::uint32_t> indices; // into convex_target::points
  Eigen::VectorXd mean;
  double error; // Euclidean distance between the running mean and the target
  double bound; // (2R/N)(1 + C(m))
};

/// Schedules the weight measure over the support points and averages the
/// emitted points; the returned error always sits below the bound.
cesaro_result cesaro_approximate(const convex_target& ct, std::uint64_t n);

struct error_trace_point {
  std::uint64_t n;
  double error;
};

/// Approach a limit point through a sequence of convex combinations: the
/// per-combination sequences are concatenated by a block plan whose constants
/// come from the combination support sizes. `combos` supplies the j-th
/// combination (1-based) and must be callable for every block the requested
/// evaluation lengths reach.
std::vector<error_trace_point>
cesaro_limit_stream(const std::function<convex_target(std::size_t)>& combos,
                    const Eigen::VectorXd& limit, std::span<const std::uint64_t> eval_at);

/// Barycentric coordinates of a point inside a nondegenerate simplex given by
/// d+1 vertices in d dimensions; atoms with zero coordinates are dropped.
convex_target simplex_combination(const Eigen::VectorXd& target,
                                  const std::vector<Eigen::VectorXd>& vertices);

} // namespace sud
