#include "sud/convex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sud/block_merge.hpp"

namespace sud {

convex_target convex_target::from_weights(std::vector<Eigen::VectorXd> points,
                                          Eigen::VectorXd weights, std::optional<double> radius) {
  if (points.empty()) throw validation_error("convex_target: no points");
  if (static_cast<std::size_t>(weights.size()) != points.size())
    throw validation_error("convex_target: weights/points size mismatch");
  const auto dim = points.front().size();
  double sum = 0.0;
  double max_norm = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw validation_error("convex_target: mixed dimensions");
    if (!(weights[static_cast<Eigen::Index>(i)] > 0.0))
      throw validation_error("convex_target: weights must be positive");
    sum += weights[static_cast<Eigen::Index>(i)];
    max_norm = std::max(max_norm, points[i].norm());
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw validation_error("convex_target: weights must sum to 1");
  convex_target ct;
  ct.target = Eigen::VectorXd::Zero(dim);
  for (std::size_t i = 0; i < points.size(); ++i)
    ct.target += weights[static_cast<Eigen::Index>(i)] * points[i];
  ct.points = std::move(points);
  ct.weights = std::move(weights);
  ct.radius = radius.value_or(max_norm);
  if (ct.radius < max_norm)
    throw validation_error("convex_target: supplied radius smaller than a point norm");
  return ct;
}

finite_signed_measure convex_target::weight_measure() const {
  std::vector<atom> atoms;
  atoms.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    atoms.push_back({std::to_string(i), weights[static_cast<Eigen::Index>(i)], std::nullopt});
  return finite_signed_measure(std::move(atoms));
}

cesaro_result cesaro_approximate(const convex_target& ct, std::uint64_t n) {
  if (n == 0) throw validation_error("cesaro_approximate: N must be positive");
  atom_sequence seq = generate_finite(ct.weight_measure(), n);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ct.dimension()));
  for (std::uint32_t idx : seq.indices) sum += ct.points[idx];
  Eigen::VectorXd mean = sum / static_cast<double>(n);
  double error = (mean - ct.target).norm();
  double c = static_cast<double>(discrepancy_constant(ct.points.size()));
  double bound = 2.0 * ct.radius / static_cast<double>(n) * (1.0 + c);
  return {std::move(seq.indices), std::move(mean), error, bound};
}

namespace {

// lazily grown greedy schedule for one combination
struct combo_stream {
  convex_target ct;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint32_t> indices;

  explicit combo_stream(convex_target c) : ct(std::move(c)), counts(ct.points.size(), 0) {}

  const Eigen::VectorXd& point_at(std::uint64_t pos) {
    while (indices.size() < pos) {
      std::uint64_t step = indices.size() + 1;
      std::size_t best = 0;
      double best_deficit = -1.0;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        double deficit = static_cast<double>(step) * ct.weights[static_cast<Eigen::Index>(i)] -
                         static_cast<double>(counts[i]);
        if (deficit > best_deficit) {
          best_deficit = deficit;
          best = i;
        }
      }
      ++counts[best];
      indices.push_back(static_cast<std::uint32_t>(best));
    }
    return ct.points[indices[pos - 1]];
  }
};

} // namespace

std::vector<error_trace_point>
cesaro_limit_stream(const std::function<convex_target(std::size_t)>& combos,
                    const Eigen::VectorXd& limit, std::span<const std::uint64_t> eval_at) {
  if (eval_at.empty()) return {};
  std::uint64_t n_max = 0;
  for (auto n : eval_at) n_max = std::max(n_max, n);
  if (n_max == 0) throw validation_error("cesaro_limit_stream: evaluation lengths must be positive");

  std::vector<combo_stream> streams;
  auto ensure_stream = [&](std::size_t j) -> combo_stream& {
    while (streams.size() < j) {
      convex_target ct = combos(streams.size() + 1);
      if (ct.dimension() != static_cast<std::size_t>(limit.size()))
        throw validation_error("cesaro_limit_stream: combination dimension mismatch");
      streams.emplace_back(std::move(ct));
    }
    return streams[j - 1];
  };

  ensure_stream(1);
  std::vector<double> constants{
      static_cast<double>(discrepancy_constant(streams[0].ct.points.size()))};
  auto constant_for = [&](std::size_t j) {
    return static_cast<double>(discrepancy_constant(ensure_stream(j).ct.points.size()));
  };
  while (constants.size() < 2) constants.push_back(constant_for(constants.size() + 1));
  block_plan plan = block_plan::make(constants, 1);

  std::vector<std::uint64_t> sorted(eval_at.begin(), eval_at.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<error_trace_point> trace;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(limit.size());
  std::size_t next_eval = 0;
  for (std::uint64_t n = 1; n <= n_max && next_eval < sorted.size(); ++n) {
    while (plan.coverage() < n) plan.extend(constant_for(plan.constants().size() + 1));
    auto [block, pos] = plan.locate(n);
    sum += ensure_stream(block).point_at(pos);
    while (next_eval < sorted.size() && sorted[next_eval] == n) {
      trace.push_back({n, (sum / static_cast<double>(n) - limit).norm()});
      ++next_eval;
    }
  }
  return trace;
}

convex_target simplex_combination(const Eigen::VectorXd& target,
                                  const std::vector<Eigen::VectorXd>& vertices) {
  const Eigen::Index d = target.size();
  if (vertices.size() != static_cast<std::size_t>(d) + 1)
    throw validation_error("simplex_combination: need d+1 vertices in dimension d");
  Eigen::MatrixXd A(d + 1, d + 1);
  for (Eigen::Index c = 0; c <= d; ++c) {
    if (vertices[static_cast<std::size_t>(c)].size() != d)
      throw validation_error("simplex_combination: vertex dimension mismatch");
    A.block(0, c, d, 1) = vertices[static_cast<std::size_t>(c)];
    A(d, c) = 1.0;
  }
  Eigen::VectorXd rhs(d + 1);
  rhs.head(d) = target;
  rhs(d) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw validation_error("simplex_combination: degenerate simplex");
  Eigen::VectorXd lambda = lu.solve(rhs);

  std::vector<Eigen::VectorXd> kept_points;
  std::vector<double> kept_weights;
  double sum = 0.0;
  for (Eigen::Index i = 0; i <= d; ++i) {
    double w = lambda(i);
    if (w < -1e-10)
      throw validation_error("simplex_combination: target outside the simplex (coordinate " +
                             std::to_string(w) + ")");
    if (w < 1e-14) continue;
    kept_points.push_back(vertices[static_cast<std::size_t>(i)]);
    kept_weights.push_back(w);
    sum += w;
  }
  if (kept_points.empty())
    throw validation_error("simplex_combination: no positive barycentric coordinates");
  Eigen::VectorXd w(static_cast<Eigen::Index>(kept_weights.size()));
  for (std::size_t i = 0; i < kept_weights.size(); ++i)
    w[static_cast<Eigen::Index>(i)] = kept_weights[i] / sum;
  return convex_target::from_weights(std::move(kept_points), std::move(w));
}

} // namespace sud
