#pragma once

#include <functional>
#include <vector>

#include "sud/plj.hpp"

namespace sud {

/// Evaluation access to a BV function that need not be piecewise linear:
/// point values of the function and of its running variation, plus
/// enumeration of all jump points above a threshold. Exact plj-backed
/// oracles also expose their breakpoints so approximants can reproduce
/// them for free.
struct bv_oracle {
  double a;
  double b;
  std::function<double(double)> phi;
  std::function<double(double)> upsilon;
  std::function<std::vector<jump_info>(double threshold)> jumps_exceeding;
  std::vector<double> breakpoints; // interior breakpoints when known, else empty

  static bv_oracle from_plj(plj_function f);

  /// Increasing phi given as a callable; the variation is phi - phi(a) and
  /// there are no jumps.
  static bv_oracle from_increasing(double a, double b, std::function<double(double)> phi);
};

/// Result of one approximation level: a continuous polygonal phi_k together
/// with the increasing interpolants g, h of the positive/negative variation
/// samples (phi_k = g - h) and the Jordan decomposition of phi_k itself.
struct polygonal_approximation_result {
  plj_function phi_k;
  plj_function g;
  plj_function h;
  jordan_decomposition jd;
  std::vector<double> partition;
};

/// Builds the level-k polygonal approximant on a partition of mesh < 1/k that
/// contains every jump point of size > 1/k (each such jump also gets a
/// tight bracket node on its left so the jump mass is ramped over a
/// shrinking cell) and, when the oracle has at most 10k known breakpoints,
/// all of those breakpoints.
polygonal_approximation_result polygonal_approximation(const bv_oracle& oracle, int k);

} // namespace sud
