#include "sud/bv_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <string>

namespace sud {

bv_oracle bv_oracle::from_plj(plj_function f) {
  auto shared = std::make_shared<plj_function>(std::move(f));
  auto ups = std::make_shared<plj_function>(total_variation(*shared));
  bv_oracle o;
  o.a = shared->a();
  o.b = shared->b();
  o.phi = [shared](double x) { return shared->value(x); };
  o.upsilon = [ups](double x) { return ups->value(x); };
  o.jumps_exceeding = [shared](double threshold) {
    std::vector<jump_info> out;
    for (const auto& j : shared->jumps())
      if (std::abs(j.size) > threshold) out.push_back(j);
    return out;
  };
  const auto& nodes = shared->nodes();
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) o.breakpoints.push_back(nodes[i].t);
  return o;
}

bv_oracle bv_oracle::from_increasing(double a, double b, std::function<double(double)> phi) {
  bv_oracle o;
  o.a = a;
  o.b = b;
  double fa = phi(a);
  o.upsilon = [phi, fa](double x) { return phi(x) - fa; };
  o.phi = std::move(phi);
  o.jumps_exceeding = [](double) { return std::vector<jump_info>{}; };
  return o;
}

namespace {

std::vector<double> build_partition(const bv_oracle& oracle, int k) {
  const double a = oracle.a, b = oracle.b, len = b - a;
  // dyadic cell count, strictly finer than 1/k
  std::uint64_t cells = 1;
  while (len / static_cast<double>(cells) >= 1.0 / k) cells *= 2;

  std::set<double> nodes;
  nodes.insert(a);
  nodes.insert(b);
  for (std::uint64_t i = 1; i < cells; ++i)
    nodes.insert(a + len * (static_cast<double>(i) / static_cast<double>(cells)));

  std::vector<double> specials;
  for (const auto& j : oracle.jumps_exceeding(1.0 / k))
    if (j.x > a && j.x <= b) specials.push_back(j.x);
  if (oracle.breakpoints.size() <= static_cast<std::size_t>(10 * k))
    for (double t : oracle.breakpoints)
      if (t > a && t < b) specials.push_back(t);
  for (double s : specials) nodes.insert(s);

  // bracket each large jump from the left so its mass ramps over a cell of
  // width ~1/(4k^2) instead of a full mesh cell
  for (const auto& j : oracle.jumps_exceeding(1.0 / k)) {
    if (!(j.x > a && j.x <= b)) continue;
    auto it = nodes.find(j.x);
    double prev = it == nodes.begin() ? a : *std::prev(it);
    double w = len / (4.0 * k * k);
    double bracket = std::max(j.x - w, 0.5 * (prev + j.x));
    if (bracket > prev && bracket < j.x) nodes.insert(bracket);
  }

  std::vector<double> out(nodes.begin(), nodes.end());
  // drop near-coincident points (keep the later one, which is the special)
  std::vector<double> cleaned;
  cleaned.reserve(out.size());
  const double min_gap = len * 1e-12;
  for (double t : out) {
    if (!cleaned.empty() && t - cleaned.back() < min_gap) {
      if (cleaned.size() > 1) cleaned.back() = t; // never move the endpoint a
    } else {
      cleaned.push_back(t);
    }
  }
  if (cleaned.back() != b) cleaned.back() = b;
  return cleaned;
}

} // namespace

polygonal_approximation_result polygonal_approximation(const bv_oracle& oracle, int k) {
  if (k < 1) throw validation_error("polygonal_approximation: k must be >= 1");
  std::vector<double> ts = build_partition(oracle, k);

  double fa = oracle.phi(oracle.a);
  double ua = oracle.upsilon(oracle.a);
  if (std::abs(ua) > 1e-9)
    throw oracle_error("oracle variation does not vanish at the left endpoint");

  std::vector<double> gs(ts.size()), hs(ts.size());
  double prev_u = 0.0;
  const double tol = 1e-12;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double u = oracle.upsilon(ts[i]) - ua;
    if (u < prev_u - tol * std::max(1.0, std::abs(prev_u)))
      throw oracle_error("oracle variation sample decreases at t=" + std::to_string(ts[i]));
    u = std::max(u, prev_u);
    prev_u = u;
    double f = oracle.phi(ts[i]) - fa;
    gs[i] = 0.5 * (u + f);
    hs[i] = 0.5 * (u - f);
  }
  // clear float dust so g and h are exactly nondecreasing
  for (std::size_t i = 1; i < ts.size(); ++i) {
    gs[i] = std::max(gs[i], gs[i - 1]);
    hs[i] = std::max(hs[i], hs[i - 1]);
  }

  plj_function g = plj_function::polyline(ts, gs);
  plj_function h = plj_function::polyline(ts, hs);
  plj_function phi_k = affine_combine(1.0, g, -1.0, h);
  jordan_decomposition jd = jordan(phi_k);
  return {std::move(phi_k), std::move(g), std::move(h), std::move(jd), std::move(ts)};
}

} // namespace sud
