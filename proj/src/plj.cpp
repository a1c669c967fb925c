#include "sud/plj.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sud {

namespace {

void validate_nodes(const std::vector<plj_node>& nodes) {
  if (nodes.size() < 2)
    throw validation_error("plj_function needs at least two breakpoints");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (!std::isfinite(nd.t) || !std::isfinite(nd.left) || !std::isfinite(nd.right))
      throw validation_error("plj_function: nonfinite node data");
    if (i > 0 && !(nodes[i - 1].t < nd.t))
      throw validation_error("plj_function: breakpoints must be strictly increasing");
  }
  if (nodes.front().left != nodes.front().right)
    throw validation_error("plj_function: no jump is representable at the left endpoint");
}

} // namespace

plj_function::plj_function(std::vector<plj_node> nodes) : nodes_(std::move(nodes)) {
  validate_nodes(nodes_);
}

plj_function plj_function::polyline(std::span<const double> ts, std::span<const double> values) {
  if (ts.size() != values.size())
    throw validation_error("polyline: ts and values must have equal length");
  std::vector<plj_node> nodes;
  nodes.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) nodes.push_back({ts[i], values[i], values[i]});
  return plj_function(std::move(nodes));
}

plj_function plj_function::linear(double a, double b, double va, double vb) {
  return plj_function({{a, va, va}, {b, vb, vb}});
}

plj_function plj_function::constant(double a, double b, double v) {
  return linear(a, b, v, v);
}

void plj_function::check_in_domain(double x) const {
  if (!(x >= a() && x <= b()))
    throw validation_error("evaluation point outside [" + std::to_string(a()) + ", " +
                           std::to_string(b()) + "]");
}

std::size_t plj_function::piece_index(double x) const {
  // largest i with t_i <= x, capped at the last piece
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const plj_node& nd) { return v < nd.t; });
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  return i == 0 ? 0 : i - 1;
}

double plj_function::value(double x) const {
  check_in_domain(x);
  std::size_t i = piece_index(x);
  if (nodes_[i].t == x) return nodes_[i].right;
  const plj_node& lo = nodes_[i];
  const plj_node& hi = nodes_[i + 1];
  double w = (x - lo.t) / (hi.t - lo.t);
  return lo.right + w * (hi.left - lo.right);
}

double plj_function::left_limit(double x) const {
  check_in_domain(x);
  std::size_t i = piece_index(x);
  if (nodes_[i].t == x) return i == 0 ? nodes_[0].right : nodes_[i].left;
  const plj_node& lo = nodes_[i];
  const plj_node& hi = nodes_[i + 1];
  double w = (x - lo.t) / (hi.t - lo.t);
  return lo.right + w * (hi.left - lo.right);
}

double plj_function::slope(std::size_t piece) const {
  const plj_node& lo = nodes_[piece];
  const plj_node& hi = nodes_[piece + 1];
  return (hi.left - lo.right) / (hi.t - lo.t);
}

std::vector<jump_info> plj_function::jumps() const {
  std::vector<jump_info> out;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    double j = nodes_[i].right - nodes_[i].left;
    if (j != 0.0) out.push_back({nodes_[i].t, j});
  }
  return out;
}

bool plj_function::is_continuous() const {
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].right != nodes_[i].left) return false;
  return true;
}

bool plj_function::is_nondecreasing() const {
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    if (nodes_[i + 1].left < nodes_[i].right) return false;
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].right < nodes_[i].left) return false;
  return true;
}

bool plj_function::same_domain(const plj_function& other) const {
  return a() == other.a() && b() == other.b();
}

double total_variation_value(const plj_function& phi) {
  const auto& nd = phi.nodes();
  double v = 0.0;
  for (std::size_t i = 1; i < nd.size(); ++i) {
    v += std::abs(nd[i].left - nd[i - 1].right); // linear piece
    v += std::abs(nd[i].right - nd[i].left);     // jump
  }
  return v;
}

plj_function total_variation(const plj_function& phi) {
  const auto& nd = phi.nodes();
  std::vector<plj_node> out;
  out.reserve(nd.size());
  double run = 0.0;
  out.push_back({nd[0].t, 0.0, 0.0});
  for (std::size_t i = 1; i < nd.size(); ++i) {
    run += std::abs(nd[i].left - nd[i - 1].right);
    double left = run;
    run += std::abs(nd[i].right - nd[i].left);
    out.push_back({nd[i].t, left, run});
  }
  return plj_function(std::move(out));
}

namespace {

// p and n are nondecreasing in exact arithmetic; rounding of the accumulated
// variation can leave dips of a few ulps, which this clears
plj_function make_monotone(const plj_function& f) {
  std::vector<plj_node> nodes = f.nodes();
  double run = nodes.front().right;
  for (auto& nd : nodes) {
    nd.left = std::max(nd.left, run);
    run = std::max(nd.right, nd.left);
    nd.right = run;
  }
  nodes.front().left = nodes.front().right;
  return plj_function(std::move(nodes));
}

} // namespace

jordan_decomposition jordan(const plj_function& phi) {
  plj_function ups = total_variation(phi);
  double fa = phi.value(phi.a());
  plj_function p = make_monotone(affine_combine(0.5, ups, 0.5, phi, -0.5 * fa));
  plj_function n = make_monotone(affine_combine(0.5, ups, -0.5, phi, 0.5 * fa));
  return {std::move(ups), std::move(p), std::move(n)};
}

sign_density::sign_density(std::vector<piece> pieces, std::vector<atom_sign> atoms)
    : pieces_(std::move(pieces)), atoms_(std::move(atoms)) {}

int sign_density::sign_at(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const atom_sign& a, double v) { return a.x < v; });
  if (it != atoms_.end() && it->x == x) return it->sign;
  auto pit = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                              [](double v, const piece& p) { return v < p.lo; });
  std::size_t i = pit == pieces_.begin() ? 0 : static_cast<std::size_t>(pit - pieces_.begin()) - 1;
  return pieces_[i].sign;
}

int sign_density::alternation_count() const {
  // walk pieces in order, inserting atom signs at their breakpoints
  int changes = 0;
  int prev = 0;
  std::size_t ai = 0;
  auto feed = [&](int s) {
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  };
  for (const auto& pc : pieces_) {
    while (ai < atoms_.size() && atoms_[ai].x <= pc.lo) feed(atoms_[ai++].sign);
    feed(pc.sign);
  }
  while (ai < atoms_.size()) feed(atoms_[ai++].sign);
  return changes;
}

sign_density make_sign_density(const plj_function& phi) {
  const auto& nd = phi.nodes();
  std::vector<sign_density::piece> pieces;
  for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
    double d = nd[i + 1].left - nd[i].right;
    int s = d < 0.0 ? -1 : +1; // zero slope carries +1
    bool atom_between = i > 0 && nd[i].right != nd[i].left;
    if (!pieces.empty() && pieces.back().sign == s && !atom_between)
      pieces.back().hi = nd[i + 1].t;
    else
      pieces.push_back({nd[i].t, nd[i + 1].t, s});
  }
  std::vector<sign_density::atom_sign> atoms;
  for (const auto& j : phi.jumps()) atoms.push_back({j.x, j.size < 0.0 ? -1 : +1});
  return sign_density(std::move(pieces), std::move(atoms));
}

double measure_of_interval(const plj_function& phi, double y, double x) {
  if (!(y >= phi.a() && x <= phi.b() && y < x))
    throw validation_error("measure_of_interval: need a <= y < x <= b");
  return phi.value(x) - phi.value(y);
}

plj_function normalize(const plj_function& phi) {
  double v = total_variation_value(phi);
  if (!(v > 0.0))
    throw degenerate_measure_error("normalize: zero total variation");
  return scale(phi, 1.0 / v);
}

plj_function scale(const plj_function& f, double s) {
  std::vector<plj_node> nodes = f.nodes();
  for (auto& nd : nodes) {
    nd.left *= s;
    nd.right *= s;
  }
  return plj_function(std::move(nodes));
}

plj_function affine_combine(double alpha, const plj_function& f, double beta,
                            const plj_function& g, double shift) {
  if (!f.same_domain(g))
    throw validation_error("affine_combine: domain mismatch");
  std::vector<double> ts;
  ts.reserve(f.nodes().size() + g.nodes().size());
  for (const auto& nd : f.nodes()) ts.push_back(nd.t);
  for (const auto& nd : g.nodes()) ts.push_back(nd.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<plj_node> nodes;
  nodes.reserve(ts.size());
  for (double t : ts) {
    double right = alpha * f.value(t) + beta * g.value(t) + shift;
    double left = alpha * f.left_limit(t) + beta * g.left_limit(t) + shift;
    nodes.push_back({t, left, right});
  }
  nodes.front().left = nodes.front().right;
  return plj_function(std::move(nodes));
}

} // namespace sud
