#include "sud/interval_ud.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "sud/rng.hpp"

namespace sud {

double van_der_corput(std::uint64_t n) {
  if (n == 0) throw validation_error("van_der_corput: index is 1-based");
  double u = 0.0, f = 0.5;
  while (n) {
    if (n & 1ULL) u += f;
    f *= 0.5;
    n >>= 1;
  }
  return u;
}

double generalized_inverse(const plj_function& g, double t, bool* clamped) {
  if (clamped) *clamped = false;
  if (t < 0.0 || t > 1.0) {
    if (clamped) *clamped = true;
    t = std::clamp(t, 0.0, 1.0);
  }
  const auto& nd = g.nodes();
  if (t <= nd.front().right) return g.a();
  // first node whose (right) value reaches t; right values are nondecreasing
  auto it = std::lower_bound(nd.begin(), nd.end(), t,
                             [](const plj_node& node, double v) { return node.right < v; });
  if (it == nd.end()) return g.b(); // t above the range (only by rounding)
  std::size_t j = static_cast<std::size_t>(it - nd.begin());
  const plj_node& hi = nd[j];
  const plj_node& lo = nd[j - 1];
  if (hi.left >= t) // reached inside the linear piece
    return lo.t + (t - lo.right) * (hi.t - lo.t) / (hi.left - lo.right);
  return hi.t; // the jump at hi.t absorbs t
}

std::vector<double> ud_continuous_increasing(const plj_function& phi, std::uint64_t n) {
  if (!phi.is_continuous())
    throw validation_error("ud_continuous_increasing: distribution function has jumps");
  if (!phi.is_nondecreasing())
    throw validation_error("ud_continuous_increasing: distribution function must be increasing");
  if (std::abs(phi.value(phi.a())) > 1e-12 || std::abs(phi.value(phi.b()) - 1.0) > 1e-12)
    throw validation_error("ud_continuous_increasing: endpoints must be 0 and 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i)
    out.push_back(generalized_inverse(phi, van_der_corput(i)));
  return out;
}

std::vector<double> ud_continuous_increasing(const std::function<double(double)>& phi, double a,
                                             double b, std::uint64_t n) {
  if (std::abs(phi(a)) > 1e-9 || std::abs(phi(b) - 1.0) > 1e-9)
    throw validation_error("ud_continuous_increasing: endpoints must be 0 and 1");
  auto invert = [&](double t) {
    if (t <= phi(a)) return a;
    double lo = a, hi = b;
    while (true) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (phi(mid) >= t)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };
  std::vector<double> out;
  out.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) out.push_back(invert(van_der_corput(i)));
  return out;
}

std::vector<signed_term> signed_sequence_polygonal(const plj_function& phi, std::uint64_t n) {
  double v = total_variation_value(phi);
  if (!(v > 0.0)) throw degenerate_measure_error("signed_sequence_polygonal: zero variation");
  if (std::abs(v - 1.0) > 1e-9)
    throw validation_error("signed_sequence_polygonal: total variation must be 1 (normalize first)");
  plj_function ups = total_variation(phi);
  sign_density dens = make_sign_density(phi);
  std::vector<signed_term> out;
  out.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    double x = generalized_inverse(ups, van_der_corput(i));
    out.push_back({x, dens.sign_at(x)});
  }
  return out;
}

namespace {

// aggregated samples with cumulative weights, for exact deviation scans
struct weighted_samples {
  std::vector<double> xs;  // unique, sorted
  std::vector<double> cum; // cum[i] = total weight of samples <= xs[i]

  weighted_samples(std::span<const double> points, std::span<const double> weights) {
    std::vector<std::pair<double, double>> pw(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) pw[i] = {points[i], weights[i]};
    std::sort(pw.begin(), pw.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    double run = 0.0;
    for (const auto& [x, w] : pw) {
      run += w;
      if (!xs.empty() && xs.back() == x)
        cum.back() = run;
      else {
        xs.push_back(x);
        cum.push_back(run);
      }
    }
  }

  double weight_less(double c) const {
    auto it = std::lower_bound(xs.begin(), xs.end(), c);
    return it == xs.begin() ? 0.0 : cum[static_cast<std::size_t>(it - xs.begin()) - 1];
  }
  double weight_leq(double c) const {
    auto it = std::upper_bound(xs.begin(), xs.end(), c);
    return it == xs.begin() ? 0.0 : cum[static_cast<std::size_t>(it - xs.begin()) - 1];
  }
};

struct deviation_range {
  double max_abs = 0.0;
  double max_val = 0.0;
  double min_val = 0.0;
};

// one-sided values of Delta(x) = empirical weighted CDF - target increment,
// scanned at every sample point and every target breakpoint
deviation_range scan_deviation(std::span<const double> xs, std::span<const double> weights,
                               std::uint64_t n, const plj_function& target) {
  if (xs.size() != weights.size())
    throw validation_error("discrepancy: points/weights size mismatch");
  if (n == 0) throw validation_error("discrepancy: empty prefix");
  const double a = target.a(), b = target.b();
  for (double x : xs)
    if (!(x >= a && x <= b)) throw validation_error("discrepancy: sample outside the domain");

  weighted_samples samples(xs, weights);
  std::vector<double> cands;
  cands.reserve(samples.xs.size() + target.nodes().size());
  for (const auto& nd : target.nodes()) cands.push_back(nd.t);
  cands.insert(cands.end(), samples.xs.begin(), samples.xs.end());
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  const double fa = target.value(a);
  const double nd = static_cast<double>(n);
  deviation_range r;
  auto feed = [&](double v) {
    r.max_abs = std::max(r.max_abs, std::abs(v));
    r.max_val = std::max(r.max_val, v);
    r.min_val = std::min(r.min_val, v);
  };
  for (double c : cands) {
    double s_less = samples.weight_less(c) / nd;
    double s_leq = samples.weight_leq(c) / nd;
    double f_left = target.left_limit(c) - fa;
    double f_at = target.value(c) - fa;
    if (c > a) feed(s_less - f_left);
    feed(s_less - f_at);
    if (c < b) feed(s_leq - f_at);
  }
  return r;
}

} // namespace

double star_discrepancy_weighted(std::span<const double> xs, std::span<const double> weights,
                                 std::uint64_t n, const plj_function& target) {
  return scan_deviation(xs, weights, n, target).max_abs;
}

double interval_discrepancy_weighted(std::span<const double> xs, std::span<const double> weights,
                                     std::uint64_t n, const plj_function& target) {
  auto r = scan_deviation(xs, weights, n, target);
  return r.max_val - r.min_val;
}

namespace {

std::pair<std::vector<double>, std::vector<double>>
split_terms(std::span<const signed_term> prefix) {
  std::vector<double> xs(prefix.size()), ws(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    xs[i] = prefix[i].x;
    ws[i] = static_cast<double>(prefix[i].sign);
  }
  return {std::move(xs), std::move(ws)};
}

} // namespace

double star_discrepancy_signed(std::span<const signed_term> prefix, const plj_function& target) {
  auto [xs, ws] = split_terms(prefix);
  return star_discrepancy_weighted(xs, ws, prefix.size(), target);
}

double interval_discrepancy_signed(std::span<const signed_term> prefix,
                                   const plj_function& target) {
  auto [xs, ws] = split_terms(prefix);
  return interval_discrepancy_weighted(xs, ws, prefix.size(), target);
}

double star_discrepancy_points(std::span<const double> xs, const std::function<double(double)>& cdf,
                               double a, double b) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double fa = cdf(a);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t below_b = sorted.size();
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    double f = cdf(sorted[i]) - fa;
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    if (sorted[i] < b)
      d = std::max(d, std::abs(static_cast<double>(j) / n - f));
    else
      below_b = i;
    i = j;
  }
  // value at x = b counts the samples strictly below b
  d = std::max(d, std::abs(static_cast<double>(below_b) / n - (cdf(b) - fa)));
  return d;
}

double schedule_bound(int alternations, std::uint64_t m) {
  return 2.0 * (alternations + 1) * std::log(static_cast<double>(m) + 1.0) /
         (static_cast<double>(m) * std::log(2.0));
}

std::uint64_t schedule_threshold(int alternations, std::size_t k, std::uint64_t floor_exclusive) {
  const double cap = 1.0 / static_cast<double>(k);
  std::uint64_t lo = floor_exclusive + 1;
  if (schedule_bound(alternations, lo) <= cap) return lo;
  std::uint64_t hi = lo;
  while (schedule_bound(alternations, hi) > cap) hi *= 2;
  // smallest admissible in (lo, hi]; the bound decreases in m
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (schedule_bound(alternations, mid) <= cap)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::size_t arrangement_schedule::approximant_for_block(std::uint64_t m) const {
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), m);
  return static_cast<std::size_t>(it - thresholds.begin()) + 1;
}

arrangement_schedule make_arrangement_schedule(std::span<const int> alternation_counts,
                                               std::size_t k_max) {
  if (k_max == 0 || alternation_counts.size() < k_max)
    throw validation_error("arrangement_schedule: need an alternation count per level");
  arrangement_schedule sched;
  std::uint64_t prev = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    prev = schedule_threshold(alternation_counts[k - 1], k, prev);
    sched.thresholds.push_back(prev);
  }
  return sched;
}

namespace {

struct diagonal_state {
  bv_oracle oracle;
  struct level {
    plj_function distribution; // normalized approximant
    plj_function variation;    // its variation function, 1 at b
    sign_density density;
    int alternations;
  };
  std::vector<level> levels;
  std::vector<std::uint64_t> thresholds;
  int next_parameter = 1;

  explicit diagonal_state(bv_oracle o) : oracle(std::move(o)) {}

  const level& ensure_level(std::size_t k) {
    while (levels.size() < k) {
      // an approximant can vanish when the mesh only samples the target at
      // roots of its oscillation; a finer level still serves this slot
      int tries = 0;
      for (;;) {
        auto pa = polygonal_approximation(oracle, next_parameter++);
        if (total_variation_value(pa.phi_k) == 0.0) {
          if (++tries >= 64)
            throw numeric_error("diagonal_signed_sequence: approximants stay degenerate");
          continue;
        }
        plj_function dist = normalize(pa.phi_k);
        plj_function var = total_variation(dist);
        sign_density dens = make_sign_density(dist);
        int alt = dens.alternation_count();
        levels.push_back({std::move(dist), std::move(var), std::move(dens), alt});
        break;
      }
    }
    return levels[k - 1];
  }

  std::size_t level_for_block(std::uint64_t m) {
    while (thresholds.empty() || thresholds.back() <= m) {
      std::size_t k = thresholds.size() + 1;
      int alt = ensure_level(k).alternations;
      std::uint64_t prev = thresholds.empty() ? 0 : thresholds.back();
      thresholds.push_back(schedule_threshold(alt, k, prev));
    }
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), m);
    return static_cast<std::size_t>(it - thresholds.begin()) + 1;
  }

  signed_term term(std::uint64_t n) {
    // block m holds stream positions (m-1)m/2 + 1 .. m(m+1)/2
    auto m = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
    while (m * (m + 1) / 2 < n) ++m;
    while (m > 1 && (m - 1) * m / 2 >= n) --m;
    std::uint64_t i = n - (m - 1) * m / 2;
    const level& lv = ensure_level(level_for_block(m));
    double x = generalized_inverse(lv.variation, van_der_corput(i));
    return {x, lv.density.sign_at(x)};
  }
};

} // namespace

signed_sequence diagonal_signed_sequence(const bv_oracle& oracle) {
  double vb = oracle.upsilon(oracle.b) - oracle.upsilon(oracle.a);
  if (!(vb > 0.0)) throw degenerate_measure_error("diagonal_signed_sequence: zero total variation");
  if (std::abs(vb - 1.0) > 1e-9)
    throw validation_error("diagonal_signed_sequence: total variation must be 1 (normalize first)");
  auto state = std::make_shared<diagonal_state>(oracle);
  return signed_sequence([state](std::uint64_t n) { return state->term(n); });
}

signed_sequence iid_sampler(const plj_function& phi, std::uint64_t seed) {
  double v = total_variation_value(phi);
  if (!(v > 0.0)) throw degenerate_measure_error("iid_sampler: zero total variation");
  if (std::abs(v - 1.0) > 1e-9)
    throw validation_error("iid_sampler: total variation must be 1 (normalize first)");
  struct sampler_state {
    plj_function variation;
    sign_density density;
    counter_rng rng;
  };
  auto state = std::make_shared<sampler_state>(
      sampler_state{total_variation(phi), make_sign_density(phi), counter_rng(seed)});
  return signed_sequence([state](std::uint64_t n) {
    double x = generalized_inverse(state->variation, state->rng.uniform(n));
    return signed_term{x, state->density.sign_at(x)};
  });
}

empirical_functionals_result empirical_functionals(std::span<const signed_term> prefix,
                                                   const std::function<double(double)>& f) {
  if (prefix.empty()) throw validation_error("empirical_functionals: empty prefix");
  double sum_abs = 0.0, sum_signed = 0.0, sum_pos = 0.0, sum_neg = 0.0;
  for (const auto& t : prefix) {
    double v = f(t.x);
    double e = static_cast<double>(t.sign);
    sum_abs += v;
    sum_signed += e * v;
    sum_pos += (1.0 + e) * v;
    sum_neg += (1.0 - e) * v;
  }
  double n = static_cast<double>(prefix.size());
  return {sum_abs / n, sum_signed / n, sum_pos / (2.0 * n), sum_neg / (2.0 * n)};
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw numeric_error("riemann_stieltjes: quadrature failed to converge");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double riemann_stieltjes(const std::function<double(double)>& f, const plj_function& phi) {
  const auto& nodes = phi.nodes();
  const double tol = 1e-10 / static_cast<double>(nodes.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double s = phi.slope(i);
    if (s != 0.0) total += s * integrate(f, nodes[i].t, nodes[i + 1].t, tol);
  }
  for (const auto& j : phi.jumps()) total += j.size * f(j.x);
  return total;
}

} // namespace sud
