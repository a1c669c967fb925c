#include "sud/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "sud/block_merge.hpp"
#include "sud/convex.hpp"
#include "sud/finite_ud.hpp"
#include "sud/interval_ud.hpp"
#include "sud/rng.hpp"

namespace sud::verify {

bool suite_result::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json suite_result::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", suite}, {"passed", passed()}, {"checks", std::move(checks_json)}};
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

sequential_rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return sequential_rng(splitmix64(seed) ^ splitmix64(trial * 0x9E3779B97F4A7C15ULL));
}

finite_signed_measure random_probability(sequential_rng& rng, std::size_t m, bool rational) {
  std::vector<double> w(m);
  double sum = 0.0;
  if (rational) {
    for (auto& v : w) {
      v = 1.0 + static_cast<double>(rng.next_below(9));
      sum += v;
    }
  } else {
    for (auto& v : w) {
      v = rng.next_uniform() + 1e-3;
      sum += v;
    }
  }
  std::vector<atom> atoms;
  atoms.reserve(m);
  for (std::size_t i = 0; i < m; ++i) atoms.push_back({std::to_string(i), w[i] / sum, std::nullopt});
  return finite_signed_measure(std::move(atoms));
}

/// Deterministic parallel sweep: results are merged in trial order.
template <typename R, typename Fn, typename Merge>
R parallel_sweep(std::uint64_t trials, R init, Fn per_trial, Merge merge) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (trials < 2 * workers) workers = 1;
  std::vector<std::future<R>> futs;
  std::uint64_t chunk = (trials + workers - 1) / workers;
  for (unsigned wk = 0; wk < workers; ++wk) {
    std::uint64_t lo = wk * chunk, hi = std::min<std::uint64_t>(trials, lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [=]() {
      R acc = init;
      for (std::uint64_t t = lo; t < hi; ++t) acc = merge(acc, per_trial(t));
      return acc;
    }));
  }
  R acc = init;
  for (auto& f : futs) acc = merge(acc, f.get());
  return acc;
}

// ---- interval corpus --------------------------------------------------

plj_function tent() {
  return plj_function::polyline(std::vector<double>{0.0, 0.5, 1.0},
                                std::vector<double>{0.0, 0.5, 0.0});
}

// +1/2 at 1/3 and -1/2 at 2/3
plj_function two_jump_step() {
  return plj_function({{0.0, 0.0, 0.0},
                       {1.0 / 3.0, 0.0, 0.5},
                       {2.0 / 3.0, 0.5, 0.0},
                       {1.0, 0.0, 0.0}});
}

// slope +1 on [0,1/2], jump -1/2 at 3/4
plj_function ramp_plus_jump() {
  return plj_function({{0.0, 0.0, 0.0},
                       {0.5, 0.5, 0.5},
                       {0.75, 0.5, 0.0},
                       {1.0, 0.0, 0.0}});
}

plj_function plateaued_ramp() {
  return plj_function::polyline(std::vector<double>{0.0, 0.25, 0.75, 1.0},
                                std::vector<double>{0.0, 0.5, 0.5, 1.0});
}

// slope +1 on [0,0.7], slope -1 on [0.7,1]; positive mass 0.7
plj_function skew_tent() {
  return plj_function::polyline(std::vector<double>{0.0, 0.7, 1.0},
                                std::vector<double>{0.0, 0.7, 0.4});
}

struct probe_stats {
  double max_err_unsigned = 0.0;
  double max_err_signed = 0.0;
  double sign_mean_err = 0.0;
  double max_identity_gap = 0.0;
  bool all_plus = true;
};

probe_stats probe_errors(std::span<const signed_term> prefix, const plj_function& phi,
                         const plj_function& ups, std::span<const double> probes) {
  std::vector<std::pair<double, int>> sorted(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) sorted[i] = {prefix[i].x, prefix[i].sign};
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> xs(sorted.size());
  std::vector<double> cum_sign(sorted.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    xs[i] = sorted[i].first;
    cum_sign[i + 1] = cum_sign[i] + sorted[i].second;
  }
  probe_stats st;
  const double n = static_cast<double>(prefix.size());
  for (double p : probes) {
    auto it = std::lower_bound(xs.begin(), xs.end(), p); // first >= p, counts x < p
    std::size_t k = static_cast<std::size_t>(it - xs.begin());
    double emp_u = static_cast<double>(k) / n;
    double emp_s = cum_sign[k] / n;
    st.max_err_unsigned = std::max(st.max_err_unsigned, std::abs(emp_u - ups.value(p)));
    st.max_err_signed = std::max(st.max_err_signed, std::abs(emp_s - phi.value(p)));
  }
  // running functional identities for f(x) = x, checked at every prefix length
  double sum_abs = 0.0, sum_signed = 0.0, sum_pos = 0.0, sum_neg = 0.0, sum_eps = 0.0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    double v = prefix[i].x;
    double e = prefix[i].sign;
    if (prefix[i].sign != 1) st.all_plus = false;
    sum_abs += v;
    sum_signed += e * v;
    sum_pos += (1.0 + e) * v;
    sum_neg += (1.0 - e) * v;
    sum_eps += e;
    double nn = static_cast<double>(i + 1);
    double ga = std::abs(sum_pos / (2.0 * nn) - 0.5 * (sum_abs / nn + sum_signed / nn));
    double gb = std::abs(sum_neg / (2.0 * nn) - 0.5 * (sum_abs / nn - sum_signed / nn));
    st.max_identity_gap = std::max({st.max_identity_gap, ga, gb});
  }
  double mass = phi.value(phi.b()) - phi.value(phi.a());
  st.sign_mean_err = std::abs(sum_eps / n - mass);
  return st;
}

// random plj target on [0,1] with unit variation
plj_function random_unit_target(sequential_rng& rng, bool on_grid) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t interior = 1 + rng.next_below(5);
    std::vector<double> ts{0.0};
    for (std::size_t i = 0; i < interior; ++i) {
      double t = on_grid ? static_cast<double>(1 + rng.next_below(999999)) / 1e6
                         : rng.next_uniform();
      ts.push_back(t);
    }
    ts.push_back(1.0);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.size() < 3 || ts.front() != 0.0 || ts.back() != 1.0) continue;
    std::vector<plj_node> nodes;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double left = 2.0 * rng.next_uniform() - 1.0;
      bool jump = i > 0 && i + 1 < ts.size() && rng.next_below(2) == 0;
      double right = jump ? 2.0 * rng.next_uniform() - 1.0 : left;
      if (i == 0) left = right;
      nodes.push_back({ts[i], left, right});
    }
    nodes.front().left = nodes.front().right = 0.0;
    plj_function f(std::move(nodes));
    if (total_variation_value(f) < 1e-6) continue;
    return normalize(f);
  }
  throw numeric_error("random_unit_target: generation failed");
}

// brute-force deviation extrema over a dense grid (samples and breakpoints
// are expected to lie on the grid); independent linear sweep over the target
struct grid_extrema {
  double max_abs;
  double osc;
};

grid_extrema grid_deviation_oracle(std::span<const double> xs, std::span<const double> ws,
                                   std::uint64_t n, const plj_function& target,
                                   std::uint64_t cells) {
  std::vector<std::pair<double, double>> pw(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pw[i] = {xs[i], ws[i]};
  std::sort(pw.begin(), pw.end());
  const auto& nodes = target.nodes();
  const double fa = nodes.front().right;
  const double nn = static_cast<double>(n);

  double max_abs = 0.0, max_v = 0.0, min_v = 0.0;
  auto feed = [&](double v) {
    max_abs = std::max(max_abs, std::abs(v));
    max_v = std::max(max_v, v);
    min_v = std::min(min_v, v);
  };

  std::size_t sample_i = 0; // samples consumed (x < current grid point)
  std::size_t node_i = 0;
  double w_less = 0.0;
  for (std::uint64_t g = 0; g <= cells; ++g) {
    double c = static_cast<double>(g) / static_cast<double>(cells);
    while (sample_i < pw.size() && pw[sample_i].first < c) w_less += pw[sample_i++].second;
    double w_leq = w_less;
    std::size_t ahead = sample_i;
    while (ahead < pw.size() && pw[ahead].first == c) w_leq += pw[ahead++].second;
    while (node_i + 1 < nodes.size() && nodes[node_i + 1].t <= c) ++node_i;
    double f_at, f_left;
    if (nodes[node_i].t == c) {
      f_at = nodes[node_i].right;
      f_left = node_i == 0 ? nodes[0].right : nodes[node_i].left;
    } else {
      double t0 = nodes[node_i].t, t1 = nodes[node_i + 1].t;
      double v0 = nodes[node_i].right, v1 = nodes[node_i + 1].left;
      f_at = v0 + (v1 - v0) * (c - t0) / (t1 - t0);
      f_left = f_at;
    }
    double s_less = w_less / nn, s_leq = w_leq / nn;
    if (g > 0) feed(s_less - (f_left - fa));
    feed(s_less - (f_at - fa));
    if (g < cells) feed(s_leq - (f_at - fa));
  }
  return {max_abs, max_v - min_v};
}

} // namespace

// ---- suite: lemma1 ----------------------------------------------------

suite_result suite_lemma1(std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) trials = 200;
  const std::uint64_t n_max = 4096;
  struct acc {
    double max_ratio = 0.0;
    double max_atom_dev = 0.0;
    std::uint64_t violations = 0;
  };
  acc result = parallel_sweep<acc>(
      trials, acc{},
      [&](std::uint64_t t) {
        acc a;
        auto rng = trial_rng(seed, t);
        std::size_t m = 2 + rng.next_below(11);
        auto mu = random_probability(rng, m, t % 2 == 0);
        double c = static_cast<double>(discrepancy_constant(m));
        std::vector<std::uint64_t> counts(m, 0);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
          std::size_t best = 0;
          double best_deficit = -1.0;
          for (std::size_t i = 0; i < m; ++i) {
            double deficit =
                static_cast<double>(n) * mu.at(i).weight - static_cast<double>(counts[i]);
            if (deficit > best_deficit) {
              best_deficit = deficit;
              best = i;
            }
          }
          ++counts[best];
          double disc = subset_discrepancy_from_counts(counts, mu, n);
          double ratio = disc * static_cast<double>(n) / c;
          a.max_ratio = std::max(a.max_ratio, ratio);
          if (disc > c / static_cast<double>(n)) ++a.violations;
          for (std::size_t i = 0; i < m; ++i)
            a.max_atom_dev = std::max(a.max_atom_dev,
                                      std::abs(static_cast<double>(counts[i]) -
                                               static_cast<double>(n) * mu.at(i).weight));
        }
        return a;
      },
      [](acc l, acc r) {
        return acc{std::max(l.max_ratio, r.max_ratio), std::max(l.max_atom_dev, r.max_atom_dev),
                   l.violations + r.violations};
      });

  suite_result sr{"lemma1", {}};
  sr.checks.push_back({"subset discrepancy <= C(mu)/N on " + std::to_string(trials) +
                           " random measures, N <= 4096",
                       result.violations == 0,
                       "violations=" + std::to_string(result.violations) +
                           " max (N*disc)/C=" + fmt(result.max_ratio) +
                           " max per-atom deviation=" + fmt(result.max_atom_dev)});
  return sr;
}

// ---- suite: prop1 -----------------------------------------------------

suite_result suite_prop1(std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) trials = 200;
  const std::uint64_t n_max = 4096;
  const std::size_t fns = 20;
  struct acc {
    double max_ratio2 = 0.0; // gap / (2C/N)
    double max_ratio3 = 0.0; // gap / ((2/N)(1+C))
    std::uint64_t violations = 0;
  };
  acc result = parallel_sweep<acc>(
      trials, acc{},
      [&](std::uint64_t t) {
        acc a;
        auto rng = trial_rng(seed, t);
        std::size_t m = 2 + rng.next_below(11);
        auto mu = random_probability(rng, m, t % 2 == 0);
        double c = static_cast<double>(discrepancy_constant(m));
        std::vector<std::vector<double>> f(fns, std::vector<double>(m));
        for (auto& fi : f)
          for (auto& v : fi) v = 2.0 * rng.next_uniform() - 1.0;
        std::vector<double> integral(fns, 0.0), run_sum(fns, 0.0);
        for (std::size_t q = 0; q < fns; ++q)
          for (std::size_t i = 0; i < m; ++i) integral[q] += f[q][i] * mu.at(i).weight;
        std::vector<std::uint64_t> counts(m, 0);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
          std::size_t best = 0;
          double best_deficit = -1.0;
          for (std::size_t i = 0; i < m; ++i) {
            double deficit =
                static_cast<double>(n) * mu.at(i).weight - static_cast<double>(counts[i]);
            if (deficit > best_deficit) {
              best_deficit = deficit;
              best = i;
            }
          }
          ++counts[best];
          double nd = static_cast<double>(n);
          for (std::size_t q = 0; q < fns; ++q) {
            run_sum[q] += f[q][best];
            double gap = std::abs(run_sum[q] / nd - integral[q]);
            double bound2 = 2.0 * c / nd;
            double bound3 = 2.0 / nd * (1.0 + c);
            a.max_ratio2 = std::max(a.max_ratio2, gap / bound2);
            a.max_ratio3 = std::max(a.max_ratio3, gap / bound3);
            if (gap > bound2 || gap > bound3) ++a.violations;
          }
        }
        return a;
      },
      [](acc l, acc r) {
        return acc{std::max(l.max_ratio2, r.max_ratio2), std::max(l.max_ratio3, r.max_ratio3),
                   l.violations + r.violations};
      });

  suite_result sr{"prop1", {}};
  sr.checks.push_back(
      {"mean-vs-integral gap within both bounds, 20 functions per measure",
       result.violations == 0,
       "violations=" + std::to_string(result.violations) + " max gap/(2C/N)=" +
           fmt(result.max_ratio2) + " max gap/((2/N)(1+C))=" + fmt(result.max_ratio3)});
  return sr;
}

// ---- suite: theorem2 --------------------------------------------------

suite_result suite_theorem2(std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) trials = 100;
  const std::uint64_t n_max = 4096;
  struct acc {
    double max_ratio = 0.0;
    std::uint64_t violations = 0;
  };
  acc result = parallel_sweep<acc>(
      trials, acc{},
      [&](std::uint64_t t) {
        acc a;
        auto rng = trial_rng(seed, t);
        Eigen::Index d = static_cast<Eigen::Index>(2 + rng.next_below(15));
        std::size_t m = 1 + rng.next_below(10);
        std::vector<Eigen::VectorXd> pts(m, Eigen::VectorXd(d));
        for (auto& p : pts)
          for (Eigen::Index i = 0; i < d; ++i) p[i] = 2.0 * rng.next_uniform() - 1.0;
        std::vector<double> w(m);
        double sum = 0.0;
        for (auto& v : w) {
          v = rng.next_uniform() + 1e-3;
          sum += v;
        }
        Eigen::VectorXd weights(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) weights[static_cast<Eigen::Index>(i)] = w[i] / sum;
        auto ct = convex_target::from_weights(pts, weights);
        double c = static_cast<double>(discrepancy_constant(m));

        std::vector<std::uint64_t> counts(m, 0);
        Eigen::VectorXd run = Eigen::VectorXd::Zero(d);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
          std::size_t best = 0;
          double best_deficit = -1.0;
          for (std::size_t i = 0; i < m; ++i) {
            double deficit = static_cast<double>(n) * ct.weights[static_cast<Eigen::Index>(i)] -
                             static_cast<double>(counts[i]);
            if (deficit > best_deficit) {
              best_deficit = deficit;
              best = i;
            }
          }
          ++counts[best];
          run += ct.points[best];
          double err = (run / static_cast<double>(n) - ct.target).norm();
          double bound = 2.0 * ct.radius / static_cast<double>(n) * (1.0 + c);
          a.max_ratio = std::max(a.max_ratio, err / bound);
          if (err > bound) ++a.violations;
        }
        return a;
      },
      [](acc l, acc r) {
        return acc{std::max(l.max_ratio, r.max_ratio), l.violations + r.violations};
      });

  suite_result sr{"theorem2", {}};
  sr.checks.push_back({"||mean_N - x|| <= (2R/N)(1+C) on random hull targets, N <= 4096",
                       result.violations == 0,
                       "violations=" + std::to_string(result.violations) +
                           " max err/bound=" + fmt(result.max_ratio)});
  return sr;
}

// ---- suite: theorem1 (merged-sequence convergence) ----------------------

namespace {

// lazily extended greedy schedule over explicit weights
struct greedy_stream {
  std::vector<double> weights;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint32_t> indices;

  explicit greedy_stream(std::vector<double> w) : weights(std::move(w)), counts(weights.size(), 0) {}

  std::uint32_t at(std::uint64_t pos) {
    while (indices.size() < pos) {
      std::uint64_t step = indices.size() + 1;
      std::size_t best = 0;
      double best_deficit = -1.0;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        double deficit =
            static_cast<double>(step) * weights[i] - static_cast<double>(counts[i]);
        if (deficit > best_deficit) {
          best_deficit = deficit;
          best = i;
        }
      }
      ++counts[best];
      indices.push_back(static_cast<std::uint32_t>(best));
    }
    return indices[pos - 1];
  }
};

} // namespace

suite_result suite_theorem1() {
  suite_result sr{"theorem1", {}};

  // three-atom measures mu_j drifting to the uniform measure
  {
    const std::vector<std::vector<double>> fams = {
        {1.0, 0.0, 0.0}, {0.0, 1.0, -1.0}, {0.5, -0.5, 0.25}};
    auto weights_for = [](std::size_t j) {
      double aj = 1.0 / (4.0 * static_cast<double>(j));
      return std::vector<double>{1.0 / 3.0 + aj, 1.0 / 3.0, 1.0 / 3.0 - aj};
    };
    double c3 = static_cast<double>(discrepancy_constant(3));
    block_plan plan = block_plan::make(std::vector<double>{c3, c3}, 1);
    std::vector<greedy_stream> streams;
    auto eval_errors = [&](std::uint64_t n_eval) {
      while (plan.coverage() < n_eval) plan.extend(c3);
      std::vector<double> sums(fams.size(), 0.0);
      std::uint64_t done = 0;
      for (std::size_t j = 1; done < n_eval; ++j) {
        while (streams.size() < j) streams.emplace_back(weights_for(streams.size() + 1));
        std::uint64_t take = std::min<std::uint64_t>(plan.length(j), n_eval - done);
        for (std::uint64_t s = 1; s <= take; ++s) {
          std::uint32_t idx = streams[j - 1].at(s);
          for (std::size_t q = 0; q < fams.size(); ++q) sums[q] += fams[q][idx];
        }
        done += take;
      }
      std::vector<double> errs(fams.size());
      for (std::size_t q = 0; q < fams.size(); ++q) {
        double limit = (fams[q][0] + fams[q][1] + fams[q][2]) / 3.0;
        errs[q] = std::abs(sums[q] / static_cast<double>(n_eval) - limit);
      }
      return errs;
    };
    auto e3 = eval_errors(1000);
    auto e5 = eval_errors(100000);
    bool ok = true;
    double worst5 = 0.0;
    for (std::size_t q = 0; q < fams.size(); ++q) {
      ok = ok && e5[q] < 0.05 && e5[q] < e3[q];
      worst5 = std::max(worst5, e5[q]);
    }
    sr.checks.push_back({"merged averages approach the limit measure (three-atom corpus)", ok,
                         "max err@1e5=" + fmt(worst5) + " errs@1e3=" + fmt(e3[0]) + "," +
                             fmt(e3[1]) + "," + fmt(e3[2]) + " errs@1e5=" + fmt(e5[0]) + "," +
                             fmt(e5[1]) + "," + fmt(e5[2])});
  }

  // hull combinations drifting to a vertex
  {
    Eigen::VectorXd v1(2), v2(2);
    v1 << 1.0, 0.0;
    v2 << 0.0, 1.0;
    auto combos = [&](std::size_t j) {
      double lam = std::pow(0.5, static_cast<double>(j));
      std::vector<Eigen::VectorXd> pts{v1, v2};
      Eigen::VectorXd w(2);
      w << 1.0 - lam, lam;
      return convex_target::from_weights(pts, w);
    };
    std::vector<std::uint64_t> evals{1000, 100000};
    auto trace = cesaro_limit_stream(combos, v1, evals);
    bool ok = trace.size() == 2 && trace[1].error < 0.05 && trace[1].error < trace[0].error;
    sr.checks.push_back({"hull combinations drifting to a vertex: mean converges", ok,
                         "err@1e3=" + fmt(trace[0].error) + " err@1e5=" + fmt(trace[1].error)});
  }

  // constant combinations reduce to the plain scheduler: wiring the sources
  // as one continuing sequence reproduces it term for term
  {
    std::vector<double> w{2.0 / 3.0, 1.0 / 3.0};
    greedy_stream plain(w);
    double c = static_cast<double>(discrepancy_constant(2));
    block_plan plan = block_plan::make(std::vector<double>{c, c, c, c, c, c, c, c}, 7);
    const std::uint64_t n = plan.coverage();
    plain.at(n);
    bool bit_equal = true;
    double max_gap_ratio = 0.0;
    std::vector<double> fv{1.0, -1.0};
    double integral = fv[0] * w[0] + fv[1] * w[1];
    double sum = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      auto [block, pos] = plan.locate(i);
      std::uint64_t global = (block == 1 ? 0 : plan.offset(block - 1)) + pos;
      if (global != i) bit_equal = false;
      sum += fv[plain.at(global)];
      double gap = std::abs(sum / static_cast<double>(i) - integral);
      max_gap_ratio = std::max(gap / (2.0 / static_cast<double>(i) * (1.0 + c)), max_gap_ratio);
    }
    sr.checks.push_back({"identical sources reduce to the plain scheduler with its bound",
                         bit_equal && max_gap_ratio <= 1.0,
                         "max gap/bound=" + fmt(max_gap_ratio)});
  }

  // all combinations already sit at the target
  {
    Eigen::VectorXd v(2);
    v << 0.25, -0.5;
    auto combos = [&](std::size_t) {
      return convex_target::from_weights({v}, Eigen::VectorXd::Ones(1));
    };
    std::vector<std::uint64_t> evals{1, 100, 5000};
    auto trace = cesaro_limit_stream(combos, v, evals);
    bool ok = true;
    for (const auto& tp : trace) ok = ok && tp.error == 0.0;
    sr.checks.push_back({"vertex combinations give zero error", ok,
                         "err@5000=" + fmt(trace.back().error)});
  }

  return sr;
}

// ---- suite: lemma3 ----------------------------------------------------

suite_result suite_lemma3() {
  suite_result sr{"lemma3", {}};
  struct target {
    std::string name;
    std::function<std::vector<double>(std::uint64_t)> points;
    std::function<double(double)> cdf;
  };
  plj_function identity = plj_function::linear(0.0, 1.0, 0.0, 1.0);
  plj_function plateau = plateaued_ramp();
  auto xsq = [](double x) { return x * x; };
  auto sin_cdf = [](double x) { return std::sin(1.5707963267948966 * x); };
  std::vector<target> targets;
  targets.push_back({"x", [=](std::uint64_t n) { return ud_continuous_increasing(identity, n); },
                     [=](double x) { return identity.value(x); }});
  targets.push_back(
      {"x^2", [=](std::uint64_t n) { return ud_continuous_increasing(xsq, 0.0, 1.0, n); }, xsq});
  targets.push_back({"sin-normalized",
                     [=](std::uint64_t n) { return ud_continuous_increasing(sin_cdf, 0.0, 1.0, n); },
                     sin_cdf});
  targets.push_back({"plateaued ramp",
                     [=](std::uint64_t n) { return ud_continuous_increasing(plateau, n); },
                     [=](double x) { return plateau.value(x); }});

  double worst = 0.0;
  bool ok = true;
  std::string worst_name;
  for (const auto& tg : targets) {
    std::vector<double> pts = tg.points(1ULL << 16);
    for (int e = 4; e <= 16; ++e) {
      std::uint64_t n = 1ULL << e;
      std::span<const double> prefix(pts.data(), n);
      double d = star_discrepancy_points(prefix, tg.cdf, 0.0, 1.0);
      double bound = std::log(static_cast<double>(n) + 1.0) /
                     (static_cast<double>(n) * std::log(2.0));
      double ratio = d / bound;
      if (ratio > worst) {
        worst = ratio;
        worst_name = tg.name;
      }
      if (d > bound) ok = false;
    }
  }
  sr.checks.push_back({"star discrepancy <= log(N+1)/(N log 2) for the four distribution functions",
                       ok, "max D*/bound=" + fmt(worst) + " at " + worst_name});
  return sr;
}

// ---- suite: remark9 (discrepancy identities and oracle equivalence) -----

suite_result suite_remark9(std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t identity_instances = trials == 0 ? 100 : trials;
  std::uint64_t grid_instances = trials == 0 ? 50 : std::max<std::uint64_t>(1, trials / 2);
  suite_result sr{"remark9", {}};

  {
    const double slack = 1e-12;
    bool ok = true;
    double min_ratio = 10.0, max_ratio = 0.0, worst_subadd = -1.0;
    for (std::uint64_t t = 0; t < identity_instances; ++t) {
      auto rng = trial_rng(seed, t);
      plj_function target = random_unit_target(rng, false);
      std::size_t n = 20 + rng.next_below(180);
      std::vector<signed_term> prefix(n);
      std::vector<double> xs(n), ws(n), wp(n), wn(n);
      for (std::size_t i = 0; i < n; ++i) {
        double x = rng.next_uniform();
        int e = rng.next_below(2) == 0 ? 1 : -1;
        prefix[i] = {x, e};
        xs[i] = x;
        ws[i] = e;
        wp[i] = 0.5 * (1.0 + e);
        wn[i] = 0.5 * (1.0 - e);
      }
      double dstar = star_discrepancy_signed(prefix, target);
      double dint = interval_discrepancy_signed(prefix, target);
      if (!(dstar <= dint + slack && dint <= 2.0 * dstar + slack)) ok = false;
      if (dstar > 0.0) {
        min_ratio = std::min(min_ratio, dint / dstar);
        max_ratio = std::max(max_ratio, dint / dstar);
      }
      auto jd = jordan(target);
      double dp = interval_discrepancy_weighted(xs, wp, n, jd.p);
      double dn = interval_discrepancy_weighted(xs, wn, n, jd.n);
      if (!(dint <= dp + dn + slack)) ok = false;
      worst_subadd = std::max(worst_subadd, dint - dp - dn);
    }
    sr.checks.push_back({"D* <= D <= 2 D* and D(phi) <= D(p) + D(n), slack 1e-12", ok,
                         "D/D* range [" + fmt(min_ratio) + ", " + fmt(max_ratio) +
                             "] max D-(Dp+Dn)=" + fmt(worst_subadd)});
  }

  {
    const std::uint64_t cells = 1000000;
    bool ok = true;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < grid_instances; ++t) {
      auto rng = trial_rng(seed ^ 0x5bd1e995ULL, t);
      plj_function target = random_unit_target(rng, true);
      std::size_t n = 10 + rng.next_below(40);
      std::vector<signed_term> prefix(n);
      std::vector<double> xs(n), ws(n);
      for (std::size_t i = 0; i < n; ++i) {
        double x = static_cast<double>(rng.next_below(cells + 1)) / static_cast<double>(cells);
        int e = rng.next_below(2) == 0 ? 1 : -1;
        prefix[i] = {x, e};
        xs[i] = x;
        ws[i] = e;
      }
      double dstar = star_discrepancy_signed(prefix, target);
      double dint = interval_discrepancy_signed(prefix, target);
      auto g = grid_deviation_oracle(xs, ws, n, target, cells);
      worst = std::max({worst, std::abs(dstar - g.max_abs), std::abs(dint - g.osc)});
      if (std::abs(dstar - g.max_abs) > 1e-9 || std::abs(dint - g.osc) > 1e-9) ok = false;
    }
    sr.checks.push_back({"exact D and D* match the 1e6-point grid oracle within 1e-9", ok,
                         "max |exact-grid|=" + fmt(worst) + " over " +
                             std::to_string(grid_instances) + " instances"});
  }

  return sr;
}

// ---- suite: theorem9 ---------------------------------------------------

suite_result suite_theorem9() {
  suite_result sr{"theorem9", {}};
  std::vector<double> probes;
  for (int i = 0; i <= 20; ++i) probes.push_back(0.05 * i);

  struct target {
    std::string name;
    plj_function phi;
  };
  std::vector<target> targets{
      {"tent", tent()}, {"two-jump step", two_jump_step()}, {"ramp+jump", ramp_plus_jump()}};

  bool conv_ok = true, ident_ok = true, sign_mean_ok = true;
  double worst5 = 0.0, worst_ident = 0.0;
  std::string detail;
  for (const auto& tg : targets) {
    plj_function ups = total_variation(tg.phi);
    auto stream = diagonal_signed_sequence(bv_oracle::from_plj(tg.phi));
    auto pre5 = stream.prefix(100000);
    auto st5 = probe_errors(pre5, tg.phi, ups, probes);
    auto st3 = probe_errors(stream.prefix(1000), tg.phi, ups, probes);
    conv_ok = conv_ok && st5.max_err_unsigned < 0.05 && st5.max_err_signed < 0.05 &&
              st5.max_err_unsigned < st3.max_err_unsigned &&
              st5.max_err_signed < st3.max_err_signed;
    ident_ok = ident_ok && st5.max_identity_gap <= 1e-12;
    sign_mean_ok = sign_mean_ok && st5.sign_mean_err < 0.05 && st5.sign_mean_err < st3.sign_mean_err;
    worst5 = std::max({worst5, st5.max_err_unsigned, st5.max_err_signed});
    worst_ident = std::max(worst_ident, st5.max_identity_gap);
    detail += tg.name + ": U " + fmt(st3.max_err_unsigned) + "->" + fmt(st5.max_err_unsigned) +
              ", S " + fmt(st3.max_err_signed) + "->" + fmt(st5.max_err_signed) + "; ";
  }
  sr.checks.push_back({"empirical signed/unsigned distribution functions converge at 21 probes",
                       conv_ok, detail + "max@1e5=" + fmt(worst5)});
  sr.checks.push_back({"positive/negative functionals equal their algebraic combinations (1e-12)",
                       ident_ok, "max identity gap=" + fmt(worst_ident)});
  sr.checks.push_back({"mean sign approaches the total mass", sign_mean_ok, ""});

  // increasing special case: all signs +1, classical distribution transport
  {
    auto oracle = bv_oracle::from_increasing(0.0, 1.0, [](double x) { return x * x; });
    auto stream = diagonal_signed_sequence(oracle);
    auto pre5 = stream.prefix(100000);
    plj_function xsq_nodes = [] {
      std::vector<double> ts, vs;
      for (int i = 0; i <= 4096; ++i) {
        double t = static_cast<double>(i) / 4096.0;
        ts.push_back(t);
        vs.push_back(t * t);
      }
      return plj_function::polyline(ts, vs);
    }();
    auto st5 = probe_errors(pre5, xsq_nodes, xsq_nodes, probes);
    bool ok = st5.all_plus && st5.max_err_unsigned < 0.05 && st5.max_err_signed < 0.05;
    sr.checks.push_back({"increasing target: plus signs only and classical convergence", ok,
                         "max probe err@1e5=" + fmt(std::max(st5.max_err_unsigned,
                                                             st5.max_err_signed))});
  }

  return sr;
}

// ---- suite: sampler -----------------------------------------------------

suite_result suite_sampler() {
  suite_result sr{"sampler", {}};
  plj_function phi = skew_tent();
  auto jd = jordan(phi);
  double pos_mass = jd.p.value(1.0);
  const std::uint64_t n = 100000;
  const double ks_threshold = 1.63 / std::sqrt(static_cast<double>(n)) * 3.0;
  const double sigma = std::sqrt(pos_mass * (1.0 - pos_mass) / static_cast<double>(n));

  int ks_pass = 0, binom_pass = 0;
  double worst_ks = 0.0, worst_z = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto stream = iid_sampler(phi, seed);
    auto prefix = stream.prefix(n);
    std::vector<double> xs(n);
    std::uint64_t plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = prefix[i].x;
      if (prefix[i].sign == 1) ++plus;
    }
    double ks =
        star_discrepancy_points(xs, [&](double x) { return jd.upsilon.value(x); }, 0.0, 1.0);
    double z = std::abs(static_cast<double>(plus) / static_cast<double>(n) - pos_mass) / sigma;
    worst_ks = std::max(worst_ks, ks);
    worst_z = std::max(worst_z, z);
    if (ks < ks_threshold) ++ks_pass;
    if (z <= 3.0) ++binom_pass;
  }
  sr.checks.push_back({"Kolmogorov statistic below 3*1.63/sqrt(N) in >= 19/20 seeds",
                       ks_pass >= 19,
                       "pass=" + std::to_string(ks_pass) + "/20 worst KS=" + fmt(worst_ks) +
                           " threshold=" + fmt(ks_threshold)});
  sr.checks.push_back({"P(sign=+1) within 3 binomial sigma of the positive mass in >= 19/20 seeds",
                       binom_pass >= 19,
                       "pass=" + std::to_string(binom_pass) + "/20 worst z=" + fmt(worst_z)});
  return sr;
}

// ---- dispatch -----------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1",  "prop1",   "theorem2", "theorem1",
                                              "lemma3",  "remark9", "theorem9", "sampler"};
  return names;
}

suite_result run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed) {
  if (name == "lemma1") return suite_lemma1(trials, seed);
  if (name == "prop1") return suite_prop1(trials, seed);
  if (name == "theorem2") return suite_theorem2(trials, seed);
  if (name == "theorem1") return suite_theorem1();
  if (name == "lemma3") return suite_lemma3();
  if (name == "remark9") return suite_remark9(trials, seed);
  if (name == "theorem9") return suite_theorem9();
  if (name == "sampler") return suite_sampler();
  throw validation_error("unknown suite '" + name + "'");
}

} // namespace sud::verify
