#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sud/interval_ud.hpp"
#include "sud/rng.hpp"

using namespace sud;

namespace {

plj_function identity01() { return plj_function::linear(0.0, 1.0, 0.0, 1.0); }

plj_function tent() {
  return plj_function::polyline(std::vector<double>{0.0, 0.5, 1.0},
                                std::vector<double>{0.0, 0.5, 0.0});
}

plj_function down_step() { // single jump -1 at 1/2
  return plj_function({{0.0, 0.0, 0.0}, {0.5, 0.0, -1.0}, {1.0, -1.0, -1.0}});
}

} // namespace

TEST_CASE("radical inverse base 2") {
  CHECK(van_der_corput(1) == 0.5);
  CHECK(van_der_corput(2) == 0.25);
  CHECK(van_der_corput(3) == 0.75);
  CHECK(van_der_corput(6) == 0.375);
  CHECK_THROWS_AS(van_der_corput(0), validation_error);
  for (std::uint64_t n = 1; n <= 64; ++n) {
    double u = van_der_corput(n);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    // bit-shift recursion holds exactly in binary floating point
    CHECK(van_der_corput(2 * n) == 0.5 * u);
    CHECK(van_der_corput(2 * n + 1) == 0.5 * u + 0.5);
  }
}

TEST_CASE("generalized inverse: identity, plateau, jump, clamping") {
  auto id = identity01();
  CHECK(generalized_inverse(id, 0.3) == 0.3);

  auto plateau = plj_function::polyline(std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0},
                                        std::vector<double>{0.0, 0.5, 0.5, 1.0});
  CHECK(generalized_inverse(plateau, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  plj_function jumpy({{0.0, 0.0, 0.0}, {0.5, 0.2, 0.8}, {1.0, 1.0, 1.0}});
  CHECK(generalized_inverse(jumpy, 0.5) == 0.5);
  CHECK(generalized_inverse(jumpy, 0.1) == doctest::Approx(0.25).epsilon(1e-15));

  bool clamped = false;
  CHECK(generalized_inverse(id, -0.25, &clamped) == 0.0);
  CHECK(clamped);
  clamped = false;
  CHECK(generalized_inverse(id, 0.25, &clamped) == 0.25);
  CHECK(!clamped);
}

TEST_CASE("generalized inverse is the exact infimum on random monotone functions") {
  sequential_rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    // random nondecreasing function with plateaus and jumps, scaled to [0,1]
    std::size_t interior = 1 + rng.next_below(4);
    std::vector<double> ts{0.0};
    for (std::size_t i = 0; i < interior; ++i) ts.push_back(rng.next_uniform());
    ts.push_back(1.0);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<plj_node> nodes;
    double level = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double left = level;
      if (i > 0 && rng.next_below(3) == 0) level += rng.next_uniform(); // jump
      nodes.push_back({ts[i], left, level});
      if (rng.next_below(3) != 0) level += rng.next_uniform(); // sloped piece ahead
    }
    if (nodes.back().right == 0.0) continue;
    double top = nodes.back().right;
    for (auto& nd : nodes) {
      nd.left /= top;
      nd.right /= top;
    }
    nodes.front().left = nodes.front().right;
    plj_function g(std::move(nodes));

    for (int probe = 0; probe < 20; ++probe) {
      double t = rng.next_uniform();
      double x = generalized_inverse(g, t);
      CHECK(g.value(x) >= t - 1e-12);
      // nothing strictly left of x reaches t
      for (const auto& nd : g.nodes())
        if (nd.t < x) CHECK(nd.right < t + 1e-12);
      double just_left = x - 1e-9;
      if (just_left > g.a() && g.left_limit(x) < t) CHECK(g.value(just_left) < t + 1e-9);
    }
  }
}

TEST_CASE("transported sequences for continuous increasing targets") {
  auto pts = ud_continuous_increasing(identity01(), 3);
  CHECK(pts == std::vector<double>{0.5, 0.25, 0.75});

  auto sq = ud_continuous_increasing([](double x) { return x * x; }, 0.0, 1.0, 1);
  CHECK(sq[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  CHECK_THROWS_AS(ud_continuous_increasing(down_step(), 4), validation_error);
  CHECK_THROWS_AS(ud_continuous_increasing(plj_function::linear(0.0, 1.0, 0.0, 0.5), 4),
                  validation_error);
  CHECK_THROWS_AS(ud_continuous_increasing(tent(), 4), validation_error);
}

TEST_CASE("transported prefixes satisfy the logarithmic discrepancy bound") {
  auto id = identity01();
  auto pts_id = ud_continuous_increasing(id, 1 << 12);
  auto sq = [](double x) { return x * x; };
  auto pts_sq = ud_continuous_increasing(sq, 0.0, 1.0, 1 << 12);
  for (int e = 4; e <= 12; ++e) {
    std::uint64_t n = 1ULL << e;
    double bound = std::log(static_cast<double>(n) + 1.0) /
                   (static_cast<double>(n) * std::log(2.0));
    CHECK(star_discrepancy_points({pts_id.data(), static_cast<std::size_t>(n)},
                                  [&](double x) { return id.value(x); }, 0.0, 1.0) <= bound);
    CHECK(star_discrepancy_points({pts_sq.data(), static_cast<std::size_t>(n)}, sq, 0.0, 1.0) <=
          bound);
  }
}

TEST_CASE("signed sequences for unit-variation targets") {
  auto id_terms = signed_sequence_polygonal(identity01(), 64);
  for (const auto& t : id_terms) CHECK(t.sign == 1);

  auto tent_terms = signed_sequence_polygonal(tent(), 4096);
  double eps_sum = 0.0;
  for (const auto& t : tent_terms) {
    CHECK(t.sign == (t.x < 0.5 ? 1 : -1));
    eps_sum += t.sign;
  }
  double mean_tail = std::abs(eps_sum / 4096.0);
  double eps_64 = 0.0;
  for (std::size_t i = 0; i < 64; ++i) eps_64 += tent_terms[i].sign;
  CHECK(mean_tail < 0.05);
  CHECK(mean_tail < std::abs(eps_64 / 64.0) + 1e-12);

  auto step_terms = signed_sequence_polygonal(down_step(), 32);
  for (const auto& t : step_terms) {
    CHECK(t.x == 0.5);
    CHECK(t.sign == -1);
  }

  CHECK_THROWS_AS(signed_sequence_polygonal(plj_function::linear(0.0, 1.0, 0.0, 0.5), 4),
                  validation_error);
}

TEST_CASE("signed discrepancy decays along a fixed continuous polygonal target") {
  sequential_rng rng(61);
  int tried = 0;
  for (int trial = 0; trial < 24 && tried < 12; ++trial) {
    std::vector<double> ts{0.0, 0.2 + 0.3 * rng.next_uniform(), 0.6 + 0.3 * rng.next_uniform(),
                           1.0};
    std::vector<double> vs{0.0, 2.0 * rng.next_uniform() - 1.0, 2.0 * rng.next_uniform() - 1.0,
                           2.0 * rng.next_uniform() - 1.0};
    plj_function target = plj_function::polyline(ts, vs);
    if (total_variation_value(target) < 0.1) continue;
    ++tried;
    target = normalize(target);
    auto ups = total_variation(target);
    auto terms = signed_sequence_polygonal(target, 4096);
    std::vector<double> xs(4096), ones(4096, 1.0);
    for (std::size_t i = 0; i < 4096; ++i) xs[i] = terms[i].x;

    double ds_small = star_discrepancy_signed({terms.data(), 64}, target);
    double ds_large = star_discrepancy_signed({terms.data(), 4096}, target);
    CHECK(ds_large < ds_small);
    CHECK(ds_large < 0.05);

    double du_small = star_discrepancy_weighted({xs.data(), 64}, {ones.data(), 64}, 64, ups);
    double du_large = star_discrepancy_weighted(xs, ones, 4096, ups);
    CHECK(du_large < du_small);
    CHECK(du_large < 0.05);
  }
  CHECK(tried >= 8);
}

TEST_CASE("star discrepancy hand cases") {
  std::vector<signed_term> single{{0.5, 1}};
  CHECK(star_discrepancy_signed(single, identity01()) == 0.5);

  std::vector<signed_term> at_zero{{0.0, 1}};
  CHECK(interval_discrepancy_signed(at_zero, identity01()) == 1.0);
  CHECK(star_discrepancy_signed(at_zero, identity01()) == 1.0);

  // a prefix matching a step target's atoms deviates only at the jump
  // location itself, by exactly the jump mass
  auto step_terms = signed_sequence_polygonal(down_step(), 8);
  CHECK(star_discrepancy_signed(step_terms, down_step()) == 1.0);
  auto target = down_step();
  for (double x : {0.1, 0.3, 0.4999, 0.5000001, 0.7, 1.0}) {
    double emp = 0.0;
    for (const auto& t : step_terms)
      if (t.x < x) emp += t.sign;
    CHECK(std::abs(emp / 8.0 - target.value(x)) <= 1e-15);
  }
}

TEST_CASE("discrepancies agree with the dense-grid oracle on aligned data") {
  sequential_rng rng(51);
  const std::uint64_t cells = 1000000;
  auto t = tent();
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 50;
    std::vector<signed_term> prefix(n);
    std::vector<double> xs(n), ws(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = static_cast<double>(rng.next_below(cells + 1)) / static_cast<double>(cells);
      int e = rng.next_below(2) == 0 ? 1 : -1;
      prefix[i] = {x, e};
      xs[i] = x;
      ws[i] = e;
    }
    auto g = oracles::grid_deviation(xs, ws, n, t, cells);
    CHECK(std::abs(star_discrepancy_signed(prefix, t) - g.max_abs) <= 1e-9);
    CHECK(std::abs(interval_discrepancy_signed(prefix, t) - g.osc) <= 1e-9);
  }
}

TEST_CASE("sandwich and jordan subadditivity on random instances") {
  sequential_rng rng(52);
  auto t = tent();
  auto jd = jordan(t);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 10 + rng.next_below(100);
    std::vector<signed_term> prefix(n);
    std::vector<double> xs(n), wp(n), wn(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = rng.next_uniform();
      int e = rng.next_below(2) == 0 ? 1 : -1;
      prefix[i] = {x, e};
      xs[i] = x;
      wp[i] = 0.5 * (1.0 + e);
      wn[i] = 0.5 * (1.0 - e);
    }
    double dstar = star_discrepancy_signed(prefix, t);
    double dint = interval_discrepancy_signed(prefix, t);
    CHECK(dstar <= dint + 1e-12);
    CHECK(dint <= 2.0 * dstar + 1e-12);
    double dp = interval_discrepancy_weighted(xs, wp, n, jd.p);
    double dn = interval_discrepancy_weighted(xs, wn, n, jd.n);
    CHECK(dint <= dp + dn + 1e-12);
  }
}

TEST_CASE("arrangement schedule thresholds") {
  CHECK(schedule_threshold(0, 1, 0) == oracles::threshold_by_scan(0, 1));
  CHECK(oracles::threshold_by_scan(0, 1) == 6);
  CHECK(schedule_threshold(1, 3, 0) == oracles::threshold_by_scan(1, 3));

  std::vector<int> alternations{0, 1, 1, 2, 0, 1, 3, 1};
  auto sched = make_arrangement_schedule(alternations, 8);
  REQUIRE(sched.thresholds.size() == 8);
  for (std::size_t k = 1; k <= 8; ++k) {
    if (k > 1) CHECK(sched.thresholds[k - 1] > sched.thresholds[k - 2]);
    CHECK(schedule_bound(alternations[k - 1], sched.thresholds[k - 1]) <=
          1.0 / static_cast<double>(k));
  }
  CHECK(sched.approximant_for_block(1) == 1);
  CHECK(sched.approximant_for_block(sched.thresholds[0]) == 2);
  CHECK(sched.approximant_for_block(sched.thresholds[0] - 1) == 1);
  CHECK_THROWS_AS(make_arrangement_schedule(alternations, 9), validation_error);
}

TEST_CASE("schedule thresholds certify the measured discrepancy") {
  // at m = N_k terms, the level-k sequence must already sit below 1/k
  auto oracle = bv_oracle::from_plj(tent());
  std::uint64_t prev = 0;
  for (std::size_t k = 1; k <= 5; ++k) {
    auto pa = polygonal_approximation(oracle, static_cast<int>(k));
    auto dist = normalize(pa.phi_k);
    int alt = make_sign_density(dist).alternation_count();
    std::uint64_t nk = schedule_threshold(alt, k, prev);
    prev = nk;
    auto terms = signed_sequence_polygonal(dist, nk);
    CHECK(schedule_bound(alt, nk) <= 1.0 / static_cast<double>(k));
    CHECK(star_discrepancy_signed(terms, dist) <= 1.0 / static_cast<double>(k));
  }
}

TEST_CASE("sampler deviation decays with the sample size") {
  auto t = tent();
  auto ups = total_variation(t);
  auto stream = iid_sampler(t, 9);
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL}) {
    auto prefix = stream.prefix(n);
    std::vector<double> xs(prefix.size());
    for (std::size_t i = 0; i < prefix.size(); ++i) xs[i] = prefix[i].x;
    double ks = star_discrepancy_points(xs, [&](double x) { return ups.value(x); }, 0.0, 1.0);
    CHECK(ks <= 3.0 * 1.63 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("diagonal stream: special cases and validation") {
  auto inc = diagonal_signed_sequence(bv_oracle::from_plj(identity01()));
  for (const auto& t : inc.prefix(512)) CHECK(t.sign == 1);

  auto tent_stream = diagonal_signed_sequence(bv_oracle::from_plj(tent()));
  for (const auto& t : tent_stream.prefix(2048)) {
    CHECK(t.sign == (t.x < 0.5 ? 1 : -1)); // every approximant carries the tent's sign density
    CHECK(t.x >= 0.0);
    CHECK(t.x <= 1.0);
  }

  CHECK_THROWS_AS(diagonal_signed_sequence(bv_oracle::from_plj(plj_function::constant(0, 1, 0))),
                  degenerate_measure_error);
  CHECK_THROWS_AS(
      diagonal_signed_sequence(bv_oracle::from_plj(plj_function::linear(0.0, 1.0, 0.0, 0.5))),
      validation_error);
}

TEST_CASE("diagonal stream skips approximation levels that sample an oscillation at its roots") {
  // sawtooth with 4 teeth: every dyadic mesh coarser than 1/8 sees only zeros
  auto saw = [](double x) {
    double t = x * 4.0;
    double frac = t - std::floor(t);
    return 0.125 * (frac <= 0.5 ? 2.0 * frac : 2.0 * (1.0 - frac));
  };
  bv_oracle oracle;
  oracle.a = 0.0;
  oracle.b = 1.0;
  oracle.phi = saw;
  oracle.upsilon = [](double x) { return x; }; // each tooth contributes its slope mass
  oracle.jumps_exceeding = [](double) { return std::vector<jump_info>{}; };

  auto stream = diagonal_signed_sequence(oracle);
  auto prefix = stream.prefix(20000);
  // unsigned law follows the variation, signed law follows the sawtooth
  std::vector<double> xs(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) xs[i] = prefix[i].x;
  std::sort(xs.begin(), xs.end());
  for (double p : {0.2, 0.5, 0.8}) {
    auto k = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), p) - xs.begin());
    CHECK(std::abs(k / static_cast<double>(prefix.size()) - p) < 0.05);
  }
  double signed_mean = 0.0;
  for (const auto& t : prefix) signed_mean += t.sign;
  CHECK(std::abs(signed_mean / static_cast<double>(prefix.size())) < 0.05); // phi(1) = 0
}

TEST_CASE("seeded sampler is reproducible and matches the positive mass") {
  auto t = tent();
  auto s1 = iid_sampler(t, 42);
  auto s2 = iid_sampler(t, 42);
  auto p1 = s1.prefix(512);
  auto p2 = s2.prefix(512);
  for (std::size_t i = 0; i < 512; ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].sign == p2[i].sign);
  }
  auto s3 = iid_sampler(t, 43);
  bool differs = false;
  auto p3 = s3.prefix(512);
  for (std::size_t i = 0; i < 512; ++i) differs = differs || p3[i].x != p1[i].x;
  CHECK(differs);

  auto id_stream = iid_sampler(identity01(), 7);
  counter_rng rng(7);
  auto idp = id_stream.prefix(64);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(idp[i].sign == 1);
    CHECK(idp[i].x == rng.uniform(i + 1)); // identity transport reproduces the raw stream
  }

  const std::uint64_t n = 100000;
  auto big_stream = iid_sampler(t, 1);
  auto big = big_stream.prefix(n);
  std::uint64_t plus = 0;
  for (const auto& term : big)
    if (term.sign == 1) ++plus;
  double p_hat = static_cast<double>(plus) / static_cast<double>(n);
  double sigma = std::sqrt(0.25 / static_cast<double>(n)); // positive mass is exactly 1/2
  CHECK(std::abs(p_hat - 0.5) <= 3.0 * sigma);
}

TEST_CASE("empirical functionals and their exact algebra") {
  auto terms = signed_sequence_polygonal(tent(), 1000);
  auto r = empirical_functionals(terms, [](double) { return 1.0; });
  CHECK(r.abs_mean == 1.0);
  CHECK(std::abs(r.abs_mean - (r.pos_mean + r.neg_mean)) <= 1e-12);
  CHECK(std::abs(r.pos_mean - 0.5 * (r.abs_mean + r.signed_mean)) <= 1e-12);
  CHECK(std::abs(r.neg_mean - 0.5 * (r.abs_mean - r.signed_mean)) <= 1e-12);

  // indicator functionals reduce to the distribution statistics
  double probe = 0.7;
  auto ind = empirical_functionals(terms, [&](double x) { return x < probe ? 1.0 : 0.0; });
  double direct_u = 0.0, direct_s = 0.0;
  for (const auto& t : terms)
    if (t.x < probe) {
      direct_u += 1.0;
      direct_s += t.sign;
    }
  CHECK(ind.abs_mean == doctest::Approx(direct_u / 1000.0).epsilon(1e-15));
  CHECK(ind.signed_mean == doctest::Approx(direct_s / 1000.0).epsilon(1e-15));

  // signed mean of f(x)=x against the tent's integral
  auto stream = diagonal_signed_sequence(bv_oracle::from_plj(tent()));
  auto big = stream.prefix(100000);
  auto rf = empirical_functionals(big, [](double x) { return x; });
  double target = riemann_stieltjes([](double x) { return x; }, tent());
  CHECK(target == doctest::Approx(-0.25).epsilon(1e-10));
  CHECK(std::abs(rf.signed_mean - target) < 0.05);
}

TEST_CASE("stieltjes reference integrals") {
  CHECK(riemann_stieltjes([](double) { return 1.0; }, tent()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(riemann_stieltjes([](double x) { return x; }, identity01()) ==
        doctest::Approx(0.5).epsilon(1e-10));
  plj_function up_step({{0.0, 0.0, 0.0}, {0.5, 0.0, 1.0}, {1.0, 1.0, 1.0}});
  CHECK(riemann_stieltjes([](double x) { return x; }, up_step) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(riemann_stieltjes([](double x) { return std::cos(x); }, identity01()) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-10));
}
