#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sud/convex.hpp"
#include "sud/rng.hpp"

using namespace sud;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

convex_target random_target(sequential_rng& rng, Eigen::Index d, std::size_t m) {
  std::vector<Eigen::VectorXd> pts(m, Eigen::VectorXd(d));
  for (auto& p : pts)
    for (Eigen::Index i = 0; i < d; ++i) p[i] = 2.0 * rng.next_uniform() - 1.0;
  Eigen::VectorXd w(static_cast<Eigen::Index>(m));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w[i] = rng.next_uniform() + 1e-3;
    sum += w[i];
  }
  w /= sum;
  return convex_target::from_weights(std::move(pts), std::move(w));
}

} // namespace

TEST_CASE("target validation") {
  CHECK_THROWS_AS(convex_target::from_weights({}, Eigen::VectorXd()), validation_error);
  auto p = vec2(1.0, 0.0);
  Eigen::VectorXd bad_w(1);
  bad_w << 0.5;
  CHECK_THROWS_AS(convex_target::from_weights({p}, bad_w), validation_error);
  Eigen::VectorXd w(2);
  w << 0.5, 0.5;
  CHECK_THROWS_AS(convex_target::from_weights({p}, w), validation_error);
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK_THROWS_AS(convex_target::from_weights({p}, one, 0.5), validation_error); // radius too small
}

TEST_CASE("singleton target is reproduced exactly") {
  Eigen::VectorXd one(1);
  one << 1.0;
  auto ct = convex_target::from_weights({vec2(0.25, -0.75)}, one);
  auto r = cesaro_approximate(ct, 7);
  CHECK(r.error == 0.0);
  for (auto idx : r.indices) CHECK(idx == 0);
}

TEST_CASE("two-point half-half target at N=2") {
  Eigen::VectorXd w(2);
  w << 0.5, 0.5;
  auto ct = convex_target::from_weights({vec2(1.0, 0.0), vec2(0.0, 1.0)}, w);
  CHECK(ct.radius == 1.0);
  auto r = cesaro_approximate(ct, 2);
  CHECK(r.indices == std::vector<std::uint32_t>{0, 1});
  CHECK((r.mean - vec2(0.5, 0.5)).norm() == 0.0);
  CHECK(r.error == 0.0);
  CHECK(r.bound == doctest::Approx(2.0).epsilon(1e-15)); // (2R/2)(1+C(2))
}

TEST_CASE("error bound and mean recomputation on random targets") {
  sequential_rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Index d = static_cast<Eigen::Index>(2 + rng.next_below(7));
    std::size_t m = 1 + rng.next_below(8);
    auto ct = random_target(rng, d, m);
    std::uint64_t n = 1 + rng.next_below(512);
    auto r = cesaro_approximate(ct, n);
    CHECK(r.error <= r.bound);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
    for (auto idx : r.indices) sum += ct.points[idx];
    CHECK(((sum / static_cast<double>(n)) - r.mean).norm() <= 1e-12);
  }
}

TEST_CASE("scaling the geometry scales the error") {
  sequential_rng rng(33);
  auto ct = random_target(rng, 3, 5);
  auto base = cesaro_approximate(ct, 257);

  // power-of-two scaling is exact in floating point
  double s = 8.0;
  convex_target scaled = ct;
  for (auto& p : scaled.points) p *= s;
  scaled.target *= s;
  scaled.radius *= s;
  auto r = cesaro_approximate(scaled, 257);
  CHECK(r.indices == base.indices);
  CHECK(r.error == s * base.error);

  double g = 3.7;
  convex_target general = ct;
  for (auto& p : general.points) p *= g;
  general.target *= g;
  general.radius *= g;
  auto r2 = cesaro_approximate(general, 257);
  CHECK(r2.indices == base.indices);
  CHECK(std::abs(r2.error - g * base.error) <= 1e-12 * std::max(1.0, g * base.error));
}

TEST_CASE("barycentric coordinates in a simplex") {
  std::vector<Eigen::VectorXd> tri{vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.0, 1.0)};

  auto centroid = simplex_combination(vec2(1.0 / 3.0, 1.0 / 3.0), tri);
  REQUIRE(centroid.weights.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(centroid.weights[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  auto vertex = simplex_combination(vec2(0.0, 1.0), tri);
  REQUIRE(vertex.weights.size() == 1);
  CHECK(vertex.weights[0] == 1.0);
  CHECK((vertex.points[0] - vec2(0.0, 1.0)).norm() == 0.0);

  auto quarter = simplex_combination(vec2(0.25, 0.25), tri);
  REQUIRE(quarter.weights.size() == 3);
  CHECK(quarter.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quarter.weights[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(quarter.weights[2] == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(simplex_combination(vec2(0.7, 0.7), tri), validation_error); // outside
  std::vector<Eigen::VectorXd> degenerate{vec2(0.0, 0.0), vec2(1.0, 1.0), vec2(2.0, 2.0)};
  CHECK_THROWS_AS(simplex_combination(vec2(0.5, 0.5), degenerate), validation_error);
  std::vector<Eigen::VectorXd> too_few{vec2(0.0, 0.0), vec2(1.0, 0.0)};
  CHECK_THROWS_AS(simplex_combination(vec2(0.5, 0.0), too_few), validation_error);
}

TEST_CASE("limit stream validates dimensions and handles fixed targets") {
  Eigen::VectorXd w1(1);
  w1 << 1.0;
  auto combos = [&](std::size_t) { return convex_target::from_weights({vec2(1.0, 2.0)}, w1); };
  std::vector<std::uint64_t> evals{4, 64};
  auto trace = cesaro_limit_stream(combos, vec2(1.0, 2.0), evals);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].error == 0.0);
  CHECK(trace[1].error == 0.0);

  Eigen::VectorXd wrong(3);
  wrong << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(cesaro_limit_stream(combos, wrong, evals), validation_error);
}
