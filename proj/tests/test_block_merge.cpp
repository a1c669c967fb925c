#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sud/block_merge.hpp"

using namespace sud;

TEST_CASE("minimal admissible block lengths") {
  std::vector<double> zeros{0.0, 0.0, 0.0, 0.0};
  auto plan = block_plan::make(zeros, 3);
  CHECK(plan.lengths() == std::vector<std::uint64_t>{1, 4, 9});
  CHECK(plan.offsets() == std::vector<std::uint64_t>{1, 5, 14});

  std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
  auto plan2 = block_plan::make(ones, 2);
  CHECK(plan2.length(2) == 6); // max(4, 2*(1+1+1))

  std::vector<double> front{10.0, 0.0};
  auto plan3 = block_plan::make(front, 1);
  CHECK(plan3.length(1) == 10); // max(1, ceil(1*(10+0)))

  CHECK_THROWS_AS(block_plan::make(std::vector<double>{1.0}, 1), validation_error);
  CHECK_THROWS_AS(block_plan::make(std::vector<double>{1.0, -1.0}, 1), validation_error);
}

TEST_CASE("plans satisfy the admissibility inequality for every block") {
  std::vector<double> cs{3.0, 0.5, 2.0, 7.0, 1.0, 1.0, 4.0, 2.5, 0.0, 9.0};
  auto plan = block_plan::make(cs, 9);
  for (std::size_t j = 1; j <= plan.blocks(); ++j) {
    double csum = 0.0;
    for (std::size_t i = 0; i <= j; ++i) csum += cs[i];
    double min_r = std::max(static_cast<double>(j) * static_cast<double>(j),
                            std::ceil(static_cast<double>(j) * csum));
    CHECK(static_cast<double>(plan.length(j)) >= min_r);
  }
}

TEST_CASE("position decomposition") {
  auto plan = block_plan::make(std::vector<double>{0.0, 0.0, 0.0, 0.0}, 3); // lengths 1,4,9
  auto p1 = plan.locate(1);
  CHECK(p1.block == 1);
  CHECK(p1.pos == 1);
  auto p3 = plan.locate(3);
  CHECK(p3.block == 2);
  CHECK(p3.pos == 2);
  auto p6 = plan.locate(6);
  CHECK(p6.block == 3);
  CHECK(p6.pos == 1);
  CHECK_THROWS_AS(plan.locate(0), validation_error);
  CHECK_THROWS_AS(plan.locate(15), validation_error);
}

TEST_CASE("summability rows") {
  auto plan = block_plan::make(std::vector<double>{0.0, 0.0, 0.0, 0.0}, 3);
  auto r5 = summability_row(plan, 5);
  CHECK(r5 == std::vector<double>{1.0 / 5.0, 4.0 / 5.0});
  auto r6 = summability_row(plan, 6);
  CHECK(r6 == std::vector<double>{1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0});
  CHECK_THROWS_AS(summability_row(plan, 1), validation_error);

  for (std::uint64_t n = 2; n <= plan.coverage(); ++n) {
    auto row = summability_row(plan, n);
    double sum = 0.0;
    for (double v : row) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("row entries for a fixed column vanish as N doubles") {
  std::vector<double> cs(24, 2.0);
  auto plan = block_plan::make(cs, 23);
  for (std::size_t j : {1, 2, 4}) {
    double prev = 2.0;
    double entry = 2.0;
    // the column holds r_j/N once N has passed block j
    for (std::uint64_t n = 2 * plan.offset(j); n <= plan.coverage(); n *= 2) {
      auto row = summability_row(plan, n);
      REQUIRE(row.size() >= j);
      entry = row[j - 1];
      CHECK(entry == static_cast<double>(plan.length(j)) / static_cast<double>(n));
      CHECK(entry < prev);
      prev = entry;
    }
    CHECK(entry < 0.05);
  }
}

TEST_CASE("explicit plans are validated") {
  auto ok = block_plan::from_parts({0.0, 0.0, 0.0}, {2, 5});
  CHECK(ok.coverage() == 7);
  CHECK_THROWS_AS(block_plan::from_parts({0.0, 0.0, 0.0}, {2, 3}), validation_error); // r_2 < 4
  CHECK_THROWS_AS(block_plan::from_parts({0.0}, {1}), validation_error);
}

TEST_CASE("merged prefix equals the concatenated source prefixes") {
  auto plan = block_plan::make(std::vector<double>{0.0, 0.0, 0.0, 0.0, 0.0}, 4);
  using elem = std::pair<std::size_t, std::uint64_t>;
  merged_sequence<elem> ms(plan, [](std::size_t j, std::uint64_t s) { return elem{j, s}; });
  std::vector<elem> expect;
  for (std::size_t j = 1; j <= plan.blocks(); ++j)
    for (std::uint64_t s = 1; s <= plan.length(j); ++s) expect.push_back({j, s});
  for (std::uint64_t n = 1; n <= plan.coverage(); ++n) CHECK(ms.element(n) == expect[n - 1]);
}

TEST_CASE("constant sources average to the constant") {
  auto plan = block_plan::make(std::vector<double>{0.0, 0.0, 0.0, 0.0}, 3);
  merged_sequence<double> ms(plan, [](std::size_t, std::uint64_t) { return 2.5; });
  for (std::uint64_t n : {1ULL, 5ULL, 14ULL})
    CHECK(ms.averaged([](const double& v) { return v; }, n) == 2.5);
}

TEST_CASE("finite sources fail loudly and plans auto-extend") {
  auto plan = block_plan::make(std::vector<double>{0.0, 0.0}, 1);
  merged_sequence<double> ms(
      plan,
      [](std::size_t j, std::uint64_t s) {
        if (s > 3) throw numeric_error("source " + std::to_string(j) + " exhausted");
        return static_cast<double>(j * 10 + s);
      },
      [](std::size_t) { return 0.0; });
  CHECK(ms.element(1) == 11.0);
  CHECK(ms.element(2) == 21.0); // plan extended: block 2 starts at position 2
  CHECK_THROWS_AS(ms.element(10), numeric_error); // block 3 needs position 4

  merged_sequence<double> no_provider(block_plan::make(std::vector<double>{0.0, 0.0}, 1),
                                      [](std::size_t, std::uint64_t) { return 0.0; });
  CHECK_THROWS_AS(no_provider.element(2), validation_error);
}
