#include "sud/finite_ud.hpp"

#include <cmath>

namespace sud {

std::uint64_t discrepancy_constant(std::uint64_t m) {
  if (m == 0) throw validation_error("discrepancy_constant: support size must be >= 1");
  return (m - 1) * (m / 2);
}

atom_sequence generate_finite(const finite_signed_measure& mu, std::uint64_t n) {
  mu.require_probability();
  const std::size_t m = mu.size();
  std::vector<std::uint64_t> counts(m, 0);
  std::vector<std::uint32_t> indices;
  indices.reserve(n);
  for (std::uint64_t step = 1; step <= n; ++step) {
    std::size_t best = 0;
    double best_deficit = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      double deficit = static_cast<double>(step) * mu.at(i).weight - static_cast<double>(counts[i]);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = i;
      }
    }
    ++counts[best];
    indices.push_back(static_cast<std::uint32_t>(best));
  }
  return {mu, std::move(indices), std::move(counts)};
}

double subset_discrepancy_from_counts(const std::vector<std::uint64_t>& counts,
                                      const finite_signed_measure& mu, std::uint64_t n) {
  // per-atom deviations sum to zero, so the worst subset collects exactly the
  // positive ones: sup = (1/2) * sum |count/N - weight|
  double l1 = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    l1 += std::abs(static_cast<double>(counts[i]) / static_cast<double>(n) - mu.at(i).weight);
  return 0.5 * l1;
}

double subset_discrepancy(const atom_sequence& seq, std::uint64_t n) {
  if (n == 0 || n > seq.indices.size())
    throw validation_error("subset_discrepancy: N outside the generated prefix");
  std::vector<std::uint64_t> counts(seq.measure.size(), 0);
  for (std::uint64_t k = 0; k < n; ++k) ++counts[seq.indices[k]];
  return subset_discrepancy_from_counts(counts, seq.measure, n);
}

mean_gap mean_vs_integral(const atom_sequence& seq, const std::function<double(std::size_t)>& f,
                          std::uint64_t n) {
  if (n == 0 || n > seq.indices.size())
    throw validation_error("mean_vs_integral: N outside the generated prefix");
  double sum = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) sum += f(seq.indices[k]);
  double mean = sum / static_cast<double>(n);
  double integral = 0.0;
  for (std::size_t i = 0; i < seq.measure.size(); ++i) integral += f(i) * seq.measure.at(i).weight;
  return {mean, integral, std::abs(mean - integral)};
}

} // namespace sud
