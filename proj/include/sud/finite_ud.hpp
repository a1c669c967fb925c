#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sud/finite_measure.hpp"

namespace sud {

/// Worst-case constant of the finite scheduler: (m-1)*floor(m/2) for a
/// support of size m. The subset deviation of a generated prefix of length N
/// stays below this constant divided by N.
std::uint64_t discrepancy_constant(std::uint64_t m);

/// A generated prefix over the atoms of a probability measure, kept as atom
/// indices plus the per-atom occurrence counts of the full prefix.
struct atom_sequence {
  finite_signed_measure measure;
  std::vector<std::uint32_t> indices;
  std::vector<std::uint64_t> counts;
};

/// Deterministic largest-deficit scheduler: step n emits the atom maximizing
/// n*mu({x}) - count_x, ties broken by atom order.
atom_sequence generate_finite(const finite_signed_measure& mu, std::uint64_t n);

/// sup over all atom subsets M of |(1/N) sum chi_M - mu(M)|, evaluated in
/// closed form as half the l1 deviation of the empirical frequencies.
double subset_discrepancy(const atom_sequence& seq, std::uint64_t n);

/// Closed form shared with incremental sweeps: counts are the occurrence
/// counts of an N-prefix.
double subset_discrepancy_from_counts(const std::vector<std::uint64_t>& counts,
                                      const finite_signed_measure& mu, std::uint64_t n);

struct mean_gap {
  double empirical_mean;
  double integral;
  double gap;
};

/// (1/N) sum f(y_k) against sum f(x) mu({x}); f is indexed by atom position.
mean_gap mean_vs_integral(const atom_sequence& seq, const std::function<double(std::size_t)>& f,
                          std::uint64_t n);

} // namespace sud
