#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sud/bv_oracle.hpp"
#include "sud/plj.hpp"
#include "sud/signed_sequence.hpp"

namespace sud {

/// Base-2 radical inverse of n >= 1; values lie in (0,1).
double van_der_corput(std::uint64_t n);

/// inf{x in [a,b] : g(x) >= t} for a nondecreasing g with g(a)=0, g(b)=1;
/// t is clamped into [0,1] (set *clamped when supplied).
double generalized_inverse(const plj_function& g, double t, bool* clamped = nullptr);

/// Transport of the radical-inverse sequence through a continuous increasing
/// distribution function phi with phi(a)=0, phi(b)=1. Every prefix of length
/// N has star discrepancy at most log(N+1)/(N log 2) with respect to phi.
std::vector<double> ud_continuous_increasing(const plj_function& phi, std::uint64_t n);

/// Same transport for a callable continuous increasing phi (inverted by
/// bisection to full double precision).
std::vector<double> ud_continuous_increasing(const std::function<double(double)>& phi, double a,
                                             double b, std::uint64_t n);

/// Signed point sequence for a unit-variation phi: points are transported
/// through the variation function, signs come from the sign density (atom
/// signs at jump locations, piece signs elsewhere).
std::vector<signed_term> signed_sequence_polygonal(const plj_function& phi, std::uint64_t n);

/// sup over x of |(1/N) sum_k eps_k chi_[a,x)(x_k) - (phi(x) - phi(a))|,
/// evaluated exactly by scanning one-sided values at all sample points and
/// target breakpoints.
double star_discrepancy_signed(std::span<const signed_term> prefix, const plj_function& target);

/// sup over half-open subintervals; equals the oscillation of the pointwise
/// deviation over the same one-sided evaluation points.
double interval_discrepancy_signed(std::span<const signed_term> prefix,
                                   const plj_function& target);

/// Weighted variants shared by the signed discrepancies and their
/// positive/negative-part versions: deviation of (1/N) sum_k w_k chi_[a,x)(x_k)
/// from target increments.
double star_discrepancy_weighted(std::span<const double> xs, std::span<const double> weights,
                                 std::uint64_t n, const plj_function& target);
double interval_discrepancy_weighted(std::span<const double> xs, std::span<const double> weights,
                                     std::uint64_t n, const plj_function& target);

/// Star discrepancy of plain points against a continuous increasing callable
/// distribution function on [a,b]; exact for monotone targets.
double star_discrepancy_points(std::span<const double> xs, const std::function<double(double)>& cdf,
                               double a, double b);

/// A-priori star-discrepancy bound for a level-k signed sequence observed at
/// prefix length m, where the sign density has at most `alternations` changes:
/// 2*(alternations+1)*log(m+1)/(m log 2).
double schedule_bound(int alternations, std::uint64_t m);

/// Smallest m > floor_exclusive with schedule_bound(alternations, m) <= 1/k.
std::uint64_t schedule_threshold(int alternations, std::size_t k, std::uint64_t floor_exclusive);

/// Thresholds N_k plus the block-to-approximant assignment K: blocks m with
/// N_{k-1} <= m < N_k use approximant k (blocks before N_1 use the first).
struct arrangement_schedule {
  std::vector<std::uint64_t> thresholds;

  std::size_t approximant_for_block(std::uint64_t m) const;
};

arrangement_schedule make_arrangement_schedule(std::span<const int> alternation_counts,
                                               std::size_t k_max);

/// The full pipeline for a unit-variation BV oracle: polygonal approximants,
/// normalization, discrepancy-scheduled arrangement, and block-diagonal
/// emission (block m carries the first m terms of the sequence attached to
/// approximant K(m)). The empirical signed and unsigned distribution
/// functions of the stream converge to phi and its variation at every point.
signed_sequence diagonal_signed_sequence(const bv_oracle& oracle);

/// Seeded i.i.d. sampling: points by inverse transport of a counter-based
/// uniform stream through the variation function, signs from the sign
/// density. Bit-for-bit reproducible per seed.
signed_sequence iid_sampler(const plj_function& phi, std::uint64_t seed);

/// The four empirical functionals of a signed prefix, estimating the
/// integrals of f against |mu|, mu, mu+ and mu-.
struct empirical_functionals_result {
  double abs_mean;    // (1/N) sum f(x_k)
  double signed_mean; // (1/N) sum eps_k f(x_k)
  double pos_mean;    // (1/2N) sum (1+eps_k) f(x_k)
  double neg_mean;    // (1/2N) sum (1-eps_k) f(x_k)
};

empirical_functionals_result empirical_functionals(std::span<const signed_term> prefix,
                                                   const std::function<double(double)>& f);

/// Reference integral of f against the measure of phi: slope-weighted
/// quadrature over the linear pieces plus jump masses times f at the jump
/// locations. Adaptive to absolute tolerance 1e-10.
double riemann_stieltjes(const std::function<double(double)>& f, const plj_function& phi);

} // namespace sud
