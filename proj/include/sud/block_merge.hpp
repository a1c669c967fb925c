#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sud/errors.hpp"

namespace sud {

/// Block lengths for concatenating approximating sequences: block j gets
/// r_j = max(j^2, ceil(j * (C_1 + ... + C_{j+1}))), the minimal admissible
/// choice given the per-source constants C_j.
class block_plan {
public:
  block_plan() = default;

  /// Needs at least block_count + 1 constants.
  static block_plan make(std::span<const double> constants, std::size_t block_count);

  /// Plan loaded from explicit lengths; rejects an inadmissible plan.
  static block_plan from_parts(std::vector<double> constants, std::vector<std::uint64_t> lengths);

  std::size_t blocks() const { return lengths_.size(); }
  std::uint64_t length(std::size_t j) const { return lengths_[j - 1]; }   // 1-based
  std::uint64_t offset(std::size_t j) const { return offsets_[j - 1]; }   // r_1 + ... + r_j
  std::uint64_t coverage() const { return offsets_.empty() ? 0 : offsets_.back(); }
  const std::vector<double>& constants() const { return constants_; }
  const std::vector<std::uint64_t>& lengths() const { return lengths_; }
  const std::vector<std::uint64_t>& offsets() const { return offsets_; }

  /// Appends one more block; needs constant C_{j+1} for the new block j.
  void extend(double next_constant);

  struct position {
    std::size_t block; // 1-based
    std::uint64_t pos; // 1-based within the block
  };
  /// Unique decomposition n = r_1 + ... + r_{j-1} + s with 0 < s <= r_j.
  position locate(std::uint64_t n) const;

private:
  std::vector<double> constants_; // C_1 .. C_{J+1}
  std::vector<std::uint64_t> lengths_;
  std::vector<std::uint64_t> offsets_;

  static std::uint64_t admissible_length(std::size_t j, std::span<const double> constants);
};

/// Averaging weights (r_1/N, ..., r_k/N, s/N) for N = r_1+...+r_k+s with
/// 0 < s <= r_{k+1}; entries are nonnegative and sum to one. Requires N > r_1.
std::vector<double> summability_row(const block_plan& plan, std::uint64_t n);

/// Interleaves unbounded source sequences block by block: the element at
/// global position n is x_{j,s} for the plan decomposition of n. Sources
/// signal exhaustion by throwing; they are contractually infinite.
template <typename T>
class merged_sequence {
public:
  using source_fn = std::function<T(std::size_t block, std::uint64_t pos)>;
  using constant_fn = std::function<double(std::size_t index)>; // 1-based C_j

  merged_sequence(block_plan plan, source_fn source, constant_fn more_constants = {})
      : plan_(std::move(plan)), source_(std::move(source)),
        more_constants_(std::move(more_constants)) {}

  const block_plan& plan() const { return plan_; }

  T element(std::uint64_t n) {
    ensure_covered(n);
    auto [block, pos] = plan_.locate(n);
    return source_(block, pos);
  }

  /// (1/N) sum_{n<=N} f(x_n).
  double averaged(const std::function<double(const T&)>& f, std::uint64_t n) {
    ensure_covered(n);
    double sum = 0.0;
    std::uint64_t done = 0;
    for (std::size_t j = 1; done < n; ++j) {
      std::uint64_t take = std::min<std::uint64_t>(plan_.length(j), n - done);
      for (std::uint64_t s = 1; s <= take; ++s) sum += f(source_(j, s));
      done += take;
    }
    return sum / static_cast<double>(n);
  }

  void ensure_covered(std::uint64_t n) {
    while (plan_.coverage() < n) {
      if (!more_constants_)
        throw validation_error("merged_sequence: plan too short and no constants available");
      plan_.extend(more_constants_(plan_.constants().size() + 1));
    }
  }

private:
  block_plan plan_;
  source_fn source_;
  constant_fn more_constants_;
};

} // namespace sud
