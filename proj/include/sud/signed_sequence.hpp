#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sud/errors.hpp"

namespace sud {

struct signed_term {
  double x;
  int sign; // +1 or -1
};

/// Lazily evaluated infinite stream of (point, sign) pairs. The generator is
/// indexed (1-based) and may keep internal memoization; materialized prefixes
/// are immutable and can be shared. Materialization itself is single-consumer.
class signed_sequence {
public:
  explicit signed_sequence(std::function<signed_term(std::uint64_t)> gen)
      : gen_(std::move(gen)) {}

  std::span<const signed_term> prefix(std::uint64_t n) & {
    while (cache_.size() < n) cache_.push_back(gen_(cache_.size() + 1));
    return {cache_.data(), static_cast<std::size_t>(n)};
  }
  // the span aliases the cache, so prefixes of temporaries would dangle
  std::span<const signed_term> prefix(std::uint64_t) && = delete;

  signed_term term(std::uint64_t n) {
    prefix(n);
    return cache_[n - 1];
  }

private:
  std::function<signed_term(std::uint64_t)> gen_;
  std::vector<signed_term> cache_;
};

} // namespace sud
