#include "sud/block_merge.hpp"

#include <algorithm>

namespace sud {

std::uint64_t block_plan::admissible_length(std::size_t j, std::span<const double> constants) {
  double csum = 0.0;
  for (std::size_t i = 0; i <= j; ++i) {
    if (!(constants[i] >= 0.0)) throw validation_error("block_plan: constants must be >= 0");
    csum += constants[i];
  }
  double scaled = std::ceil(static_cast<double>(j) * csum);
  std::uint64_t jj = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(j);
  return std::max<std::uint64_t>(jj, scaled <= 0.0 ? 0 : static_cast<std::uint64_t>(scaled));
}

block_plan block_plan::make(std::span<const double> constants, std::size_t block_count) {
  if (block_count == 0) throw validation_error("block_plan: need at least one block");
  if (constants.size() < block_count + 1)
    throw validation_error("block_plan: need block_count + 1 constants");
  block_plan plan;
  plan.constants_.assign(constants.begin(), constants.begin() + block_count + 1);
  for (std::size_t j = 1; j <= block_count; ++j) {
    std::uint64_t r = admissible_length(j, plan.constants_);
    plan.lengths_.push_back(r);
    plan.offsets_.push_back((plan.offsets_.empty() ? 0 : plan.offsets_.back()) + r);
  }
  return plan;
}

block_plan block_plan::from_parts(std::vector<double> constants,
                                  std::vector<std::uint64_t> lengths) {
  if (lengths.empty()) throw validation_error("block_plan: no lengths");
  if (constants.size() < lengths.size() + 1)
    throw validation_error("block_plan: need one more constant than lengths");
  block_plan plan;
  plan.constants_ = std::move(constants);
  for (std::size_t j = 1; j <= lengths.size(); ++j) {
    std::uint64_t min_r = admissible_length(j, plan.constants_);
    if (lengths[j - 1] < min_r)
      throw validation_error("block_plan: length " + std::to_string(lengths[j - 1]) +
                             " at block " + std::to_string(j) + " is below the admissible minimum " +
                             std::to_string(min_r));
    plan.lengths_.push_back(lengths[j - 1]);
    plan.offsets_.push_back((plan.offsets_.empty() ? 0 : plan.offsets_.back()) + lengths[j - 1]);
  }
  return plan;
}

void block_plan::extend(double next_constant) {
  if (!(next_constant >= 0.0)) throw validation_error("block_plan: constants must be >= 0");
  constants_.push_back(next_constant);
  std::size_t j = lengths_.size() + 1;
  std::uint64_t r = admissible_length(j, constants_);
  lengths_.push_back(r);
  offsets_.push_back((offsets_.empty() ? 0 : offsets_.back()) + r);
}

block_plan::position block_plan::locate(std::uint64_t n) const {
  if (n == 0) throw validation_error("block_plan: positions are 1-based");
  if (n > coverage()) throw validation_error("block_plan: position beyond plan coverage");
  auto it = std::lower_bound(offsets_.begin(), offsets_.end(), n);
  std::size_t j = static_cast<std::size_t>(it - offsets_.begin()); // offsets_[j] >= n
  std::uint64_t before = j == 0 ? 0 : offsets_[j - 1];
  return {j + 1, n - before};
}

std::vector<double> summability_row(const block_plan& plan, std::uint64_t n) {
  if (plan.blocks() == 0 || n <= plan.length(1))
    throw validation_error("summability_row: N must exceed the first block length");
  if (n > plan.coverage())
    throw validation_error("summability_row: N beyond plan coverage");
  // largest k with r_1 + ... + r_k < N, remainder s in block k+1
  std::vector<double> row;
  std::uint64_t before = 0;
  double nd = static_cast<double>(n);
  for (std::size_t j = 1; j <= plan.blocks(); ++j) {
    if (plan.offset(j) < n) {
      row.push_back(static_cast<double>(plan.length(j)) / nd);
      before = plan.offset(j);
    } else {
      row.push_back(static_cast<double>(n - before) / nd);
      break;
    }
  }
  return row;
}

} // namespace sud
