#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sud::verify {

struct check_result {
  std::string label;
  bool passed;
  std::string detail; // worst observed values, thresholds
};

struct suite_result {
  std::string suite;
  std::vector<check_result> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite. `trials` scales the randomized sweeps where the
/// suite has one (0 picks the default size); `seed` fixes every random choice.
suite_result run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed);

suite_result suite_lemma1(std::uint64_t trials, std::uint64_t seed);
suite_result suite_prop1(std::uint64_t trials, std::uint64_t seed);
suite_result suite_theorem2(std::uint64_t trials, std::uint64_t seed);
suite_result suite_theorem1();
suite_result suite_lemma3();
suite_result suite_remark9(std::uint64_t trials, std::uint64_t seed);
suite_result suite_theorem9();
suite_result suite_sampler();

} // namespace sud::verify
