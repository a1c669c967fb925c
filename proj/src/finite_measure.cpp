#include "sud/finite_measure.hpp"

#include <cmath>
#include <unordered_set>

namespace sud {

finite_signed_measure::finite_signed_measure(std::vector<atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw validation_error("measure needs at least one atom");
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.weight) || a.weight == 0.0)
      throw validation_error("atom weight must be finite and nonzero");
    if (a.location && !std::isfinite(*a.location))
      throw validation_error("atom location must be finite");
    if (!seen.insert(a.label).second)
      throw validation_error("duplicate atom label '" + a.label + "'");
  }
}

double finite_signed_measure::norm() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.weight);
  return s;
}

double finite_signed_measure::total() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

bool finite_signed_measure::is_probability(double tol) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.weight <= 0.0) return false;
    s += a.weight;
  }
  return std::abs(s - 1.0) <= tol;
}

void finite_signed_measure::require_probability() const {
  if (!is_probability())
    throw validation_error("measure is not a probability: weights must be positive and sum to 1");
}

} // namespace sud
