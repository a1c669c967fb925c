#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sud/errors.hpp"

namespace sud {

struct atom {
  std::string label;
  double weight;                     // nonzero
  std::optional<double> location{};  // set when the atom lives on the real line
};

/// Finitely supported signed measure on a discrete space. The probability
/// specialization has strictly positive weights summing to one.
class finite_signed_measure {
public:
  explicit finite_signed_measure(std::vector<atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const atom& at(std::size_t i) const { return atoms_[i]; }
  const std::vector<atom>& atoms() const { return atoms_; }

  double norm() const; // sum of |weights|
  double total() const;

  bool is_probability(double tol = 1e-12) const;
  void require_probability() const;

private:
  std::vector<atom> atoms_;
};

} // namespace sud
