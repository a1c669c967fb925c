#pragma once

#include <stdexcept>
#include <string>

namespace sud {

/// Bad input data: schema violations, precondition failures, malformed files.
class validation_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Zero-variation input where a nondegenerate measure is required.
class degenerate_measure_error : public validation_error {
public:
  using validation_error::validation_error;
};

/// An evaluation oracle returned values that contradict its own contract
/// (e.g. a variation sample that decreases).
class oracle_error : public validation_error {
public:
  using validation_error::validation_error;
};

/// Numerical failure at run time (quadrature nonconvergence, exhausted source).
class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sud
