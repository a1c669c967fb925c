#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sud/errors.hpp"

namespace sud {

/// One breakpoint of a piecewise-linear-with-jumps function: the one-sided
/// limits at t. The stored function value at an interior node is the right
/// limit (right-continuity convention); at the left endpoint left == right.
struct plj_node {
  double t;
  double left;
  double right;
};

struct jump_info {
  double x;
  double size; // signed jump of the function: right limit minus left limit
};

/// Real function of bounded variation on a compact interval [a,b],
/// represented as linear pieces between breakpoints plus jumps at
/// breakpoints. Doubles as the distribution function of a finite signed
/// measure on [a,b] via mu((y,x]) = f(x) - f(y). Immutable after
/// construction; variation, Jordan decomposition and sign density are
/// exactly computable.
class plj_function {
public:
  explicit plj_function(std::vector<plj_node> nodes);

  /// Continuous piecewise-linear function through (ts[i], values[i]).
  static plj_function polyline(std::span<const double> ts, std::span<const double> values);
  static plj_function linear(double a, double b, double va, double vb);
  static plj_function constant(double a, double b, double v);

  double a() const { return nodes_.front().t; }
  double b() const { return nodes_.back().t; }
  const std::vector<plj_node>& nodes() const { return nodes_; }
  std::size_t piece_count() const { return nodes_.size() - 1; }

  /// Function value, right-continuous on [a,b).
  double value(double x) const;
  double left_limit(double x) const;
  double right_limit(double x) const { return value(x); }

  double slope(std::size_t piece) const;

  /// Nonzero jumps at interior breakpoints and at b.
  std::vector<jump_info> jumps() const;
  bool is_continuous() const;
  bool is_nondecreasing() const;

  bool same_domain(const plj_function& other) const;

private:
  std::vector<plj_node> nodes_;

  std::size_t piece_index(double x) const;
  void check_in_domain(double x) const;
};

struct jordan_decomposition {
  plj_function upsilon; // total variation function, upsilon(a) = 0
  plj_function p;       // positive variation
  plj_function n;       // negative variation
};

/// Sign of the measure relative to its total variation: a +/-1 value on each
/// linear piece (zero-slope pieces carry +1 by convention) and at each jump.
class sign_density {
public:
  struct piece {
    double lo, hi;
    int sign;
  };
  struct atom_sign {
    double x;
    int sign;
  };

  sign_density(std::vector<piece> pieces, std::vector<atom_sign> atoms);

  const std::vector<piece>& pieces() const { return pieces_; }
  const std::vector<atom_sign>& atoms() const { return atoms_; }

  /// Atom signs take precedence over the surrounding piece.
  int sign_at(double x) const;

  /// Number of sign changes along the ordered pieces/atoms; one more than
  /// this many constant-sign intervals cover [a,b].
  int alternation_count() const;

private:
  std::vector<piece> pieces_;
  std::vector<atom_sign> atoms_;
};

double total_variation_value(const plj_function& phi);

/// The running total variation x -> V_a^x(phi), an increasing plj_function
/// with the same breakpoints as phi and value 0 at a.
plj_function total_variation(const plj_function& phi);

jordan_decomposition jordan(const plj_function& phi);

sign_density make_sign_density(const plj_function& phi);

/// mu((y,x]) = phi(x) - phi(y) with right-continuous values; requires
/// a <= y < x <= b.
double measure_of_interval(const plj_function& phi, double y, double x);

/// phi / V_a^b(phi); throws degenerate_measure_error when the variation is zero.
plj_function normalize(const plj_function& phi);

/// alpha*f + beta*g + shift on the merged breakpoint set. Domains must match.
plj_function affine_combine(double alpha, const plj_function& f, double beta,
                            const plj_function& g, double shift = 0.0);

plj_function scale(const plj_function& f, double s);

} // namespace sud
