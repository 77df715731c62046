#ifndef DELTAM_SUBSPACE_HPP
#define DELTAM_SUBSPACE_HPP

#include <string>
#include <vector>

#include "deltam/exppoly.hpp"
#include "deltam/matrix.hpp"
#include "deltam/rational.hpp"

namespace deltam {

/// Finite-dimensional subspace of an ambient space, held as generating
/// functions plus an orthonormal coordinate basis of their span.
class Subspace {
 public:
  Subspace(AmbientSpace ambient, std::vector<ExpPolynomial> generators,
           const Tolerance& tol = {});

  static Subspace from_coordinates(AmbientSpace ambient, const std::vector<Vector>& coords,
                                   const Tolerance& tol = {});

  const AmbientSpace& ambient() const noexcept { return ambient_; }
  const std::vector<ExpPolynomial>& generators() const noexcept { return gens_; }
  /// Orthonormal basis of the span, in ambient coordinates.
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  /// Distance from a coordinate vector to the span.
  double residual(const Vector& coords) const;
  bool contains(const ExpPolynomial& f, const Tolerance& tol = {}) const;

 private:
  AmbientSpace ambient_;
  std::vector<ExpPolynomial> gens_;
  std::vector<Vector> basis_;
};

/// Step length a + b sqrt(2) with exact rational a, b. Closed under the
/// ratio test used by the two-step hypothesis: x / y is rational exactly
/// when the cross determinant of the coefficient pairs vanishes.
class ExactStep {
 public:
  ExactStep() = default;
  ExactStep(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// Accepts "a", "b*sqrt2", "sqrt2", "a+b*sqrt2", "a-b*sqrt2" with
  /// rational a, b (signs and fractions allowed, spaces ignored).
  static ExactStep parse(const std::string& text);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& root_part() const noexcept { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  double value() const;
  std::string str() const;

  friend bool operator==(const ExactStep& x, const ExactStep& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_, b_;
};

/// Whether x / y lies in the rationals; y must be nonzero.
bool ratio_is_rational(const ExactStep& x, const ExactStep& y);

}  // namespace deltam

#endif
