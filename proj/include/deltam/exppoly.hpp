#ifndef DELTAM_EXPPOLY_HPP
#define DELTAM_EXPPOLY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "deltam/matrix.hpp"
#include "deltam/polynomial.hpp"
#include "deltam/scalar.hpp"

namespace deltam {

/// One summand p(t) exp(lambda t).
struct ExpTerm {
  Scalar lambda;
  Polynomial p;
};

/// Finite sum of polynomial-times-exponential terms. Normal form:
/// frequencies pairwise distinct (merged within the construction tolerance),
/// zero polynomials dropped, terms ordered by (Re lambda, Im lambda).
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  explicit ExpPolynomial(std::vector<ExpTerm> terms, const Tolerance& tol = {});

  static ExpPolynomial from_polynomial(Polynomial p);
  /// t^k exp(lambda t)
  static ExpPolynomial basis(Scalar lambda, std::size_t k);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }

  /// Largest coefficient magnitude over all terms.
  double coeff_norm() const;
  /// True when every coefficient is at most tol.threshold(scale).
  bool is_zero_within(const Tolerance& tol, double scale) const;

  ExpPolynomial operator+(const ExpPolynomial& o) const;
  ExpPolynomial operator-(const ExpPolynomial& o) const;
  ExpPolynomial operator*(Scalar s) const;

  /// Drops coefficients of magnitude at most cutoff and renormalizes.
  ExpPolynomial cleaned(double cutoff) const;

 private:
  std::vector<ExpTerm> terms_;
};

Scalar evaluate(const ExpPolynomial& f, double t);

/// f(t + h) as an exponential polynomial. Throws OverflowError when an
/// exponential factor leaves double range.
ExpPolynomial translate(const ExpPolynomial& f, double h);

/// Frequency blocks of a finite-dimensional translation-invariant space:
/// span of t^k exp(lambda_i t), 0 <= k < mult_i. The zero frequency is
/// always present (possibly with multiplicity zero) and listed first; the
/// remaining blocks are sorted by (Re, Im).
struct FreqBlock {
  Scalar lambda;
  std::size_t mult;
};

class AmbientSpace {
 public:
  AmbientSpace() : blocks_{{Scalar(0), 0}} {}
  explicit AmbientSpace(std::vector<FreqBlock> blocks, const Tolerance& tol = {});

  std::size_t dim() const noexcept;
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const FreqBlock& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<FreqBlock>& blocks() const noexcept { return blocks_; }
  /// Index of the first coordinate of block i.
  std::size_t offset(std::size_t i) const;
  std::optional<std::size_t> find(Scalar lambda, const Tolerance& tol = {}) const;

  bool operator==(const AmbientSpace&) const = default;

 private:
  std::vector<FreqBlock> blocks_;
};

/// Coordinates of f in the basis t^k exp(lambda_i t) of S, blocks
/// concatenated in order. Throws NotInAmbientError naming the offending
/// frequency or degree when f does not lie in S.
Vector coordinates(const ExpPolynomial& f, const AmbientSpace& S,
                   const Tolerance& tol = {});

ExpPolynomial from_coordinates(const AmbientSpace& S, const Vector& v);

/// Smallest ambient space containing every given function, with the zero
/// block padded to at least min_zero_mult.
AmbientSpace hull(std::span<const ExpPolynomial> funcs,
                  std::size_t min_zero_mult = 0, const Tolerance& tol = {});

/// Real-valued presentation exp(alpha t)(c(t) cos(beta t) + s(t) sin(beta t))
/// per frequency pair, beta >= 0, coefficient polynomials real.
struct RealTerm {
  double alpha = 0.0;
  double beta = 0.0;
  Polynomial cos_part;
  Polynomial sin_part;
};

struct RealForm {
  std::vector<RealTerm> terms;
};

/// Pairs conjugate frequencies of a real-valued f. Throws
/// std::invalid_argument when f is not real-valued within the tolerance.
RealForm realify(const ExpPolynomial& f, const Tolerance& tol = {});

double evaluate(const RealForm& f, double t);

}  // namespace deltam

#endif
