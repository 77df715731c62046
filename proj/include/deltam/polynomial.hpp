#ifndef DELTAM_POLYNOMIAL_HPP
#define DELTAM_POLYNOMIAL_HPP

#include <cstddef>
#include <vector>

#include "deltam/rational.hpp"
#include "deltam/scalar.hpp"

namespace deltam {

/// Polynomial with complex coefficients, stored lowest degree first.
/// The coefficient list never ends in a zero: construction trims trailing
/// coefficients of magnitude at most trim_tol, and the empty list is the
/// zero polynomial (degree -1).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs, double trim_tol = 0.0)
      : c_(std::move(coeffs)) {
    trim(trim_tol);
  }

  static Polynomial monomial(std::size_t k, Scalar a = Scalar(1)) {
    if (a == Scalar(0)) return Polynomial();
    std::vector<Scalar> c(k + 1, Scalar(0));
    c[k] = a;
    return Polynomial(std::move(c));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }

  Scalar coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Scalar(0);
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, std::abs(a));
    return m;
  }

  Scalar evaluate(double t) const {
    Scalar acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
    return Polynomial(std::move(c));
  }

  Polynomial operator-() const {
    std::vector<Scalar> c = c_;
    for (auto& a : c) a = -a;
    return Polynomial(std::move(c));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(Scalar s) const {
    if (s == Scalar(0)) return Polynomial();
    std::vector<Scalar> c = c_;
    for (auto& a : c) a *= s;
    return Polynomial(std::move(c));
  }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Scalar> c(c_.size() + o.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
  }

  /// p(t + h), expanded through binomials. Exact for the integer part of
  /// the expansion as long as the degree stays in double range.
  Polynomial shifted(double h) const {
    if (is_zero()) return Polynomial();
    const std::size_t n = c_.size();
    std::vector<Scalar> out(n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) {
      if (c_[k] == Scalar(0)) continue;
      double hp = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        // contribution of c_k (t + h)^k to t^{k - j}
        out[k - j] += c_[k] * binomial(k, static_cast<long>(j)) * hp;
        hp *= h;
      }
    }
    return Polynomial(std::move(out));
  }

  /// Drops coefficients of magnitude at most tol, from the top down.
  Polynomial trimmed(double tol) const {
    std::vector<Scalar> c = c_;
    Polynomial p;
    p.c_ = std::move(c);
    p.trim(tol);
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  void trim(double tol) {
    while (!c_.empty() && std::abs(c_.back()) <= tol) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

inline Polynomial operator*(Scalar s, const Polynomial& p) { return p * s; }

}  // namespace deltam

#endif
