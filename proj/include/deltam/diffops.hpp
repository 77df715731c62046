#ifndef DELTAM_DIFFOPS_HPP
#define DELTAM_DIFFOPS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "deltam/exppoly.hpp"
#include "deltam/rational.hpp"

namespace deltam {

/// Exact rational combination of s symbolic step lengths h_1 .. h_s.
/// Component i is the coefficient of h_{i+1}.
class ShiftVector {
 public:
  explicit ShiftVector(std::size_t dim) : c_(dim, Rational(0)) {}
  explicit ShiftVector(std::vector<Rational> c) : c_(std::move(c)) {}

  static ShiftVector unit(std::size_t dim, std::size_t i) {
    ShiftVector v(dim);
    v.c_[i] = Rational(1);
    return v;
  }

  std::size_t size() const noexcept { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }

  ShiftVector operator+(const ShiftVector& o) const {
    ShiftVector r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }

  ShiftVector scaled(const Rational& s) const {
    ShiftVector r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Numeric shift once the symbolic steps take concrete values.
  double value(const std::vector<double>& steps) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i].to_double() * steps[i];
    return s;
  }

  friend bool operator==(const ShiftVector& a, const ShiftVector& b) { return a.c_ == b.c_; }
  friend bool operator<(const ShiftVector& a, const ShiftVector& b) {
    return a.c_ < b.c_;  // lexicographic through Rational ordering
  }

 private:
  std::vector<Rational> c_;
};

/// Finite rational combination of translation operators over s symbolic
/// steps. Composition is exact; terms with coefficient zero are erased, so
/// equality of maps is equality of operators.
class DifferenceOp {
 public:
  explicit DifferenceOp(std::size_t arity = 0) : arity_(arity) {}

  static DifferenceOp identity(std::size_t arity);
  static DifferenceOp translation(ShiftVector v);
  /// Forward difference along the i-th symbolic step.
  static DifferenceOp delta(std::size_t arity, std::size_t i);
  /// Forward difference along an arbitrary rational shift.
  static DifferenceOp delta_along(ShiftVector v);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<ShiftVector, Rational>& terms() const noexcept { return terms_; }

  DifferenceOp operator+(const DifferenceOp& o) const;
  DifferenceOp operator-(const DifferenceOp& o) const;
  DifferenceOp scaled(const Rational& s) const;
  /// Composition. Translations commute, so this is a convolution of terms.
  DifferenceOp operator*(const DifferenceOp& o) const;
  DifferenceOp pow(std::size_t m) const;

  friend bool operator==(const DifferenceOp& a, const DifferenceOp& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const ShiftVector& v, const Rational& c);

  std::size_t arity_;
  std::map<ShiftVector, Rational> terms_;
};

/// Product of the single-step differences along every symbolic step.
DifferenceOp mixed(std::size_t s);

/// Expansion of the mixed difference as an alternating sum, over all 0/1
/// weight vectors e, of (difference along -sum_r e_r h_r / r)^s composed
/// with a translation by sum_r e_r h_r. Cancellation inside the sum is
/// exact; the identity mixed(s) == djokovic_rhs(s) is checked by tests.
DifferenceOp djokovic_rhs(std::size_t s);

/// Sign variant with the inner shift negated, kept as a diagnostic: when
/// the primary identity fails, checking this one localizes the error.
DifferenceOp djokovic_rhs_alt(std::size_t s);

/// Raw number of summands in the expansion before cancellation.
std::size_t djokovic_expansion_size(std::size_t s);

/// Applies the operator to an exponential polynomial once the symbolic
/// steps take the given numeric values.
ExpPolynomial apply(const DifferenceOp& op, const ExpPolynomial& f,
                    const std::vector<double>& steps);

/// Applies the operator to a sampled function on a grid of evaluation
/// points. Runs in parallel when OpenMP is enabled.
std::vector<double> apply_sampled(const DifferenceOp& op,
                                  const std::function<double(double)>& fn,
                                  const std::vector<double>& steps,
                                  const std::vector<double>& grid);

/// Serial reference for apply_sampled; same arithmetic, no threading.
std::vector<double> apply_sampled_serial(const DifferenceOp& op,
                                         const std::function<double(double)>& fn,
                                         const std::vector<double>& steps,
                                         const std::vector<double>& grid);

}  // namespace deltam

#endif
