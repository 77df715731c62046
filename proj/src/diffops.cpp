#include "deltam/diffops.hpp"

#include <stdexcept>

#include "deltam/parallel.hpp"

namespace deltam {

void DifferenceOp::add_term(const ShiftVector& v, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(v);
  if (it == terms_.end()) {
    terms_.emplace(v, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DifferenceOp DifferenceOp::identity(std::size_t arity) {
  DifferenceOp op(arity);
  op.add_term(ShiftVector(arity), Rational(1));
  return op;
}

DifferenceOp DifferenceOp::translation(ShiftVector v) {
  DifferenceOp op(v.size());
  op.add_term(v, Rational(1));
  return op;
}

DifferenceOp DifferenceOp::delta(std::size_t arity, std::size_t i) {
  if (i >= arity) throw std::invalid_argument("delta: step index out of range");
  return delta_along(ShiftVector::unit(arity, i));
}

DifferenceOp DifferenceOp::delta_along(ShiftVector v) {
  DifferenceOp op(v.size());
  op.add_term(v, Rational(1));
  op.add_term(ShiftVector(v.size()), Rational(-1));
  return op;
}

DifferenceOp DifferenceOp::operator+(const DifferenceOp& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("operator arity mismatch");
  DifferenceOp r = *this;
  for (const auto& [v, c] : o.terms_) r.add_term(v, c);
  return r;
}

DifferenceOp DifferenceOp::operator-(const DifferenceOp& o) const {
  return *this + o.scaled(Rational(-1));
}

DifferenceOp DifferenceOp::scaled(const Rational& s) const {
  DifferenceOp r(arity_);
  if (s.is_zero()) return r;
  for (const auto& [v, c] : terms_) r.terms_.emplace(v, c * s);
  return r;
}

DifferenceOp DifferenceOp::operator*(const DifferenceOp& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("operator arity mismatch");
  DifferenceOp r(arity_);
  for (const auto& [v1, c1] : terms_)
    for (const auto& [v2, c2] : o.terms_) r.add_term(v1 + v2, c1 * c2);
  return r;
}

DifferenceOp DifferenceOp::pow(std::size_t m) const {
  DifferenceOp acc = identity(arity_);
  DifferenceOp base = *this;
  while (m > 0) {
    if (m & 1) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return acc;
}

DifferenceOp mixed(std::size_t s) {
  if (s == 0) throw std::invalid_argument("mixed: need at least one step");
  DifferenceOp op = DifferenceOp::identity(s);
  for (std::size_t i = 0; i < s; ++i) op = op * DifferenceOp::delta(s, i);
  return op;
}

namespace {

DifferenceOp djokovic_sum(std::size_t s, bool negate_alpha) {
  if (s == 0) throw std::invalid_argument("djokovic_rhs: need at least one step");
  if (s > 8) throw std::invalid_argument("djokovic_rhs: supported up to 8 steps");
  DifferenceOp acc(s);
  for (std::size_t mask = 0; mask < (1u << s); ++mask) {
    ShiftVector alpha(s), beta(s);
    int ones = 0;
    for (std::size_t r = 0; r < s; ++r) {
      if (!(mask >> r & 1u)) continue;
      ++ones;
      // step h_{r+1} enters the inner shift with weight 1/(r+1)
      Rational w(1, static_cast<long>(r + 1));
      alpha[r] = negate_alpha ? -w : w;
      beta[r] = Rational(1);
    }
    DifferenceOp term =
        DifferenceOp::delta_along(alpha).pow(s) * DifferenceOp::translation(beta);
    if (ones % 2 == 1) term = term.scaled(Rational(-1));
    acc = acc + term;
  }
  return acc;
}

}  // namespace

DifferenceOp djokovic_rhs(std::size_t s) { return djokovic_sum(s, true); }

DifferenceOp djokovic_rhs_alt(std::size_t s) { return djokovic_sum(s, false); }

std::size_t djokovic_expansion_size(std::size_t s) {
  return (std::size_t{1} << s) * (s + 1);
}

ExpPolynomial apply(const DifferenceOp& op, const ExpPolynomial& f,
                    const std::vector<double>& steps) {
  if (steps.size() != op.arity())
    throw std::invalid_argument("apply: expected " + std::to_string(op.arity()) +
                                " step values, got " + std::to_string(steps.size()));
  ExpPolynomial acc;
  for (const auto& [v, c] : op.terms())
    acc = acc + translate(f, v.value(steps)) * Scalar(c.to_double());
  return acc;
}

namespace {

std::function<double(double)> pointwise(const DifferenceOp& op,
                                        const std::function<double(double)>& fn,
                                        const std::vector<double>& steps) {
  if (steps.size() != op.arity())
    throw std::invalid_argument("apply_sampled: expected " +
                                std::to_string(op.arity()) + " step values, got " +
                                std::to_string(steps.size()));
  // Freeze the term list into plain doubles once; the per-point closure
  // then carries no rational arithmetic.
  std::vector<std::pair<double, double>> shifts;  // (shift, coefficient)
  shifts.reserve(op.term_count());
  for (const auto& [v, c] : op.terms()) shifts.emplace_back(v.value(steps), c.to_double());
  return [shifts, fn](double t) {
    double s = 0.0;
    for (const auto& [sh, c] : shifts) s += c * fn(t + sh);
    return s;
  };
}

}  // namespace

std::vector<double> apply_sampled(const DifferenceOp& op,
                                  const std::function<double(double)>& fn,
                                  const std::vector<double>& steps,
                                  const std::vector<double>& grid) {
  return map_grid(pointwise(op, fn, steps), grid);
}

std::vector<double> apply_sampled_serial(const DifferenceOp& op,
                                         const std::function<double(double)>& fn,
                                         const std::vector<double>& steps,
                                         const std::vector<double>& grid) {
  return map_grid_serial(pointwise(op, fn, steps), grid);
}

}  // namespace deltam
