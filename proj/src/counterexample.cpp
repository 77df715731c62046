#include "deltam/counterexample.hpp"

#include <cmath>
#include <stdexcept>

#include "deltam/diffops.hpp"
#include "deltam/errors.hpp"

namespace deltam {

PeriodicFn::PeriodicFn(double period, std::function<double(double)> profile)
    : period_(period), profile_(std::move(profile)) {
  if (!(period > 0.0)) throw std::invalid_argument("PeriodicFn: period must be positive");
}

double PeriodicFn::operator()(double x) const {
  double r = std::fmod(x, period_);
  if (r < 0.0) r += period_;
  return profile_(r);
}

PeriodicFn sawtooth(double h) {
  return PeriodicFn(h, [h](double x) { return std::min(x, h - x); });
}

Antidifference::Antidifference(std::function<double(double)> g, double h,
                               const Tolerance& tol)
    : g_(std::move(g)), h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("Antidifference: step must be positive");
  double scale = 0.0;
  for (int k = -6; k <= 6; ++k) scale = std::max(scale, std::abs(g_(h * (k + 0.5))));
  for (int k = -6; k <= 6; ++k) {
    if (std::abs(g_(h * k)) > tol.threshold(scale))
      throw HypothesisError(
          "Antidifference: integrand does not vanish at step multiples");
  }
}

double Antidifference::operator()(double z) const {
  const double k = std::floor(z / h_);
  const long n = static_cast<long>(k);
  if (n >= 0) {
    // z = x + n h with x in [0, h): sum of g over the n points below z.
    const double x = z - k * h_;
    double s = 0.0;
    for (long j = 0; j < n; ++j) s += g_(x + h_ * static_cast<double>(j));
    return s;
  }
  double s = 0.0;
  for (long j = 0; j < -n; ++j) s -= g_(z + h_ * static_cast<double>(j));
  return s;
}

std::function<double(double)> antidifference_iterated(std::function<double(double)> g,
                                                      double h, std::size_t depth,
                                                      const Tolerance& tol) {
  if (depth > 6)
    throw std::invalid_argument("antidifference_iterated: depth above 6 not supported");
  std::function<double(double)> f = std::move(g);
  for (std::size_t i = 0; i < depth; ++i) f = Antidifference(f, h, tol);
  return f;
}

Counterexample build_counterexample(std::size_t m, std::size_t p, std::size_t q,
                                    double h, const Tolerance& tol) {
  if (m == 0)
    throw std::invalid_argument("build_counterexample: order must be positive");
  if (p == 0 || q == 0)
    throw std::invalid_argument("build_counterexample: step multiples must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("build_counterexample: step must be positive");

  Counterexample out;
  out.f = antidifference_iterated(sawtooth(h), h, m - 1, tol);
  out.m = m;
  out.h = h;
  out.h1 = static_cast<double>(p) * h;
  out.h2 = static_cast<double>(q) * h;
  return out;
}

double verify_period_multiple(const std::function<double(double)>& f, double h,
                              std::size_t m, std::size_t p,
                              const std::vector<double>& grid) {
  const DifferenceOp op = DifferenceOp::delta(1, 0).pow(m);
  const auto vals = apply_sampled(op, f, {static_cast<double>(p) * h}, grid);
  double worst = 0.0;
  for (double v : vals) worst = std::max(worst, std::abs(v));
  return worst;
}

std::optional<CornerWitness> non_analytic_witness(const std::function<double(double)>& f,
                                                  const std::vector<double>& points,
                                                  double delta, const Tolerance& tol) {
  if (!(delta > 0.0))
    throw std::invalid_argument("non_analytic_witness: width must be positive");
  for (double t : points) {
    const double fm = f(t - delta), f0 = f(t), fp = f(t + delta);
    const double left = (f0 - fm) / delta;
    const double right = (fp - f0) / delta;
    const double scale = 1.0 + std::abs(left) + std::abs(right);
    if (std::abs(right - left) > 10.0 * tol.eps() * scale)
      return CornerWitness{t, left, right};
  }
  return std::nullopt;
}

}  // namespace deltam
