#ifndef DELTAM_COUNTEREXAMPLE_HPP
#define DELTAM_COUNTEREXAMPLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "deltam/scalar.hpp"

namespace deltam {

/// Periodic extension of a profile given on [0, period).
class PeriodicFn {
 public:
  PeriodicFn(double period, std::function<double(double)> profile);
  double period() const noexcept { return period_; }
  double operator()(double x) const;

 private:
  double period_;
  std::function<double(double)> profile_;
};

/// Triangle wave of period h: distance from x to the nearest multiple of h.
PeriodicFn sawtooth(double h);

/// Discrete antiderivative: F with F(z + h) - F(z) = g(z) and F = 0 on
/// [0, h). Continuity of F requires g to vanish at multiples of h, which
/// is checked on a few multiples at construction.
class Antidifference {
 public:
  Antidifference(std::function<double(double)> g, double h, const Tolerance& tol = {});
  double operator()(double z) const;

 private:
  std::function<double(double)> g_;
  double h_;
};

/// depth-fold antidifference, depth at most 6 (cost grows geometrically).
std::function<double(double)> antidifference_iterated(std::function<double(double)> g,
                                                      double h, std::size_t depth,
                                                      const Tolerance& tol = {});

/// Continuous f with both m-th differences of steps p h and q h vanishing
/// identically while f is not a polynomial: the (m-1)-fold antidifference
/// of the triangle wave of period h.
struct Counterexample {
  std::function<double(double)> f;
  std::size_t m = 0;
  double h = 0.0;
  double h1 = 0.0;  // p h
  double h2 = 0.0;  // q h
};

Counterexample build_counterexample(std::size_t m, std::size_t p, std::size_t q,
                                    double h = 1.0, const Tolerance& tol = {});

/// Largest |m-th difference with step p h| of f over the grid. Zero up to
/// roundoff exactly when the period h divides the step evenly.
double verify_period_multiple(const std::function<double(double)>& f, double h,
                              std::size_t m, std::size_t p,
                              const std::vector<double>& grid);

/// First grid point where one-sided difference quotients of width delta
/// disagree by more than ten tolerance units, evidence that f has a corner
/// there and so is not smooth.
struct CornerWitness {
  double point = 0.0;
  double slope_left = 0.0;
  double slope_right = 0.0;
};

std::optional<CornerWitness> non_analytic_witness(const std::function<double(double)>& f,
                                                  const std::vector<double>& points,
                                                  double delta, const Tolerance& tol = {});

}  // namespace deltam

#endif
