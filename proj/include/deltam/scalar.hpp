#ifndef DELTAM_SCALAR_HPP
#define DELTAM_SCALAR_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace deltam {

using Scalar = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Relative zero threshold used throughout: a quantity of magnitude x is
/// treated as zero against a problem of scale s when x <= eps * (1 + s).
class Tolerance {
 public:
  Tolerance() : eps_(kDefaultTol) {}
  Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
      throw std::invalid_argument("tolerance must lie in (0, 1)");
  }

  double eps() const noexcept { return eps_; }
  double threshold(double scale) const noexcept { return eps_ * (1.0 + scale); }
  bool is_zero(double magnitude, double scale) const noexcept {
    return magnitude <= threshold(scale);
  }

 private:
  double eps_;
};

inline double abs2(Scalar z) noexcept {
  return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace deltam

#endif
