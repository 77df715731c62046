#ifndef DELTAM_RECOVER_HPP
#define DELTAM_RECOVER_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "deltam/exppoly.hpp"
#include "deltam/matrix.hpp"
#include "deltam/scalar.hpp"

namespace deltam {

struct GridSpec {
  double lo = 0.5;
  double hi = 8.0;
  std::size_t count = 64;

  std::vector<double> points() const;
};

/// N sampled functions on (0, inf) together with N collocation points at
/// which their value matrix is invertible, and the difference order m.
class SampledFamily {
 public:
  SampledFamily(std::vector<std::function<Scalar(double)>> funcs,
                std::vector<double> collocation, std::size_t m,
                const Tolerance& tol = {});

  /// Collocation at t_i = i; when that value matrix is singular, one
  /// deterministic retry at t_i = i + 0.37 before giving up.
  static SampledFamily auto_collocation(std::vector<std::function<Scalar(double)>> funcs,
                                        std::size_t m, const Tolerance& tol = {});

  static SampledFamily from_exppolys(const std::vector<ExpPolynomial>& fs, std::size_t m,
                                     const Tolerance& tol = {});

  std::size_t size() const noexcept { return funcs_.size(); }
  std::size_t order() const noexcept { return m_; }
  const std::vector<double>& collocation() const noexcept { return colloc_; }
  Scalar value(std::size_t i, double t) const { return funcs_[i](t); }

  /// Value matrix, entry (i, j) = f_i(t_j).
  Matrix collocation_matrix() const;

 private:
  std::vector<std::function<Scalar(double)>> funcs_;
  std::vector<double> colloc_;
  std::size_t m_;
};

/// Convolution with a compactly supported bump of unit mass, trapezoid
/// quadrature on 64 panels. Approaches f at continuity points as the
/// width shrinks.
std::function<Scalar(double)> mollify(std::function<Scalar(double)> f, double width);
std::function<double(double)> mollify_real(std::function<double(double)> f, double width);

/// The matrix A(h) with Delta_h^m F(t_j) = A(h) F(t_j) at the collocation
/// points, F the stacked family vector.
Matrix difference_matrix(const SampledFamily& fam, double h);

struct LimitResult {
  Matrix B;
  /// Size of the last extrapolation correction (error estimate).
  double residual = 0.0;
  /// Max-norm correction per extrapolation level, for diagnostics.
  std::vector<double> table;
};

/// Extrapolated limit of A(h)/h^m as h goes to zero, polynomial
/// extrapolation through the given strictly decreasing positive steps
/// (at least three). Growing corrections raise an error carrying the
/// diagnostic table.
LimitResult limit_B(const SampledFamily& fam, const std::vector<double>& h_seq,
                    const Tolerance& tol = {});

/// Block companion matrix of y^(m) = B y: identity blocks on the block
/// superdiagonal, B in the lower left corner; m = 1 returns B itself.
Matrix companion_system(const Matrix& B, std::size_t m);

struct FrequencyCandidate {
  Scalar mu;
  std::size_t multiplicity = 1;
  /// Largest least-squares coefficient attached to this frequency across
  /// the family, with samples normalized to unit norm.
  double weight = 0.0;
  bool accepted = false;
};

struct RecoveryReport {
  std::size_t order = 1;
  Matrix B;
  double limit_residual = 0.0;
  std::vector<double> limit_table;
  Matrix companion;
  std::vector<Scalar> spectrum;
  std::vector<FrequencyCandidate> candidates;
  /// Worst relative least-squares misfit over the family.
  double misfit = 0.0;
};

struct RecoveryOptions {
  std::vector<double> h_seq{1e-2, 5e-3, 2.5e-3};
  GridSpec grid{};
  /// Companion eigenvalues closer than this (relative to spectral scale)
  /// merge into one candidate.
  double cluster_radius = 0.02;
  /// Candidates below this coefficient weight are spurious roots of the
  /// m-th power equation, not frequencies seen in the data.
  double weight_floor = 1e-4;
  /// No candidate is accepted when the overall fit is worse than this.
  double misfit_gate = 1e-2;
  Tolerance tol{};
};

/// Full pipeline: limit matrix, companion spectrum, clustering, and a
/// least-squares fit of the sampled family in the recovered exponential
/// monomial basis. Requires size * order at most 16.
RecoveryReport run_recovery(const SampledFamily& fam, const RecoveryOptions& opt = {});

/// Accepted candidate frequencies of a report.
std::vector<Scalar> frequency_recovery(const RecoveryReport& report);

/// Linear interpolant through (t, value) samples, extrapolating with the
/// edge slopes. Samples are sorted; duplicate abscissas are rejected.
std::function<double(double)> piecewise_linear(std::vector<std::pair<double, double>> samples);

}  // namespace deltam

#endif
