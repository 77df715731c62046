#include "deltam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "deltam/errors.hpp"

namespace deltam {

double inf_norm(const Vector& v) {
  double best = 0.0;
  for (const auto& x : v) best = std::max(best, std::abs(x));
  return best;
}

double two_norm(const Vector& v) {
  double s = 0.0;
  for (const auto& x : v) s += abs2(x);
  return std::sqrt(s);
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

namespace {

void axpy(Scalar alpha, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vector& v, Scalar s) {
  for (auto& x : v) x *= s;
}

}  // namespace

RankKernel rank_kernel(const Matrix& M, const Tolerance& tol) {
  const std::size_t r = M.rows(), n = M.cols();
  RankKernel out;
  if (n == 0) return out;
  if (r == 0) {
    // Every direction is in the kernel.
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n, Scalar(0));
      e[j] = Scalar(1);
      out.kernel.push_back(std::move(e));
    }
    return out;
  }

  Matrix A = M;
  std::vector<std::size_t> colperm(n);
  std::iota(colperm.begin(), colperm.end(), 0);
  const double thresh = tol.threshold(M.max_abs());

  std::size_t rank = 0;
  const std::size_t steps = std::min(r, n);
  for (std::size_t s = 0; s < steps; ++s) {
    // Full pivoting: the largest remaining entry decides whether the
    // residual block still carries rank.
    std::size_t pi = s, pj = s;
    double best = 0.0;
    for (std::size_t i = s; i < r; ++i)
      for (std::size_t j = s; j < n; ++j) {
        const double a = std::abs(A(i, j));
        if (a > best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (best <= thresh) break;

    if (pi != s)
      for (std::size_t j = 0; j < n; ++j) std::swap(A(s, j), A(pi, j));
    if (pj != s) {
      for (std::size_t i = 0; i < r; ++i) std::swap(A(i, s), A(i, pj));
      std::swap(colperm[s], colperm[pj]);
    }

    for (std::size_t i = s + 1; i < r; ++i) {
      const Scalar f = A(i, s) / A(s, s);
      if (f == Scalar(0)) continue;
      A(i, s) = Scalar(0);
      for (std::size_t j = s + 1; j < n; ++j) A(i, j) -= f * A(s, j);
    }
    ++rank;
  }
  out.rank = rank;

  // Null space by back substitution: one vector per free column.
  for (std::size_t f = rank; f < n; ++f) {
    Vector y(n, Scalar(0));
    y[f] = Scalar(1);
    for (std::size_t ii = rank; ii-- > 0;) {
      Scalar s = -A(ii, f);
      for (std::size_t j = ii + 1; j < rank; ++j) s -= A(ii, j) * y[j];
      y[ii] = s / A(ii, ii);
    }
    Vector x(n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) x[colperm[k]] = y[k];
    out.kernel.push_back(std::move(x));
  }
  out.kernel = orthonormal_basis(out.kernel, tol);
  return out;
}

std::vector<Vector> orthonormal_basis(const std::vector<Vector>& vecs,
                                      const Tolerance& tol) {
  std::vector<Vector> work;
  for (const auto& v : vecs)
    if (!v.empty()) work.push_back(v);
  if (work.empty()) return {};

  double scale0 = 0.0;
  for (const auto& v : work) scale0 = std::max(scale0, two_norm(v));
  const double thresh = tol.threshold(scale0);

  std::vector<Vector> basis;
  std::vector<bool> used(work.size(), false);
  for (;;) {
    std::size_t pick = work.size();
    double best = thresh;
    for (std::size_t k = 0; k < work.size(); ++k) {
      if (used[k]) continue;
      const double nk = two_norm(work[k]);
      if (nk > best) {
        best = nk;
        pick = k;
      }
    }
    if (pick == work.size()) break;

    Vector q = work[pick];
    used[pick] = true;
    // Second orthogonalization pass keeps the basis orthonormal to roundoff.
    for (const auto& b : basis) axpy(-dot(b, q), b, q);
    const double nq = two_norm(q);
    if (nq <= thresh) continue;
    scale(q, Scalar(1.0 / nq));
    for (std::size_t k = 0; k < work.size(); ++k)
      if (!used[k]) axpy(-dot(q, work[k]), q, work[k]);
    basis.push_back(std::move(q));
  }
  return basis;
}

double projection_residual(const Vector& v, const std::vector<Vector>& onb) {
  Vector r = v;
  for (const auto& q : onb) axpy(-dot(q, r), q, r);
  // One refinement pass: residual components parallel to the basis are
  // roundoff left by the first sweep.
  for (const auto& q : onb) axpy(-dot(q, r), q, r);
  return two_norm(r);
}

std::vector<Vector> subspace_sum(const std::vector<Vector>& A,
                                 const std::vector<Vector>& B,
                                 const Tolerance& tol) {
  std::vector<Vector> all = A;
  all.insert(all.end(), B.begin(), B.end());
  return orthonormal_basis(all, tol);
}

std::vector<Vector> subspace_intersection(const std::vector<Vector>& A,
                                          const std::vector<Vector>& B,
                                          const Tolerance& tol) {
  const auto QA = orthonormal_basis(A, tol);
  const auto QB = orthonormal_basis(B, tol);
  if (QA.empty() || QB.empty()) return {};
  const std::size_t n = QA.front().size();
  Matrix C(n, QA.size() + QB.size());
  for (std::size_t j = 0; j < QA.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) C(i, j) = QA[j][i];
  for (std::size_t j = 0; j < QB.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) C(i, QA.size() + j) = -QB[j][i];

  // ker[QA | -QB] pairs coefficients (x, y) with QA x = QB y, which is
  // exactly a vector in both spans.
  std::vector<Vector> meet;
  for (const auto& z : rank_kernel(C, tol).kernel) {
    Vector v(n, Scalar(0));
    for (std::size_t j = 0; j < QA.size(); ++j) axpy(z[j], QA[j], v);
    meet.push_back(std::move(v));
  }
  return orthonormal_basis(meet, tol);
}

bool subspace_contained_in(const std::vector<Vector>& A,
                           const std::vector<Vector>& B,
                           const Tolerance& tol) {
  const auto QB = orthonormal_basis(B, tol);
  for (const auto& a : A) {
    const double na = two_norm(a);
    if (projection_residual(a, QB) > tol.threshold(na)) return false;
  }
  return true;
}

std::vector<Vector> generalized_eigenspace(const Matrix& T, Scalar lambda,
                                           const Tolerance& tol) {
  if (!T.is_square()) throw std::invalid_argument("generalized_eigenspace: square matrix required");
  const std::size_t n = T.rows();
  if (n == 0) return {};

  Matrix M = T;
  for (std::size_t i = 0; i < n; ++i) M(i, i) -= lambda;

  Matrix P = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    P = P * M;
    const double s = P.max_abs();
    if (s == 0.0) break;  // exactly nilpotent at this power
    // Rescaling keeps entry magnitudes moderate; the kernel is unchanged.
    if (s > 1e50 || s < 1e-50) P = P * Scalar(1.0 / s);
  }
  return rank_kernel(P, tol).kernel;
}

namespace {

// LU with partial pivoting, in place. Returns the pivot permutation sign and
// row index array; throws on exact singularity only when require_solve is set.
struct LUResult {
  Matrix lu;
  std::vector<std::size_t> piv;
  int sign = 1;
  bool singular = false;
};

LUResult lu_factor(const Matrix& A) {
  const std::size_t n = A.rows();
  LUResult r{A, std::vector<std::size_t>(n), 1, false};
  std::iota(r.piv.begin(), r.piv.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(r.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double a = std::abs(r.lu(i, k));
      if (a > best) {
        best = a;
        p = i;
      }
    }
    if (best == 0.0) {
      r.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r.lu(k, j), r.lu(p, j));
      std::swap(r.piv[k], r.piv[p]);
      r.sign = -r.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = r.lu(i, k) / r.lu(k, k);
      r.lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) r.lu(i, j) -= f * r.lu(k, j);
    }
  }
  return r;
}

}  // namespace

Matrix solve(const Matrix& A, const Matrix& B) {
  if (!A.is_square()) throw std::invalid_argument("solve: square matrix required");
  if (A.rows() != B.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = A.rows();
  LUResult f = lu_factor(A);
  if (f.singular) throw std::runtime_error("solve: singular matrix");
  Matrix X(n, B.cols());
  for (std::size_t c = 0; c < B.cols(); ++c) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = B(f.piv[i], c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) y[i] -= f.lu(i, j) * y[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= f.lu(ii, j) * y[j];
      y[ii] /= f.lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) X(i, c) = y[i];
  }
  return X;
}

Vector solve(const Matrix& A, const Vector& b) {
  Matrix B(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) B(i, 0) = b[i];
  return solve(A, B).column(0);
}

Matrix inverse(const Matrix& A) { return solve(A, Matrix::identity(A.rows())); }

Scalar determinant(const Matrix& A) {
  if (!A.is_square()) throw std::invalid_argument("determinant: square matrix required");
  if (A.rows() == 0) return Scalar(1);
  LUResult f = lu_factor(A);
  if (f.singular) return Scalar(0);
  Scalar d(static_cast<double>(f.sign));
  for (std::size_t i = 0; i < A.rows(); ++i) d *= f.lu(i, i);
  return d;
}

std::vector<Scalar> eigenvalues_small(const Matrix& M, const Tolerance& tol) {
  if (!M.is_square()) throw std::invalid_argument("eigenvalues_small: square matrix required");
  const std::size_t n = M.rows();
  if (n == 0) return {};
  if (n > 16) throw std::invalid_argument("eigenvalues_small: order above 16 not supported");
  if (n == 1) return {M(0, 0)};

  // Monic characteristic polynomial evaluated through an LU determinant.
  const auto p = [&M, n](Scalar z) {
    Matrix B(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = (i == j ? z - M(i, j) : -M(i, j));
    return determinant(B);
  };

  Scalar center(0);
  for (std::size_t i = 0; i < n; ++i) center += M(i, i);
  center /= static_cast<double>(n);
  double radius = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = std::abs(M(i, i) - center);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += std::abs(M(i, j));
    radius = std::max(radius, s);
  }
  radius *= 1.1;

  std::vector<Scalar> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.37;
    z[k] = center + radius * Scalar(std::cos(ang), std::sin(ang));
  }

  const double accept = tol.eps() * std::pow(1.0 + M.inf_norm(), static_cast<double>(n));
  double best_res = std::numeric_limits<double>::infinity();

  std::vector<Scalar> pz(n);
  for (int iter = 0; iter < 600; ++iter) {
    double max_res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      pz[k] = p(z[k]);
      max_res = std::max(max_res, std::abs(pz[k]));
    }
    best_res = std::min(best_res, max_res);
    if (max_res <= accept) break;

    double max_step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Scalar den(1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Scalar d = z[k] - z[j];
        if (std::abs(d) < 1e-14 * (1.0 + std::abs(z[k])))
          d = Scalar(1e-14 * (1.0 + std::abs(z[k])), 0.0);
        den *= d;
      }
      Scalar dz = pz[k] / den;
      if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag())) {
        z[k] += 1e-6 * radius * Scalar(std::cos(0.7 * k + 1.0), std::sin(0.7 * k + 1.0));
        continue;
      }
      z[k] -= dz;
      max_step = std::max(max_step, std::abs(dz));
    }
    if (max_step <= 1e-15 * (1.0 + radius)) break;
  }

  double final_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) final_res = std::max(final_res, std::abs(p(z[k])));
  best_res = std::min(best_res, final_res);
  if (final_res > accept)
    throw EigenSolverError("eigenvalues_small: residual above acceptance threshold",
                           best_res);

  // Order by (re, im) with components quantized relative to the spectrum
  // scale, so that conjugate pairs whose real parts differ only by rounding
  // noise still sort the same way on every run.
  double scale = 0.0;
  for (const Scalar& w : z)
    scale = std::max({scale, std::abs(w.real()), std::abs(w.imag())});
  const double quantum = scale > 0.0 ? scale * 1e-12 : 1.0;
  auto key = [quantum](Scalar w) {
    return std::pair<long long, long long>(std::llround(w.real() / quantum),
                                           std::llround(w.imag() / quantum));
  };
  std::sort(z.begin(), z.end(),
            [&key](Scalar a, Scalar b) { return key(a) < key(b); });
  return z;
}

Vector least_squares(const Matrix& G, const Vector& y, const Tolerance& tol) {
  if (G.rows() != y.size()) throw std::invalid_argument("least_squares: shape mismatch");
  const std::size_t m = G.rows(), k = G.cols();
  std::vector<Vector> cols = G.columns();
  Vector rhs = y;

  double scale0 = 0.0;
  for (const auto& c : cols) scale0 = std::max(scale0, two_norm(c));
  const double thresh = tol.threshold(scale0);

  std::vector<std::size_t> sel;           // pivot order
  Matrix R(k, k);                         // row: step, column: original index
  Vector diag(k, Scalar(0));
  Vector qy(k, Scalar(0));                // projections of rhs
  std::vector<bool> used(k, false);

  for (std::size_t step = 0; step < std::min(m, k); ++step) {
    std::size_t pick = k;
    double best = thresh;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double nj = two_norm(cols[j]);
      if (nj > best) {
        best = nj;
        pick = j;
      }
    }
    if (pick == k) break;
    used[pick] = true;

    Vector q = cols[pick];
    scale(q, Scalar(1.0 / best));
    diag[step] = Scalar(best);
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      const Scalar c = dot(q, cols[j]);
      axpy(-c, q, cols[j]);
      R(step, j) = c;
    }
    qy[step] = dot(q, rhs);
    axpy(-qy[step], q, rhs);
    sel.push_back(pick);
  }

  // Back substitution over the selected columns; off-diagonal entries were
  // stored under original column indices, the diagonal separately.
  const std::size_t r = sel.size();
  Vector csel(r, Scalar(0));
  for (std::size_t ii = r; ii-- > 0;) {
    Scalar s = qy[ii];
    for (std::size_t jj = ii + 1; jj < r; ++jj) s -= R(ii, sel[jj]) * csel[jj];
    csel[ii] = s / diag[ii];
  }
  Vector c(k, Scalar(0));
  for (std::size_t i = 0; i < r; ++i) c[sel[i]] = csel[i];
  return c;
}

}  // namespace deltam
