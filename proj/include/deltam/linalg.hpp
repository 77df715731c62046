#ifndef DELTAM_LINALG_HPP
#define DELTAM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "deltam/matrix.hpp"
#include "deltam/scalar.hpp"

namespace deltam {

double inf_norm(const Vector& v);
double two_norm(const Vector& v);
/// Conjugate-linear in the first argument.
Scalar dot(const Vector& a, const Vector& b);

struct RankKernel {
  std::size_t rank = 0;
  std::vector<Vector> kernel;  // orthonormal basis of the numerical null space
};

/// Rank and null space of M by Gaussian elimination with full pivoting.
/// Pivots below tol.threshold(max entry of M) are treated as zero. Every
/// returned kernel vector v satisfies |M v|_inf <= tol.threshold(|M|_inf).
RankKernel rank_kernel(const Matrix& M, const Tolerance& tol = {});

/// Orthonormal basis of the span of the given vectors, modified Gram-Schmidt
/// with pivoting on residual norm. Vectors whose residual falls below the
/// tolerance against the largest input norm are dropped.
std::vector<Vector> orthonormal_basis(const std::vector<Vector>& vecs,
                                      const Tolerance& tol = {});

/// Distance from v to the span of an orthonormal basis, in the 2-norm.
double projection_residual(const Vector& v, const std::vector<Vector>& onb);

std::vector<Vector> subspace_sum(const std::vector<Vector>& A,
                                 const std::vector<Vector>& B,
                                 const Tolerance& tol = {});

std::vector<Vector> subspace_intersection(const std::vector<Vector>& A,
                                          const std::vector<Vector>& B,
                                          const Tolerance& tol = {});

/// True iff span(A) is contained in span(B) within the tolerance.
bool subspace_contained_in(const std::vector<Vector>& A,
                           const std::vector<Vector>& B,
                           const Tolerance& tol = {});

/// Orthonormal basis of ker((T - lambda I)^n), n = dim. Powers of the
/// shifted matrix are rescaled between multiplications so that pure scale
/// never masks rank.
std::vector<Vector> generalized_eigenspace(const Matrix& T, Scalar lambda,
                                           const Tolerance& tol = {});

/// Solves A X = B by LU with partial pivoting. Throws when A is singular
/// at working precision.
Matrix solve(const Matrix& A, const Matrix& B);
Vector solve(const Matrix& A, const Vector& b);
Matrix inverse(const Matrix& A);
Scalar determinant(const Matrix& A);

/// All eigenvalues (with multiplicity) of a square matrix of order <= 16.
/// Simultaneous root iteration on the characteristic polynomial, with the
/// polynomial evaluated through an LU determinant at each probe point so no
/// coefficient extraction is ever performed. Each returned mu satisfies
/// |det(M - mu I)| <= tol.eps * (1 + |M|_inf)^n; otherwise EigenSolverError
/// carries the best residual reached.
std::vector<Scalar> eigenvalues_small(const Matrix& M, const Tolerance& tol = {});

/// Least squares solution of G c ~ y by modified Gram-Schmidt QR with
/// column pivoting. Columns that become dependent get coefficient zero.
Vector least_squares(const Matrix& G, const Vector& y, const Tolerance& tol = {});

}  // namespace deltam

#endif
