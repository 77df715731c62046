#ifndef DELTAM_SPECTRAL_HPP
#define DELTAM_SPECTRAL_HPP

#include <cstddef>
#include <mutex>
#include <optional>
#include <vector>

#include "deltam/exppoly.hpp"
#include "deltam/matrix.hpp"
#include "deltam/polynomial.hpp"
#include "deltam/rational.hpp"

namespace deltam {

/// Memoized Stirling numbers of the second kind, S(n, k) = number of
/// partitions of an n-set into k nonempty parts. Safe to share across
/// threads.
class StirlingTable {
 public:
  mpz_class value(std::size_t n, std::size_t k);

 private:
  void grow(std::size_t n);

  std::vector<std::vector<mpz_class>> rows_;
  std::mutex mu_;
};

/// S(n, k) from a process-wide table.
mpz_class stirling2(std::size_t n, std::size_t k);

/// Coefficients of the m-th forward difference with step h applied to t^s,
/// exact over the rationals: coefficient of t^j is
/// binom(s, j) S(s - j, m) m! h^(s - j). Index j runs from 0 to s.
std::vector<Rational> delta_power_monomial_exact(std::size_t s, std::size_t m,
                                                 const Rational& h);

/// Same coefficients in floating point, as a polynomial in t.
Polynomial delta_power_monomial(std::size_t s, std::size_t m, double h);

/// Matrix of a difference operator on an ambient space, one block per
/// frequency in the basis t^k exp(lambda t).
struct BlockMatrix {
  AmbientSpace space;
  double h = 0.0;
  std::size_t power = 1;
  std::vector<Matrix> blocks;

  /// Full matrix with blocks on the diagonal, coordinate order of space.
  Matrix assemble() const;
};

/// Matrix of the forward difference with step h on S. Block for frequency
/// lambda has w = exp(lambda h) times a binomial pattern above the
/// diagonal and w - 1 on it; the zero block is strictly upper triangular.
BlockMatrix matrix_delta(const AmbientSpace& S, double h);

/// Blockwise m-th power.
BlockMatrix matrix_power(const BlockMatrix& A, std::size_t m);

/// One generalized eigenspace of the m-th power difference per frequency
/// block: eigenvalue (exp(lambda h) - 1)^m on the coordinate range of the
/// block. Throws DegenerateStepError when the step collapses a nonzero
/// frequency onto the zero block or makes two eigenvalues collide.
struct RootBlock {
  Scalar eigenvalue;
  std::size_t block = 0;   // index into S
  std::size_t offset = 0;  // first coordinate
  std::size_t size = 0;
};

std::vector<RootBlock> root_decomposition(const AmbientSpace& S, double h,
                                          std::size_t m, const Tolerance& tol = {});

/// Checks that T is upper triangular with constant nonzero diagonal and
/// nonzero first superdiagonal, the shape whose invariant subspaces are
/// exactly the leading coordinate prefixes. Throws on violation.
void validate_chain_block(const Matrix& T, const Tolerance& tol = {});

/// All invariant subspaces of a validated chain block: the n + 1 prefix
/// spans, returned as lists of coordinate vectors (entry k has k vectors).
std::vector<std::vector<Vector>> chain_subspaces(const Matrix& T,
                                                 const Tolerance& tol = {});

/// If the span of the given vectors equals a leading coordinate prefix,
/// returns its length; otherwise nullopt.
std::optional<std::size_t> is_chain_prefix(const std::vector<Vector>& vectors,
                                           const Tolerance& tol = {});

}  // namespace deltam

#endif
