#include "deltam/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "deltam/errors.hpp"
#include "deltam/linalg.hpp"

namespace deltam {

void StirlingTable::grow(std::size_t n) {
  if (rows_.empty()) rows_.push_back({mpz_class(1)});  // S(0, 0) = 1
  while (rows_.size() <= n) {
    const std::size_t r = rows_.size();
    std::vector<mpz_class> row(r + 1);
    row[0] = 0;
    for (std::size_t k = 1; k <= r; ++k) {
      // S(r, k) = k S(r-1, k) + S(r-1, k-1)
      mpz_class v = rows_[r - 1][k - 1];
      if (k < r) v += mpz_class(static_cast<unsigned long>(k)) * rows_[r - 1][k];
      row[k] = v;
    }
    rows_.push_back(std::move(row));
  }
}

mpz_class StirlingTable::value(std::size_t n, std::size_t k) {
  if (k > n) return mpz_class(0);
  std::lock_guard<std::mutex> lock(mu_);
  grow(n);
  return rows_[n][k];
}

mpz_class stirling2(std::size_t n, std::size_t k) {
  static StirlingTable table;
  return table.value(n, k);
}

std::vector<Rational> delta_power_monomial_exact(std::size_t s, std::size_t m,
                                                 const Rational& h) {
  std::vector<Rational> c(s + 1, Rational(0));
  const Rational mfact(factorial_exact(m));
  for (std::size_t j = 0; j <= s; ++j) {
    const mpz_class st = stirling2(s - j, m);
    if (st == 0) continue;
    c[j] = Rational(binomial_exact(s, static_cast<long>(j))) * Rational(st) * mfact *
           pow_rational(h, s - j);
  }
  return c;
}

Polynomial delta_power_monomial(std::size_t s, std::size_t m, double h) {
  std::vector<Scalar> c(s + 1, Scalar(0));
  const double mfact = factorial_exact(m).get_d();
  for (std::size_t j = 0; j <= s; ++j) {
    const mpz_class st = stirling2(s - j, m);
    if (st == 0) continue;
    c[j] = Scalar(binomial(s, static_cast<long>(j)) * st.get_d() * mfact *
                  std::pow(h, static_cast<double>(s - j)));
  }
  return Polynomial(std::move(c));
}

Matrix BlockMatrix::assemble() const {
  const std::size_t n = space.dim();
  Matrix full(n, n);
  std::size_t off = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Matrix& blk = blocks[b];
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) full(off + i, off + j) = blk(i, j);
    off += blk.rows();
  }
  return full;
}

BlockMatrix matrix_delta(const AmbientSpace& S, double h) {
  if (h == 0.0) throw std::invalid_argument("matrix_delta: zero step");
  BlockMatrix out;
  out.space = S;
  out.h = h;
  out.power = 1;
  for (const auto& blk : S.blocks()) {
    const std::size_t n = blk.mult;
    Matrix A(n, n);
    const Scalar w = std::exp(blk.lambda * h);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i)
        A(i, j) = w * binomial(j, static_cast<long>(j - i)) *
                  std::pow(h, static_cast<double>(j - i));
      A(j, j) = w - Scalar(1);
    }
    out.blocks.push_back(std::move(A));
  }
  return out;
}

BlockMatrix matrix_power(const BlockMatrix& A, std::size_t m) {
  BlockMatrix out = A;
  out.power = A.power * m;
  for (auto& blk : out.blocks) {
    if (blk.rows() == 0) continue;
    Matrix acc = Matrix::identity(blk.rows());
    Matrix base = blk;
    std::size_t e = m;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    blk = std::move(acc);
  }
  return out;
}

std::vector<RootBlock> root_decomposition(const AmbientSpace& S, double h,
                                          std::size_t m, const Tolerance& tol) {
  if (h == 0.0) throw std::invalid_argument("root_decomposition: zero step");
  if (m == 0) throw std::invalid_argument("root_decomposition: power must be positive");

  std::vector<RootBlock> out;
  for (std::size_t b = 0; b < S.block_count(); ++b) {
    const FreqBlock& blk = S.block(b);
    if (blk.mult == 0) continue;
    Scalar mu(0);
    if (blk.lambda != Scalar(0)) {
      const Scalar base = std::exp(blk.lambda * h) - Scalar(1);
      if (std::abs(base) <= tol.threshold(1.0)) {
        std::ostringstream os;
        os << "root_decomposition: step " << h << " collapses frequency "
           << blk.lambda.real() << "+" << blk.lambda.imag() << "i onto the zero block";
        throw DegenerateStepError(os.str());
      }
      mu = std::pow(base, static_cast<double>(m));
    }
    out.push_back({mu, b, S.offset(b), blk.mult});
  }

  double scale = 0.0;
  for (const auto& r : out) scale = std::max(scale, std::abs(r.eigenvalue));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (std::abs(out[i].eigenvalue - out[j].eigenvalue) <= tol.threshold(scale)) {
        std::ostringstream os;
        os << "root_decomposition: step " << h << " makes eigenvalues of blocks "
           << out[i].block << " and " << out[j].block << " collide";
        throw DegenerateStepError(os.str());
      }
  return out;
}

void validate_chain_block(const Matrix& T, const Tolerance& tol) {
  if (!T.is_square()) throw std::invalid_argument("chain block must be square");
  const std::size_t n = T.rows();
  if (n == 0) throw std::invalid_argument("chain block must be nonempty");
  const double scale = T.max_abs();
  const double thresh = tol.threshold(scale);

  const Scalar lambda = T(0, 0);
  if (std::abs(lambda) <= thresh)
    throw std::invalid_argument("chain block: zero diagonal");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(T(i, i) - lambda) > thresh)
      throw std::invalid_argument("chain block: diagonal not constant");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(T(i, j)) > thresh)
        throw std::invalid_argument("chain block: nonzero entry below diagonal");
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(T(i, i + 1)) <= thresh)
      throw std::invalid_argument("chain block: zero entry on first superdiagonal");
}

std::vector<std::vector<Vector>> chain_subspaces(const Matrix& T, const Tolerance& tol) {
  validate_chain_block(T, tol);
  const std::size_t n = T.rows();
  std::vector<std::vector<Vector>> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Vector> prefix;
    prefix.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      Vector e(n, Scalar(0));
      e[i] = Scalar(1);
      prefix.push_back(std::move(e));
    }
    out.push_back(std::move(prefix));
  }
  return out;
}

std::optional<std::size_t> is_chain_prefix(const std::vector<Vector>& vectors,
                                           const Tolerance& tol) {
  const auto Q = orthonormal_basis(vectors, tol);
  const std::size_t k = Q.size();
  if (k == 0) return 0;
  const std::size_t n = Q.front().size();
  if (k > n) return std::nullopt;
  // k orthonormal vectors supported in the first k coordinates span
  // exactly that coordinate prefix.
  for (const auto& q : Q)
    for (std::size_t i = k; i < n; ++i)
      if (std::abs(q[i]) > tol.threshold(1.0)) return std::nullopt;
  return k;
}

}  // namespace deltam
