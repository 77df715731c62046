#ifndef DELTAM_TESTS_TEST_SUPPORT_HPP
#define DELTAM_TESTS_TEST_SUPPORT_HPP

// Shared helpers for the test binaries: seeded random instances and exact
// reference computations kept independent of the library code paths they
// check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "deltam/exppoly.hpp"
#include "deltam/rational.hpp"
#include "deltam/subspace.hpp"

namespace deltam::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Frequencies kept well separated and away from 0 so that no step in (0, 2)
// can push |e^{lambda h} - 1| near the rank threshold by accident.
inline Scalar random_frequency(Rng& rng, std::size_t slot) {
  const double re = uniform(rng, 0.5, 1.5) * (pick(rng, 0, 1) ? 1.0 : -1.0);
  const double im = uniform(rng, -0.8, 0.8);
  return Scalar(re + 2.5 * static_cast<double>(slot), im);
}

// Ambient space with a zero block of multiplicity at least min_zero plus a
// few exponential blocks.
inline AmbientSpace random_ambient(Rng& rng, std::size_t min_zero,
                                   std::size_t max_zero, std::size_t max_exp_blocks,
                                   std::size_t max_mult) {
  std::vector<FreqBlock> blocks;
  blocks.push_back({Scalar(0), pick(rng, min_zero, max_zero)});
  const std::size_t nb = pick(rng, 0, max_exp_blocks);
  for (std::size_t b = 0; b < nb; ++b)
    blocks.push_back({random_frequency(rng, b), pick(rng, 1, max_mult)});
  return AmbientSpace(std::move(blocks));
}

inline Vector random_coords(Rng& rng, std::size_t dim) {
  Vector v(dim);
  for (auto& x : v) x = Scalar(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return v;
}

inline ExpPolynomial random_element(Rng& rng, const AmbientSpace& S) {
  return from_coordinates(S, random_coords(rng, S.dim()));
}

// A subspace invariant under every m-th power difference: a polynomial part
// P with Pi_{N-m} <= P <= Pi_N, plus a chain prefix per exponential block.
// Generators are mixed by a random invertible recombination so the structure
// is not visible in the input.
struct InvariantInstance {
  AmbientSpace ambient;
  std::vector<Vector> coords;
  std::size_t poly_top = 0;  // top degree of the polynomial part, SIZE_MAX if none
  bool has_poly = false;
};

inline InvariantInstance random_invariant_instance(Rng& rng, std::size_t m) {
  InvariantInstance out;
  out.ambient = random_ambient(rng, m + 1, m + 3, 2, 3);
  const std::size_t dim = out.ambient.dim();
  const std::size_t m0 = out.ambient.block(0).mult;

  std::vector<Vector> coords;
  // Polynomial part: all of Pi_{N-m}, the top monomial t^N, and a random
  // subset of the degrees in between. Such a P is invariant under every
  // m-th power difference without being translation invariant.
  if (pick(rng, 0, 4) != 0) {
    const std::size_t top = pick(rng, 0, m0 - 1);
    std::vector<bool> keep(top + 1, false);
    keep[top] = true;
    for (std::size_t d = 0; d + m <= top; ++d) keep[d] = true;
    for (std::size_t d = (top + 1 >= m ? top + 1 - m : 0); d < top; ++d)
      if (pick(rng, 0, 1) == 1) keep[d] = true;
    for (std::size_t d = 0; d <= top; ++d) {
      if (!keep[d]) continue;
      Vector v(dim, Scalar(0));
      v[d] = Scalar(1);
      coords.push_back(std::move(v));
    }
    out.poly_top = top;
    out.has_poly = true;
  }
  for (std::size_t b = 1; b < out.ambient.block_count(); ++b) {
    const std::size_t mult = out.ambient.block(b).mult;
    const std::size_t prefix = pick(rng, 0, mult);
    const std::size_t off = out.ambient.offset(b);
    for (std::size_t k = 0; k < prefix; ++k) {
      Vector v(dim, Scalar(0));
      v[off + k] = Scalar(1);
      coords.push_back(std::move(v));
    }
  }
  if (coords.empty()) {
    Vector v(dim, Scalar(0));
    v[0] = Scalar(1);
    coords.push_back(std::move(v));
    out.poly_top = 0;
    out.has_poly = true;
  }
  // Random strictly diagonally dominant recombination; invertible, so the
  // span is unchanged but the block structure is hidden from the caller.
  const std::size_t n = coords.size();
  std::vector<Vector> mixed(n, Vector(dim, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w =
          (i == j) ? 1.0 : uniform(rng, -0.3, 0.3) / static_cast<double>(n);
      for (std::size_t k = 0; k < dim; ++k) mixed[i][k] += w * coords[j][k];
    }
  out.coords = std::move(mixed);
  return out;
}

// A subspace that fails m-th power invariance: a polynomial gap (1 and
// t^{m+1} without the middle) or a non-prefix chain slice.
inline InvariantInstance random_noninvariant_instance(Rng& rng, std::size_t m) {
  InvariantInstance out;
  out.ambient = random_ambient(rng, m + 2, m + 4, 2, 3);
  const std::size_t dim = out.ambient.dim();
  std::vector<Vector> coords;
  if (out.ambient.block_count() > 1 && pick(rng, 0, 1) == 1) {
    // t^(k) e^{lambda t} with k >= 1 and without the lower chain: the m-th
    // difference always leaks into e^{lambda t}.
    const std::size_t b = pick(rng, 1, out.ambient.block_count() - 1);
    const std::size_t mult = out.ambient.block(b).mult;
    if (mult >= 2) {
      Vector v(dim, Scalar(0));
      v[out.ambient.offset(b) + pick(rng, 1, mult - 1)] = Scalar(1);
      coords.push_back(std::move(v));
    }
  }
  if (coords.empty()) {
    // span{1, t^{m+1}}: the m-th difference of t^{m+1} has a t term.
    Vector a(dim, Scalar(0)), b(dim, Scalar(0));
    a[0] = Scalar(1);
    b[m + 1] = Scalar(1);
    coords.push_back(std::move(a));
    coords.push_back(std::move(b));
  }
  out.coords = std::move(coords);
  return out;
}

// Exact reference for the m-th difference of t^s: expand
// sum_k binom(m,k)(-1)^{m-k} (t + k h)^s over rationals, no Stirling numbers
// involved.
inline std::vector<Rational> delta_monomial_reference(std::size_t s, std::size_t m,
                                                      const Rational& h) {
  std::vector<Rational> out(s + 1, Rational(0));
  for (std::size_t k = 0; k <= m; ++k) {
    Rational sign((m - k) % 2 == 0 ? 1 : -1);
    const Rational c = sign * Rational(binomial_exact(m, static_cast<long>(k)));
    const Rational kh = Rational(static_cast<long>(k)) * h;
    // (t + kh)^s = sum_j binom(s,j) (kh)^{s-j} t^j
    for (std::size_t j = 0; j <= s; ++j) {
      const Rational w = Rational(binomial_exact(s, static_cast<long>(j))) *
                         pow_rational(kh, static_cast<unsigned long>(s - j));
      out[j] += c * w;
    }
  }
  return out;
}

}  // namespace deltam::testing

#endif
