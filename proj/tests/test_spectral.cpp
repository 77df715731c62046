#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "deltam/errors.hpp"
#include "deltam/linalg.hpp"
#include "deltam/spectral.hpp"
#include "test_support.hpp"

using namespace deltam;

TEST_CASE("stirling numbers against a frozen table") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(1, 0) == 0);
  CHECK(stirling2(1, 1) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(5, 3) == 25);
  CHECK(stirling2(6, 3) == 90);
  CHECK(stirling2(7, 3) == 301);
  CHECK(stirling2(8, 4) == 1701);
  CHECK(stirling2(10, 5) == 42525);
  CHECK(stirling2(3, 5) == 0);
}

TEST_CASE("stirling recurrence holds across the table") {
  for (std::size_t n = 0; n <= 20; ++n)
    for (std::size_t k = 1; k <= n + 1; ++k) {
      mpz_class lhs = stirling2(n + 1, k);
      mpz_class rhs = mpz_class(static_cast<long>(k)) * stirling2(n, k) +
                      stirling2(n, k - 1);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("alternating binomial sum identity") {
  // sum_k binom(m,k) (-1)^k k^r = (-1)^m m! S(r,m), exact
  for (std::size_t r = 0; r <= 10; ++r)
    for (std::size_t m = 0; m <= 10; ++m) {
      mpz_class lhs(0);
      for (std::size_t k = 0; k <= m; ++k) {
        mpz_class kr;
        mpz_ui_pow_ui(kr.get_mpz_t(), k, r);  // 0^0 == 1 here, as required
        mpz_class term = binomial_exact(m, static_cast<long>(k)) * kr;
        if (k % 2 == 1) term = -term;
        lhs += term;
      }
      mpz_class rhs = factorial_exact(m) * stirling2(r, m);
      if (m % 2 == 1) rhs = -rhs;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("monomial differences against direct binomial expansion") {
  using testing::delta_monomial_reference;
  const std::vector<Rational> hs = {Rational(1), Rational(2, 3), Rational(5, 7)};
  for (const auto& h : hs)
    for (std::size_t s = 0; s <= 8; ++s)
      for (std::size_t m = 0; m <= 8; ++m) {
        auto got = delta_power_monomial_exact(s, m, h);
        auto want = delta_monomial_reference(s, m, h);
        REQUIRE(got.size() == want.size());
        for (std::size_t j = 0; j < got.size(); ++j) CHECK(got[j] == want[j]);
      }
}

TEST_CASE("monomial difference coefficients frozen case") {
  // second difference of t^3 with step h: 6 h^2 t + 6 h^3
  auto c = delta_power_monomial_exact(3, 2, Rational(1, 3));
  REQUIRE(c.size() == 4);
  CHECK(c[0] == Rational(6, 27));
  CHECK(c[1] == Rational(6, 9));
  CHECK(c[2] == Rational(0));
  CHECK(c[3] == Rational(0));
  auto p = delta_power_monomial(3, 2, 0.5);
  CHECK(p.coeff(0) == Scalar(0.75));
  CHECK(p.coeff(1) == Scalar(1.5));
}

TEST_CASE("difference matrix on a mixed ambient space") {
  AmbientSpace S({{Scalar(0), 2}, {Scalar(1), 1}});
  BlockMatrix A = matrix_delta(S, 1.0);
  Matrix M = A.assemble();
  REQUIRE(M.rows() == 3);
  CHECK(std::abs(M(0, 0)) < 1e-15);
  CHECK(std::abs(M(0, 1) - Scalar(1)) < 1e-15);
  CHECK(std::abs(M(1, 1)) < 1e-15);
  CHECK(std::abs(M(2, 2) - Scalar(std::exp(1.0) - 1.0)) < 1e-15);
  CHECK(std::abs(M(0, 2)) < 1e-15);
  CHECK(std::abs(M(2, 0)) < 1e-15);
  CHECK_THROWS_AS(matrix_delta(S, 0.0), std::invalid_argument);
}

TEST_CASE("difference matrix entries scale with the step") {
  AmbientSpace S({{Scalar(2), 3}});
  Matrix M = matrix_delta(S, 0.5).assemble();
  const Scalar w = std::exp(Scalar(1));  // e^{lambda h}
  // entry (0,2): binom(2,2) h^2 w
  CHECK(std::abs(M(0, 2) - 0.25 * w) < 1e-14);
  // entry (1,2): binom(2,1) h w
  CHECK(std::abs(M(1, 2) - Scalar(1) * w) < 1e-14);
  CHECK(std::abs(M(0, 0) - (w - Scalar(1))) < 1e-14);
}

TEST_CASE("matrix power equals repeated product") {
  AmbientSpace S({{Scalar(0), 3}, {Scalar(0.7, 0.2), 2}});
  BlockMatrix A = matrix_delta(S, 0.8);
  BlockMatrix A3 = matrix_power(A, 3);
  CHECK(A3.power == 3);
  Matrix direct = A.assemble() * A.assemble() * A.assemble();
  CHECK((A3.assemble() - direct).max_abs() < 1e-12);
}

TEST_CASE("kernel of the m-th power difference is the low degree block") {
  AmbientSpace S({{Scalar(0), 5}, {Scalar(1.2), 2}});
  const std::size_t m = 3;
  Matrix M = matrix_power(matrix_delta(S, 0.9), m).assemble();
  auto rk = rank_kernel(M);
  CHECK(rk.kernel.size() == m);
  for (const auto& v : rk.kernel)
    for (std::size_t j = m; j < v.size(); ++j) CHECK(std::abs(v[j]) < 1e-10);
}

TEST_CASE("rank of the nilpotent power drops by exactly m") {
  for (std::size_t m0 : {3u, 6u}) {
    AmbientSpace S({{Scalar(0), m0}});
    for (std::size_t m = 0; m <= m0; ++m) {
      Matrix M = matrix_power(matrix_delta(S, 1.0 / 3.0), m).assemble();
      CHECK(rank_kernel(M).rank == m0 - m);
    }
  }
}

TEST_CASE("root decomposition separates blocks") {
  AmbientSpace S({{Scalar(0), 2}, {Scalar(1), 1}});
  auto roots = root_decomposition(S, 1.0, 1);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].block == 0);
  CHECK(roots[0].size == 2);
  CHECK(std::abs(roots[0].eigenvalue) < 1e-15);
  CHECK(roots[1].block == 1);
  CHECK(roots[1].size == 1);
  CHECK(std::abs(roots[1].eigenvalue - Scalar(std::exp(1.0) - 1.0)) < 1e-12);
}

TEST_CASE("root decomposition rejects degenerate steps") {
  const double two_pi = 8.0 * std::atan(1.0);
  // e^{2 pi i} - 1 = 0 collapses the block onto the polynomial part
  AmbientSpace S1({{Scalar(0), 1}, {Scalar(0, two_pi), 1}});
  CHECK_THROWS_AS(root_decomposition(S1, 1.0, 1), DegenerateStepError);
  // two distinct frequencies with equal multiplier collide
  AmbientSpace S2({{Scalar(1, 0), 1}, {Scalar(1, two_pi), 1}});
  CHECK_THROWS_AS(root_decomposition(S2, 1.0, 1), DegenerateStepError);
  // a slightly different step separates both
  CHECK_NOTHROW(root_decomposition(S2, 0.9, 1));
}

TEST_CASE("chain block validation") {
  Matrix good(3, 3);
  for (std::size_t i = 0; i < 3; ++i) good(i, i) = Scalar(2, 1);
  good(0, 1) = Scalar(0.5);
  good(1, 2) = Scalar(1.5);
  good(0, 2) = Scalar(7);  // arbitrary above the superdiagonal
  CHECK_NOTHROW(validate_chain_block(good));

  Matrix zero_diag = good;
  zero_diag(0, 0) = zero_diag(1, 1) = zero_diag(2, 2) = Scalar(0);
  CHECK_THROWS_AS(validate_chain_block(zero_diag), std::invalid_argument);

  Matrix broken_chain = good;
  broken_chain(1, 2) = Scalar(0);
  CHECK_THROWS_AS(validate_chain_block(broken_chain), std::invalid_argument);

  Matrix lower = good;
  lower(2, 0) = Scalar(1);
  CHECK_THROWS_AS(validate_chain_block(lower), std::invalid_argument);
}

TEST_CASE("chain subspaces are the coordinate prefixes") {
  Matrix J(2, 2);
  J(0, 0) = J(1, 1) = Scalar(2);
  J(0, 1) = Scalar(1);
  auto subs = chain_subspaces(J);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].empty());
  CHECK(subs[1].size() == 1);
  CHECK(subs[2].size() == 2);
  // each subspace is invariant: J v stays inside the prefix
  for (std::size_t k = 1; k <= 2; ++k)
    for (const auto& v : subs[k]) {
      Vector w = J * v;
      for (std::size_t j = k; j < 2; ++j) CHECK(std::abs(w[j]) < 1e-14);
    }
}

TEST_CASE("prefix detection accepts rotated spans and rejects gaps") {
  const Vector e1{Scalar(1), Scalar(0), Scalar(0)};
  const Vector e2{Scalar(0), Scalar(1), Scalar(0)};
  Vector mix1{Scalar(0.6), Scalar(0.8), Scalar(0)};
  Vector mix2{Scalar(0.8), Scalar(-0.6), Scalar(0)};

  CHECK(is_chain_prefix(std::vector<Vector>{}) == 0);
  CHECK(is_chain_prefix({e1}) == 1);
  CHECK(is_chain_prefix({mix1, mix2}) == 2);
  CHECK_FALSE(is_chain_prefix({e2}).has_value());
}
