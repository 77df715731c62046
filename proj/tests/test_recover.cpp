#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "deltam/counterexample.hpp"
#include "deltam/linalg.hpp"
#include "deltam/recover.hpp"

using namespace deltam;

namespace {

std::function<Scalar(double)> exp_fn(Scalar lambda) {
  return [lambda](double t) { return std::exp(lambda * t); };
}

SampledFamily two_exponentials(std::size_t m = 2) {
  return SampledFamily::auto_collocation({exp_fn(Scalar(1)), exp_fn(Scalar(2))}, m);
}

bool spectrum_contains(const std::vector<Scalar>& spec, Scalar z, double tol) {
  return std::any_of(spec.begin(), spec.end(),
                     [&](Scalar s) { return std::abs(s - z) < tol; });
}

}  // namespace

TEST_CASE("grid points and guards") {
  GridSpec g{0.0, 1.0, 5};
  auto pts = g.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 1.0);
  CHECK(pts[1] == doctest::Approx(0.25));
}

TEST_CASE("collocation on the integer grid with deterministic retry") {
  auto fam = two_exponentials();
  REQUIRE(fam.size() == 2);
  CHECK(fam.collocation() == std::vector<double>{1.0, 2.0});

  // the order two counterexample vanishes on the integers, forcing the retry
  auto ce = build_counterexample(2, 2, 3, 1.0);
  auto fam2 = SampledFamily::auto_collocation(
      {[f = ce.f](double t) { return Scalar(f(t)); }}, 2);
  REQUIRE(fam2.collocation().size() == 1);
  CHECK(fam2.collocation()[0] == doctest::Approx(1.37));

  // identically zero cannot be collocated at all
  CHECK_THROWS_AS(SampledFamily::auto_collocation(
                      {[](double) { return Scalar(0); }}, 1),
                  std::invalid_argument);
}

TEST_CASE("family constructor validates its inputs") {
  CHECK_THROWS_AS(SampledFamily(std::vector<std::function<Scalar(double)>>{},
                                std::vector<double>{}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(SampledFamily({exp_fn(Scalar(1))}, {1.0, 2.0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(SampledFamily({exp_fn(Scalar(1))}, {1.0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SampledFamily({exp_fn(Scalar(1)), exp_fn(Scalar(2))},
                                {2.0, 1.0}, 1),
                  std::invalid_argument);
}

TEST_CASE("mollifier preserves constants exactly and smooths corners") {
  auto one = mollify([](double) { return Scalar(1); }, 0.05);
  CHECK(std::abs(one(0.3) - Scalar(1)) < 1e-14);

  auto s = mollify([](double t) { return Scalar(std::sin(t)); }, 1e-3);
  for (double t : {0.3, 1.0, 2.0})
    CHECK(std::abs(s(t) - Scalar(std::sin(t))) < 1e-4);

  // slope jump of the sawtooth shrinks visibly after mollification
  auto phi = sawtooth(1.0);
  auto sm = mollify_real([&](double x) { return phi(x); }, 0.05);
  const double d = 1e-3;
  const double left = (sm(0.5) - sm(0.5 - d)) / d;
  const double right = (sm(0.5 + d) - sm(0.5)) / d;
  CHECK(std::abs(right - left) < 0.5);  // raw corner jumps by 2
}

TEST_CASE("difference matrix on known families") {
  SUBCASE("constants are annihilated") {
    SampledFamily fam({[](double) { return Scalar(1); }}, {1.0}, 1);
    Matrix A = difference_matrix(fam, 0.01);
    REQUIRE(A.rows() == 1);
    CHECK(std::abs(A(0, 0)) < 1e-12);
  }
  SUBCASE("affine family under the second difference") {
    SampledFamily fam({[](double) { return Scalar(1); },
                       [](double t) { return Scalar(t); }},
                      {1.0, 2.0}, 2);
    Matrix A = difference_matrix(fam, 0.01);
    CHECK(A.max_abs() < 1e-10);
  }
  SUBCASE("exponentials give the exact diagonal") {
    auto fam = two_exponentials();
    const double h = 0.01;
    Matrix A = difference_matrix(fam, h);
    const double d1 = std::pow(std::exp(h) - 1.0, 2.0);
    const double d2 = std::pow(std::exp(2.0 * h) - 1.0, 2.0);
    CHECK(std::abs(A(0, 0) - Scalar(d1)) < 1e-8);
    CHECK(std::abs(A(1, 1) - Scalar(d2)) < 1e-8);
    CHECK(std::abs(A(0, 1)) < 1e-8);
    CHECK(std::abs(A(1, 0)) < 1e-8);
  }
  SUBCASE("the defining identity holds off the collocation points") {
    auto fam = two_exponentials();
    const double h = 0.01;
    Matrix A = difference_matrix(fam, h);
    for (double t : {0.7, 1.3, 2.6}) {
      for (std::size_t i = 0; i < fam.size(); ++i) {
        // m-th difference of f_i at t
        Scalar diff = fam.value(i, t + 2.0 * h) - 2.0 * fam.value(i, t + h) +
                      fam.value(i, t);
        Scalar pred(0);
        for (std::size_t j = 0; j < fam.size(); ++j)
          pred += A(i, j) * fam.value(j, t);
        CHECK(std::abs(diff - pred) <= 1e-6);
      }
    }
  }
  SUBCASE("nonpositive step is rejected") {
    auto fam = two_exponentials();
    CHECK_THROWS_AS(difference_matrix(fam, 0.0), std::invalid_argument);
  }
}

TEST_CASE("limit extrapolation of the scaled difference matrix") {
  const std::vector<double> hs = {1e-2, 5e-3, 2.5e-3};
  SUBCASE("two exponentials give the squared frequencies") {
    auto res = limit_B(two_exponentials(), hs);
    CHECK(std::abs(res.B(0, 0) - Scalar(1)) < 1e-4);
    CHECK(std::abs(res.B(1, 1) - Scalar(4)) < 1e-4);
    CHECK(std::abs(res.B(0, 1)) < 1e-4);
    CHECK(std::abs(res.B(1, 0)) < 1e-4);
    CHECK(res.table.size() >= 2);
  }
  SUBCASE("affine family gives zero") {
    SampledFamily fam({[](double) { return Scalar(1); },
                       [](double t) { return Scalar(t); }},
                      {1.0, 2.0}, 2);
    auto res = limit_B(fam, hs);
    CHECK(res.B.max_abs() < 1e-8);
  }
  SUBCASE("sine and cosine give minus the identity") {
    SampledFamily fam({[](double t) { return Scalar(std::sin(t)); },
                       [](double t) { return Scalar(std::cos(t)); }},
                      {1.0, 2.0}, 2);
    auto res = limit_B(fam, hs);
    CHECK(std::abs(res.B(0, 0) - Scalar(-1)) < 1e-4);
    CHECK(std::abs(res.B(1, 1) - Scalar(-1)) < 1e-4);
    CHECK(std::abs(res.B(0, 1)) < 1e-4);
    CHECK(std::abs(res.B(1, 0)) < 1e-4);
  }
  SUBCASE("needs at least three decreasing steps") {
    CHECK_THROWS_AS(limit_B(two_exponentials(), {1e-2, 5e-3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(limit_B(two_exponentials(), {5e-3, 1e-2, 2.5e-3}),
                    std::invalid_argument);
  }
}

TEST_CASE("limit is covariant under a change of family basis") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const std::vector<double> hs = {1e-2, 5e-3, 2.5e-3};
  auto base = two_exponentials();
  Matrix B0 = limit_B(base, hs).B;

  Matrix C(2, 2);
  C(0, 0) = Scalar(1.0 + u(rng));
  C(0, 1) = Scalar(u(rng));
  C(1, 0) = Scalar(u(rng));
  C(1, 1) = Scalar(1.0 + u(rng));

  auto f0 = exp_fn(Scalar(1)), f1 = exp_fn(Scalar(2));
  std::vector<std::function<Scalar(double)>> mixed = {
      [=](double t) { return C(0, 0) * f0(t) + C(0, 1) * f1(t); },
      [=](double t) { return C(1, 0) * f0(t) + C(1, 1) * f1(t); }};
  SampledFamily fam(mixed, {1.0, 2.0}, 2);
  Matrix B1 = limit_B(fam, hs).B;
  Matrix expected = C * B0 * inverse(C);
  CHECK((B1 - expected).max_abs() < 1e-5);
}

TEST_CASE("companion system shape and spectrum") {
  Matrix B(2, 2);
  B(0, 0) = Scalar(1);
  B(1, 1) = Scalar(4);
  SUBCASE("order one returns B") {
    Matrix M = companion_system(B, 1);
    CHECK(M.rows() == 2);
    CHECK((M - B).max_abs() == 0.0);
  }
  SUBCASE("order two doubles the size and takes square roots") {
    Matrix M = companion_system(B, 2);
    REQUIRE(M.rows() == 4);
    // identity superdiagonal block
    CHECK(M(0, 2) == Scalar(1));
    CHECK(M(1, 3) == Scalar(1));
    // B in the bottom left
    CHECK(M(2, 0) == Scalar(1));
    CHECK(M(3, 1) == Scalar(4));
    auto ev = eigenvalues_small(M);
    CHECK(spectrum_contains(ev, Scalar(1), 1e-6));
    CHECK(spectrum_contains(ev, Scalar(-1), 1e-6));
    CHECK(spectrum_contains(ev, Scalar(2), 1e-6));
    CHECK(spectrum_contains(ev, Scalar(-2), 1e-6));
  }
}

TEST_CASE("full recovery on an exponential family") {
  auto report = run_recovery(two_exponentials());
  CHECK(report.order == 2);
  CHECK(report.misfit <= 1e-4);
  auto freqs = frequency_recovery(report);
  CHECK(spectrum_contains(freqs, Scalar(1), 1e-3));
  CHECK(spectrum_contains(freqs, Scalar(2), 1e-3));
  // the mirrored companion roots carry no weight and must be filtered out
  CHECK_FALSE(spectrum_contains(freqs, Scalar(-1), 1e-3));
  CHECK_FALSE(spectrum_contains(freqs, Scalar(-2), 1e-3));
}

TEST_CASE("recovery identifies a polynomial family as frequency zero") {
  SampledFamily fam({[](double) { return Scalar(1); },
                     [](double t) { return Scalar(t); }},
                    {1.0, 2.0}, 2);
  auto report = run_recovery(fam);
  CHECK(report.B.max_abs() < 1e-8);
  auto freqs = frequency_recovery(report);
  REQUIRE_FALSE(freqs.empty());
  // the four companion roots of the zero matrix collapse to one cluster
  // near zero, bounded by the root sensitivity of a quadruple eigenvalue
  for (const auto& mu : freqs) CHECK(std::abs(mu) < 5e-3);
}

TEST_CASE("recovery rejects the sawtooth antidifference by misfit") {
  auto ce = build_counterexample(2, 2, 3, 1.0);
  auto fam = SampledFamily::auto_collocation(
      {[f = ce.f](double t) { return Scalar(f(t)); }}, 2);
  auto report = run_recovery(fam);
  CHECK(report.misfit > 1e-2);
  CHECK(frequency_recovery(report).empty());
}

TEST_CASE("recovery survives a small smooth perturbation") {
  std::vector<std::function<Scalar(double)>> funcs = {[](double t) {
    return Scalar(std::exp(t) + 1e-8 * std::sin(57.0 * t));
  }};
  auto fam = SampledFamily::auto_collocation(funcs, 1);
  auto report = run_recovery(fam);
  auto freqs = frequency_recovery(report);
  CHECK(spectrum_contains(freqs, Scalar(1), 1e-3));
}

TEST_CASE("randomized exponential families round trip") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.2, 1.4);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 2;
    std::vector<Scalar> lambdas;
    std::vector<std::function<Scalar(double)>> funcs;
    double last = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      last += u(rng);
      lambdas.push_back(Scalar(last));
      funcs.push_back(exp_fn(Scalar(last)));
    }
    const std::size_t m = 1 + trial % 2;
    auto fam = SampledFamily::auto_collocation(funcs, m);
    auto report = run_recovery(fam);
    auto freqs = frequency_recovery(report);
    for (const auto& lam : lambdas) {
      CAPTURE(trial);
      CHECK(spectrum_contains(freqs, lam, 1e-3));
    }
  }
}

TEST_CASE("recovery size guard") {
  // three well conditioned functions but order six: companion would be 18x18
  SampledFamily fam({[](double) { return Scalar(1); },
                     [](double t) { return Scalar(t); },
                     [](double t) { return Scalar(t * t); }},
                    {1.0, 2.0, 3.0}, 6);
  CHECK_THROWS_AS(run_recovery(fam), std::invalid_argument);
}

TEST_CASE("piecewise linear interpolation") {
  auto f = piecewise_linear({{0.0, 1.0}, {1.0, 3.0}, {2.0, 2.0}});
  CHECK(f(0.0) == doctest::Approx(1.0));
  CHECK(f(1.0) == doctest::Approx(3.0));
  CHECK(f(0.5) == doctest::Approx(2.0));
  CHECK(f(1.5) == doctest::Approx(2.5));
  // linear extrapolation with the edge slopes
  CHECK(f(-1.0) == doctest::Approx(-1.0));
  CHECK(f(3.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(piecewise_linear({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(piecewise_linear({}), std::invalid_argument);
}
