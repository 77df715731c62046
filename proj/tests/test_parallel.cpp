#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "deltam/counterexample.hpp"
#include "deltam/diffops.hpp"
#include "deltam/parallel.hpp"

using namespace deltam;

TEST_CASE("linspace endpoints and spacing") {
  auto g = linspace(-1.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.0));
  auto two = linspace(0.25, 0.75, 2);
  CHECK(two.front() == 0.25);
  CHECK(two.back() == 0.75);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("parallel map agrees bitwise with the serial reference") {
  auto fn = [](double t) { return std::sin(t) * t + 0.25 * t * t; };
  auto grid = linspace(-6.0, 6.0, 1001);
  auto par = map_grid(fn, grid);
  auto ser = map_grid_serial(fn, grid);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("sampled operator application agrees bitwise with serial") {
  auto ce = build_counterexample(3, 2, 3, 1.0);
  auto d3 = DifferenceOp::delta(1, 0).pow(3);
  auto grid = linspace(-8.0, 8.0, 501);
  auto par = apply_sampled(d3, ce.f, {2.0}, grid);
  auto ser = apply_sampled_serial(d3, ce.f, {2.0}, grid);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("exceptions from worker evaluations propagate") {
  auto fn = [](double t) -> double {
    if (t > 0.5) throw std::runtime_error("bad point");
    return t;
  };
  auto grid = linspace(0.0, 1.0, 64);
  CHECK_THROWS_AS(map_grid(fn, grid), std::runtime_error);
}
