// Timing harness for the grid evaluation kernels: parallel apply_sampled
// against the serial reference, on a deliberately expensive integrand (the
// order four sharpness construction, whose evaluation cost grows with |t|).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "deltam/counterexample.hpp"
#include "deltam/diffops.hpp"
#include "deltam/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_once(const std::function<std::vector<double>()>& run, double& checksum) {
  const auto t0 = Clock::now();
  auto out = run();
  const auto t1 = Clock::now();
  double acc = 0;
  for (double v : out) acc += v;
  checksum = acc;
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double best_of(int reps, const std::function<std::vector<double>()>& run,
               double& checksum) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) best = std::min(best, time_once(run, checksum));
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t points = 20000;
  int reps = 3;
  if (argc > 1) points = static_cast<std::size_t>(std::stoul(argv[1]));
  if (argc > 2) reps = std::atoi(argv[2]);

  auto ce = deltam::build_counterexample(4, 2, 3, 1.0);
  auto op = deltam::DifferenceOp::delta(1, 0).pow(4);
  const std::vector<double> steps = {2.0};
  auto grid = deltam::linspace(-40.0, 40.0, points);

  double sum_par = 0, sum_ser = 0;
  const double ms_ser = best_of(reps, [&] {
    return deltam::apply_sampled_serial(op, ce.f, steps, grid);
  }, sum_ser);
  const double ms_par = best_of(reps, [&] {
    return deltam::apply_sampled(op, ce.f, steps, grid);
  }, sum_par);

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif

  std::cout << std::setprecision(4);
  std::cout << "grid points:      " << points << "\n";
  std::cout << "threads:          " << threads << "\n";
  std::cout << "serial best:      " << ms_ser << " ms\n";
  std::cout << "parallel best:    " << ms_par << " ms\n";
  std::cout << "speedup:          " << ms_ser / ms_par << "x\n";
  std::cout << "checksum delta:   " << std::abs(sum_par - sum_ser) << "\n";
  return std::abs(sum_par - sum_ser) == 0.0 ? 0 : 1;
}
