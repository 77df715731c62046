#include "deltam/parallel.hpp"

#include <cstddef>
#include <exception>
#include <stdexcept>

namespace deltam {

std::vector<double> map_grid_serial(const std::function<double(double)>& fn,
                                    const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid[i]);
  return out;
}

std::vector<double> map_grid(const std::function<double(double)>& fn,
                             const std::vector<double>& grid) {
#ifdef _OPENMP
  std::vector<double> out(grid.size());
  std::exception_ptr err;
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(grid[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
#else
  return map_grid_serial(fn, grid);
#endif
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> pts(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lo + step * static_cast<double>(i);
  return pts;
}

}  // namespace deltam
