#ifndef DELTAM_PARALLEL_HPP
#define DELTAM_PARALLEL_HPP

#include <functional>
#include <vector>

namespace deltam {

/// Evaluates fn at every grid point. Uses OpenMP when compiled in; each
/// point is independent and the output order matches the grid, so the
/// result is identical to the serial version bit for bit.
std::vector<double> map_grid(const std::function<double(double)>& fn,
                             const std::vector<double>& grid);

/// Serial reference implementation.
std::vector<double> map_grid_serial(const std::function<double(double)>& fn,
                                    const std::vector<double>& grid);

/// Evenly spaced closed grid with count >= 2 points from lo to hi.
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace deltam

#endif
