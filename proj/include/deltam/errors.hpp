#ifndef DELTAM_ERRORS_HPP
#define DELTAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace deltam {

/// A containment or identity guaranteed by the underlying theory failed.
/// Reaching this indicates an implementation bug, never a data problem.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

/// The chosen step makes two spectral blocks collide; retry with another step.
class DegenerateStepError : public std::runtime_error {
 public:
  explicit DegenerateStepError(const std::string& what) : std::runtime_error(what) {}
};

/// A stated hypothesis of a construction does not hold for the given input.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// A function does not lie in the requested ambient space.
class NotInAmbientError : public std::invalid_argument {
 public:
  explicit NotInAmbientError(const std::string& what) : std::invalid_argument(what) {}
};

/// Iterative eigenvalue search stopped at the iteration cap.
class EigenSolverError : public std::runtime_error {
 public:
  EigenSolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Floating-point range exceeded while evaluating an exponential term.
class OverflowError : public std::range_error {
 public:
  explicit OverflowError(const std::string& what) : std::range_error(what) {}
};

}  // namespace deltam

#endif
