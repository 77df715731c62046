#ifndef DELTAM_INVARIANCE_HPP
#define DELTAM_INVARIANCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "deltam/diffops.hpp"
#include "deltam/exppoly.hpp"
#include "deltam/matrix.hpp"
#include "deltam/subspace.hpp"

namespace deltam {

/// Matrix of a difference operator on an ambient space, numeric step values
/// substituted. Agrees with matrix_delta when op is a single-step delta.
Matrix operator_matrix(const DifferenceOp& op, const AmbientSpace& S,
                       const std::vector<double>& steps);

struct InvarianceReport {
  bool invariant = true;
  std::size_t witness_generator = 0;  // meaningful when not invariant
  double residual = 0.0;
};

/// Checks op(g) in span(V) for every generator g of V.
InvarianceReport is_invariant(const Subspace& V, const DifferenceOp& op,
                              const std::vector<double>& steps,
                              const Tolerance& tol = {});

/// Sum V + L(V) + ... + L^m(V). Requires L^m(V) within V; violations raise
/// HypothesisError naming a generator. The result is L-invariant and has
/// dimension at most (m + 1) dim V.
Subspace box_closure(const Subspace& V, const DifferenceOp& L,
                     const std::vector<double>& steps, std::size_t m,
                     const Tolerance& tol = {});

/// Box closure under S of the box closure under L. Requires both L^m(V)
/// and S^m(V) within V; dimension at most (m + 1)^2 dim V.
Subspace diamond_closure(const Subspace& V, const DifferenceOp& L,
                         const DifferenceOp& S, const std::vector<double>& steps_L,
                         const std::vector<double>& steps_S, std::size_t m,
                         const Tolerance& tol = {});

enum class MontelOutcome : std::uint8_t {
  kPolynomial,          // both m-th differences vanish, steps incommensurable
  kDifferencesNonzero,  // an m-th difference does not vanish
  kHypothesisViolated,  // the two steps have rational ratio
};

struct MontelVerdict {
  MontelOutcome outcome;
  /// Coefficients a_0 .. a_{m-1} of the recovered polynomial
  /// (kPolynomial only).
  std::vector<Scalar> coeffs;
  /// Which step witnessed a nonzero difference (kDifferencesNonzero only).
  std::size_t witness_step = 0;
  double witness_residual = 0.0;
};

/// Decides whether the m-th differences of f with the two given steps both
/// vanish. When they do and the step ratio is irrational, f must be a
/// polynomial of degree below m; anything else raises TheoremViolation.
MontelVerdict montel_check(const ExpPolynomial& f, std::size_t m, const ExactStep& h1,
                           const ExactStep& h2, const Tolerance& tol = {});

/// Splitting of an invariant subspace into its polynomial part (zero
/// frequency block) and exponential part (all other blocks), with a chain
/// prefix certificate per exponential block.
struct BlockPrefix {
  std::size_t block = 0;   // ambient block index
  std::size_t prefix = 0;  // chain prefix length inside the block
};

struct DecompositionResult {
  Subspace P;
  Subspace E;
  std::vector<BlockPrefix> certificate;
  double step_used = 0.0;
};

/// Requires V invariant under the m-th power difference; checked on
/// sampled steps, HypothesisError carries a witnessing step. The split is
/// certified blockwise; failures there raise TheoremViolation.
DecompositionResult decompose_PE(const Subspace& V, std::size_t m,
                                 std::uint64_t seed = 0, const Tolerance& tol = {});

struct Main2Report {
  bool pow_invariant = false;    // m-th power differences, sampled steps
  bool mixed_invariant = false;  // mixed differences, sampled step tuples
  bool agree = false;
  /// Top monomial degree of the polynomial part, when there is one.
  std::optional<std::size_t> poly_top_degree;
  /// Whether polynomials of degree at most top - m all lie in V
  /// (set when pow_invariant and a polynomial part exists).
  std::optional<bool> lower_polynomials_contained;
  std::size_t trials = 0;
};

/// Samples both invariance conditions on random steps and reports whether
/// they agree, plus the polynomial containment that invariance forces.
Main2Report main2_equivalence(const Subspace& V, std::size_t m, std::size_t trials,
                              std::uint64_t seed = 0, const Tolerance& tol = {});

}  // namespace deltam

#endif
