#include "deltam/invariance.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "deltam/errors.hpp"
#include "deltam/linalg.hpp"
#include "deltam/spectral.hpp"

namespace deltam {

Matrix operator_matrix(const DifferenceOp& op, const AmbientSpace& S,
                       const std::vector<double>& steps) {
  if (steps.size() != op.arity())
    throw std::invalid_argument("operator_matrix: step count does not match arity");
  const std::size_t n = S.dim();
  Matrix M(n, n);
  for (const auto& [v, c] : op.terms()) {
    const double h = v.value(steps);
    const double cd = c.to_double();
    // Translation by h acts blockwise: column j of block lambda picks up
    // binom(j, i) h^(j-i) exp(lambda h) at row i.
    std::size_t off = 0;
    for (const auto& blk : S.blocks()) {
      const Scalar w = std::exp(blk.lambda * h);
      for (std::size_t j = 0; j < blk.mult; ++j)
        for (std::size_t i = 0; i <= j; ++i)
          M(off + i, off + j) += cd * w * binomial(j, static_cast<long>(j - i)) *
                                 std::pow(h, static_cast<double>(j - i));
      off += blk.mult;
    }
  }
  return M;
}

InvarianceReport is_invariant(const Subspace& V, const DifferenceOp& op,
                              const std::vector<double>& steps, const Tolerance& tol) {
  InvarianceReport rep;
  for (std::size_t g = 0; g < V.generators().size(); ++g) {
    const ExpPolynomial image = apply(op, V.generators()[g], steps);
    const Vector c = coordinates(image, V.ambient(), tol);
    const double res = V.residual(c);
    if (res > tol.threshold(two_norm(c))) {
      rep.invariant = false;
      rep.witness_generator = g;
      rep.residual = res;
      return rep;
    }
  }
  return rep;
}

namespace {

/// V + L V + ... + L^m V for the matrix of L, with the hypothesis
/// L^m(V) within V checked against the original generators.
std::vector<Vector> box_span(const Subspace& V, const Matrix& ML, std::size_t m,
                             const Tolerance& tol, const char* who) {
  // Hypothesis first: the m-th power maps every generator back into V.
  for (std::size_t g = 0; g < V.generators().size(); ++g) {
    Vector v = coordinates(V.generators()[g], V.ambient(), tol);
    for (std::size_t k = 0; k < m; ++k) v = ML * v;
    const double res = V.residual(v);
    if (res > tol.threshold(two_norm(v))) {
      std::ostringstream os;
      os << who << ": power " << m << " of the operator maps generator " << g
         << " outside the subspace (residual " << res << ")";
      throw HypothesisError(os.str());
    }
  }

  std::vector<Vector> all = V.basis();
  std::vector<Vector> cur = V.basis();
  for (std::size_t k = 1; k <= m; ++k) {
    for (auto& v : cur) v = ML * v;
    all.insert(all.end(), cur.begin(), cur.end());
  }
  return orthonormal_basis(all, tol);
}

}  // namespace

Subspace box_closure(const Subspace& V, const DifferenceOp& L,
                     const std::vector<double>& steps, std::size_t m,
                     const Tolerance& tol) {
  const Matrix ML = operator_matrix(L, V.ambient(), steps);
  const auto basis = box_span(V, ML, m, tol, "box_closure");
  Subspace W = Subspace::from_coordinates(V.ambient(), basis, tol);

  if (W.dim() > (m + 1) * V.dim())
    throw TheoremViolation("box_closure: dimension bound (m+1) dim V exceeded");
  for (const auto& w : W.basis()) {
    const Vector img = ML * w;
    if (W.residual(img) > tol.threshold(two_norm(img)))
      throw TheoremViolation("box_closure: result is not invariant under the operator");
  }
  return W;
}

Subspace diamond_closure(const Subspace& V, const DifferenceOp& L,
                         const DifferenceOp& S, const std::vector<double>& steps_L,
                         const std::vector<double>& steps_S, std::size_t m,
                         const Tolerance& tol) {
  // Both power hypotheses are stated on V itself; the inner box closure
  // then stays within reach of the outer one.
  const Matrix MS = operator_matrix(S, V.ambient(), steps_S);
  for (std::size_t g = 0; g < V.generators().size(); ++g) {
    Vector v = coordinates(V.generators()[g], V.ambient(), tol);
    for (std::size_t k = 0; k < m; ++k) v = MS * v;
    const double res = V.residual(v);
    if (res > tol.threshold(two_norm(v))) {
      std::ostringstream os;
      os << "diamond_closure: power " << m << " of the second operator maps generator "
         << g << " outside the subspace (residual " << res << ")";
      throw HypothesisError(os.str());
    }
  }

  const Subspace inner = box_closure(V, L, steps_L, m, tol);
  Subspace outer = box_closure(inner, S, steps_S, m, tol);
  if (outer.dim() > (m + 1) * (m + 1) * V.dim())
    throw TheoremViolation("diamond_closure: dimension bound (m+1)^2 dim V exceeded");
  return outer;
}

MontelVerdict montel_check(const ExpPolynomial& f, std::size_t m, const ExactStep& h1,
                           const ExactStep& h2, const Tolerance& tol) {
  if (m == 0) throw std::invalid_argument("montel_check: order must be positive");
  if (h1.is_zero() || h2.is_zero())
    throw std::invalid_argument("montel_check: steps must be nonzero");

  MontelVerdict v;
  if (ratio_is_rational(h1, h2)) {
    v.outcome = MontelOutcome::kHypothesisViolated;
    return v;
  }

  const double scale = f.coeff_norm();
  const DifferenceOp op = DifferenceOp::delta(1, 0).pow(m);
  const ExactStep* steps[2] = {&h1, &h2};
  for (std::size_t k = 0; k < 2; ++k) {
    const ExpPolynomial r = apply(op, f, {steps[k]->value()});
    if (!r.is_zero_within(tol, scale)) {
      v.outcome = MontelOutcome::kDifferencesNonzero;
      v.witness_step = k + 1;
      v.witness_residual = r.coeff_norm();
      return v;
    }
  }

  // Both differences vanish with incommensurable steps, so only a
  // polynomial of degree below m is possible.
  const ExpPolynomial g = f.cleaned(tol.threshold(scale));
  v.outcome = MontelOutcome::kPolynomial;
  v.coeffs.assign(m, Scalar(0));
  for (const auto& term : g.terms()) {
    if (std::abs(term.lambda) > tol.eps())
      throw TheoremViolation("montel_check: vanishing differences left a nonzero frequency");
    if (term.p.degree() >= static_cast<int>(m))
      throw TheoremViolation("montel_check: vanishing differences left degree " +
                             std::to_string(term.p.degree()));
    for (std::size_t k = 0; k < term.p.coeffs().size(); ++k) v.coeffs[k] = term.p.coeff(k);
  }
  return v;
}

namespace {

std::vector<Vector> block_intersection(const Subspace& V, std::size_t offset,
                                       std::size_t size, const Tolerance& tol) {
  const std::size_t n = V.ambient().dim();
  std::vector<Vector> axis;
  axis.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    Vector e(n, Scalar(0));
    e[offset + k] = Scalar(1);
    axis.push_back(std::move(e));
  }
  return subspace_intersection(V.basis(), axis, tol);
}

}  // namespace

DecompositionResult decompose_PE(const Subspace& V, std::size_t m, std::uint64_t seed,
                                 const Tolerance& tol) {
  if (m == 0) throw std::invalid_argument("decompose_PE: order must be positive");
  const AmbientSpace& S = V.ambient();

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> pick(0.2, 1.8);

  // A step is usable when no eigenvalue collision occurs; a handful of
  // draws is always enough away from a measure-zero set.
  double h = 0.0;
  std::vector<RootBlock> roots;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double cand = pick(rng);
    try {
      roots = root_decomposition(S, cand, m, tol);
      h = cand;
      break;
    } catch (const DegenerateStepError&) {
    }
  }
  if (h == 0.0)
    throw DegenerateStepError("decompose_PE: no usable step found in 64 draws");

  const DifferenceOp pow_op = DifferenceOp::delta(1, 0).pow(m);
  for (int k = 0; k < 3; ++k) {
    const double probe = k == 0 ? h : pick(rng);
    const auto rep = is_invariant(V, pow_op, {probe}, tol);
    if (!rep.invariant) {
      std::ostringstream os;
      os << "decompose_PE: subspace not invariant under the power difference with step "
         << probe << " (generator " << rep.witness_generator << ", residual "
         << rep.residual << ")";
      throw HypothesisError(os.str());
    }
  }

  const BlockMatrix delta = matrix_delta(S, h);

  DecompositionResult out{Subspace(S, {}, tol), Subspace(S, {}, tol), {}, h};
  std::vector<Vector> poly;
  std::vector<Vector> expo;
  std::size_t total = 0;
  for (const auto& rb : roots) {
    auto part = block_intersection(V, rb.offset, rb.size, tol);
    total += part.size();
    if (rb.block == 0) {  // zero frequency block: the polynomial part
      poly = std::move(part);
      continue;
    }
    // Certify the exponential slice as a chain prefix in local coordinates.
    std::vector<Vector> local;
    local.reserve(part.size());
    for (const auto& v : part) {
      Vector lv(v.begin() + rb.offset, v.begin() + rb.offset + rb.size);
      local.push_back(std::move(lv));
    }
    if (rb.size > 1) validate_chain_block(delta.blocks[rb.block], tol);
    const auto prefix = is_chain_prefix(local, tol);
    if (!prefix)
      throw TheoremViolation(
          "decompose_PE: block slice of an invariant subspace is not a chain prefix");
    out.certificate.push_back({rb.block, *prefix});
    expo.insert(expo.end(), part.begin(), part.end());
  }

  if (total != V.dim())
    throw TheoremViolation("decompose_PE: block slices do not add up to the subspace");

  out.P = Subspace::from_coordinates(S, poly, tol);
  out.E = Subspace::from_coordinates(S, orthonormal_basis(expo, tol), tol);
  return out;
}

Main2Report main2_equivalence(const Subspace& V, std::size_t m, std::size_t trials,
                              std::uint64_t seed, const Tolerance& tol) {
  if (m == 0) throw std::invalid_argument("main2_equivalence: order must be positive");
  if (trials == 0) throw std::invalid_argument("main2_equivalence: need at least one trial");

  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  std::uniform_real_distribution<double> pick(0.2, 1.8);

  Main2Report rep;
  rep.trials = trials;

  const DifferenceOp pow_op = DifferenceOp::delta(1, 0).pow(m);
  rep.pow_invariant = true;
  for (std::size_t t = 0; t < trials && rep.pow_invariant; ++t)
    rep.pow_invariant = is_invariant(V, pow_op, {pick(rng)}, tol).invariant;

  const DifferenceOp mixed_op = mixed(m);
  rep.mixed_invariant = true;
  for (std::size_t t = 0; t < trials && rep.mixed_invariant; ++t) {
    std::vector<double> tuple(m);
    for (auto& h : tuple) h = pick(rng);
    rep.mixed_invariant = is_invariant(V, mixed_op, tuple, tol).invariant;
  }
  rep.agree = rep.pow_invariant == rep.mixed_invariant;

  // Polynomial slice and the containment of all lower degrees.
  const std::size_t m0 = V.ambient().block(0).mult;
  if (m0 > 0) {
    const auto poly = block_intersection(V, 0, m0, tol);
    if (!poly.empty()) {
      std::size_t top = 0;
      for (const auto& v : poly)
        for (std::size_t k = 0; k < m0; ++k)
          if (std::abs(v[k]) > tol.threshold(1.0)) top = std::max(top, k);
      rep.poly_top_degree = top;
      if (rep.pow_invariant) {
        bool ok = true;
        for (std::size_t j = 0; j + m <= top && ok; ++j) {
          Vector e(V.ambient().dim(), Scalar(0));
          e[j] = Scalar(1);
          ok = V.residual(e) <= tol.threshold(1.0);
        }
        rep.lower_polynomials_contained = ok;
      }
    }
  }
  return rep;
}

}  // namespace deltam
