#include "deltam/json_io.hpp"

#include <stdexcept>

namespace deltam {

json to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a complex number as [re, im]");
  return Scalar(j[0].get<double>(), j[1].get<double>());
}

json to_json(const ExpPolynomial& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json coeffs = json::array();
    for (const auto& c : t.p.coeffs()) coeffs.push_back(to_json(c));
    terms.push_back({{"lambda", to_json(t.lambda)}, {"coeffs", coeffs}});
  }
  return {{"terms", terms}};
}

ExpPolynomial exppoly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("exponential polynomial: expected {\"terms\": [...]}");
  std::vector<ExpTerm> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("lambda") || !t.contains("coeffs") ||
        !t["coeffs"].is_array())
      throw std::invalid_argument(
          "exponential polynomial term: expected {\"lambda\":[re,im],\"coeffs\":[...]}");
    std::vector<Scalar> c;
    for (const auto& a : t["coeffs"]) c.push_back(scalar_from_json(a));
    terms.push_back({scalar_from_json(t["lambda"]), Polynomial(std::move(c))});
  }
  return ExpPolynomial(std::move(terms));
}

json to_json(const AmbientSpace& S) {
  json blocks = json::array();
  for (const auto& b : S.blocks())
    blocks.push_back({{"lambda", to_json(b.lambda)}, {"mult", b.mult}});
  return blocks;
}

AmbientSpace ambient_from_json(const json& j) {
  if (!j.is_array())
    throw std::invalid_argument("ambient space: expected [{\"lambda\":...,\"mult\":...}]");
  std::vector<FreqBlock> blocks;
  for (const auto& b : j) {
    if (!b.is_object() || !b.contains("lambda") || !b.contains("mult") ||
        !b["mult"].is_number_unsigned())
      throw std::invalid_argument(
          "ambient block: expected {\"lambda\":[re,im],\"mult\":k}");
    blocks.push_back({scalar_from_json(b["lambda"]), b["mult"].get<std::size_t>()});
  }
  return AmbientSpace(std::move(blocks));
}

json to_json(const Subspace& V) {
  json gens = json::array();
  for (const auto& g : V.generators()) gens.push_back(to_json(g));
  return {{"ambient", to_json(V.ambient())}, {"generators", gens}};
}

Subspace subspace_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("generators") ||
      !j["generators"].is_array())
    throw std::invalid_argument(
        "subspace: expected {\"ambient\": [...], \"generators\": [...]}");
  AmbientSpace S = ambient_from_json(j["ambient"]);
  std::vector<ExpPolynomial> gens;
  for (const auto& g : j["generators"]) gens.push_back(exppoly_from_json(g));
  return Subspace(std::move(S), std::move(gens), tol);
}

json to_json(const Matrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const MontelVerdict& v) {
  switch (v.outcome) {
    case MontelOutcome::kPolynomial: {
      json coeffs = json::array();
      for (const auto& c : v.coeffs) coeffs.push_back(to_json(c));
      return {{"verdict", "POLYNOMIAL"}, {"coeffs", coeffs}};
    }
    case MontelOutcome::kDifferencesNonzero:
      return {{"verdict", "DIFFERENCES_NONZERO"},
              {"witness_step", v.witness_step},
              {"residual", v.witness_residual}};
    case MontelOutcome::kHypothesisViolated:
    default:
      return {{"verdict", "HYPOTHESIS_VIOLATED"}};
  }
}

json to_json(const DecompositionResult& r) {
  json cert = json::array();
  for (const auto& c : r.certificate)
    cert.push_back({{"block", c.block}, {"prefix", c.prefix}});
  return {{"step_used", r.step_used},
          {"P", {{"dim", r.P.dim()}, {"subspace", to_json(r.P)}}},
          {"E", {{"dim", r.E.dim()}, {"subspace", to_json(r.E)}}},
          {"certificate", cert}};
}

json to_json(const Main2Report& r) {
  json out = {{"pow_invariant", r.pow_invariant},
              {"mixed_invariant", r.mixed_invariant},
              {"agree", r.agree},
              {"trials", r.trials}};
  if (r.poly_top_degree) out["poly_top_degree"] = *r.poly_top_degree;
  if (r.lower_polynomials_contained)
    out["lower_polynomials_contained"] = *r.lower_polynomials_contained;
  return out;
}

json to_json(const BlockMatrix& A) {
  json blocks = json::array();
  for (std::size_t b = 0; b < A.blocks.size(); ++b)
    blocks.push_back({{"lambda", to_json(A.space.block(b).lambda)},
                      {"mult", A.space.block(b).mult},
                      {"entries", to_json(A.blocks[b])}});
  return {{"h", A.h}, {"power", A.power}, {"blocks", blocks}};
}

json to_json(const RecoveryReport& r) {
  json spectrum = json::array();
  for (const auto& z : r.spectrum) spectrum.push_back(to_json(z));
  json cands = json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"mu", to_json(c.mu)},
                     {"multiplicity", c.multiplicity},
                     {"weight", c.weight},
                     {"accepted", c.accepted}});
  json accepted = json::array();
  for (const auto& mu : frequency_recovery(r)) accepted.push_back(to_json(mu));
  return {{"order", r.order},
          {"B", to_json(r.B)},
          {"limit_residual", r.limit_residual},
          {"limit_table", r.limit_table},
          {"companion_dim", r.companion.rows()},
          {"spectrum", spectrum},
          {"candidates", cands},
          {"misfit", r.misfit},
          {"accepted", accepted}};
}

}  // namespace deltam
