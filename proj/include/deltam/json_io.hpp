#ifndef DELTAM_JSON_IO_HPP
#define DELTAM_JSON_IO_HPP

#include <json.hpp>

#include "deltam/exppoly.hpp"
#include "deltam/invariance.hpp"
#include "deltam/recover.hpp"
#include "deltam/spectral.hpp"
#include "deltam/subspace.hpp"

namespace deltam {

using json = nlohmann::json;

/// Interchange schema:
///   ExpPolynomial  {"terms":[{"lambda":[re,im],"coeffs":[[re,im],...]}]}
///   Subspace       {"ambient":[{"lambda":[re,im],"mult":k},...],
///                   "generators":[ExpPolynomial,...]}
json to_json(Scalar z);
Scalar scalar_from_json(const json& j);

json to_json(const ExpPolynomial& f);
ExpPolynomial exppoly_from_json(const json& j);

json to_json(const AmbientSpace& S);
AmbientSpace ambient_from_json(const json& j);

json to_json(const Subspace& V);
Subspace subspace_from_json(const json& j, const Tolerance& tol = {});

json to_json(const Matrix& M);

json to_json(const MontelVerdict& v);
json to_json(const DecompositionResult& r);
json to_json(const Main2Report& r);
json to_json(const BlockMatrix& A);
json to_json(const RecoveryReport& r);

}  // namespace deltam

#endif
