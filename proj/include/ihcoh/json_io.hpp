#pragma once

#include <json.hpp>

#include "ihcoh/trinomial.hpp"

namespace ihcoh {

using json = nlohmann::json;

// Readers accept numbers or "p/q" strings and throw MalformedInput on any schema mismatch.
// Writers emit exact numbers as strings; polynomial coefficients stay JSON integers.
Int int_from_json(const json& j);
Rat rat_from_json(const json& j);
IVec ivec_from_json(const json& j);
QVec qvec_from_json(const json& j);
// Row-major; `cols` fixes the width when the matrix has no rows.
IMat imat_from_json(const json& j, std::size_t cols = 0);

json to_json(const Int& z);
json to_json(const Rat& q);
json to_json(const IVec& v);
json to_json(const QVec& v);
json to_json(const IMat& m);

Cone cone_from_json(const json& j);
json to_json(const Cone& c);
Polyhedron polyhedron_from_json(const json& j);
json to_json(const Polyhedron& p);
Fan fan_from_json(const json& j);
json to_json(const Fan& f);
IntPolynomial polynomial_from_json(const json& j);
json to_json(const IntPolynomial& p);

CurveData curve_from_json(const json& j);
json to_json(const CurveData& c);
// {"curve", "tail", "coefficients", "domain_excludes"?}; inside a divisorial fan the curve comes
// from the enclosing object.
PolyhedralDivisor divisor_from_json(const json& j, const CurveData* curve = nullptr);
json to_json(const PolyhedralDivisor& d, bool with_curve = true);
DivisorialFan divfan_from_json(const json& j);
json to_json(const DivisorialFan& e);

TrinomialData trinomial_from_json(const json& j);

struct WeightInput {
  IMat F;
  std::optional<IMat> S, P;
};
WeightInput weights_from_json(const json& j);

json parse_json_text(const std::string& text);  // throws MalformedInput

}  // namespace ihcoh
