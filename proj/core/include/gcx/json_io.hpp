#pragma once

// JSON forms of multiforms, normal forms and expression-valued fields.
//
//   multiform  {"dim": 4, "terms": [{"indices": [1, 2], "re": 1.0, "im": 0.0}]}
//   form field {"dim": 4, "terms": [{"indices": [1], "coeff": <expr>}]}
//   gc field   {"dim": 4, "vec": [<expr> x dim], "cov": [<expr> x dim]}
//
// Indices are 1-based and may come in any order; the term picks up the sign
// of the sorting permutation. Repeated indices are rejected.

#include <nlohmann/json.hpp>

#include "gcx/field.hpp"
#include "gcx/spinor.hpp"

namespace gcx {

nlohmann::json to_json(const Multiform& a);
Multiform multiform_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GcVector& v);
GcVector gc_vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NormalForm& nf);

BasicMultiform<Expr> form_exprs_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BasicMultiform<Expr>& a);

struct GcVectorExprs {
  int dim = kMaxDim;
  std::array<Expr, kMaxDim> vec;
  std::array<Expr, kMaxDim> cov;
};

GcVectorExprs gc_vector_exprs_from_json(const nlohmann::json& j);

}  // namespace gcx
