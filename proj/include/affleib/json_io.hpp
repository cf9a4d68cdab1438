#pragma once

// JSON formats for fields, algebras, affgebra data, witnesses and search
// results. Rational scalars are strings "p" or "p/q"; residues are integers.
// Loading validates shapes and fields and throws std::invalid_argument.

#include "affleib/affgebra.hpp"
#include "affleib/morphism.hpp"

#include <json.hpp>

namespace affleib {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);
/// "Q" or "gf:p" (also "GF(p)").
FieldSpec parse_field(const std::string& text);

Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const FieldSpec& f);
/// Scalar from text such as "3", "-1/2".
Scalar parse_scalar(const std::string& text, const FieldSpec& f);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const FieldSpec& f, std::size_t n);
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, const FieldSpec& f, std::size_t rows, std::size_t cols);
Json tensor_to_json(const Tensor3& t);
Tensor3 tensor_from_json(const Json& j, const FieldSpec& f, std::size_t n);

/// {"field", "dim", "c"} plus "name" when the algebra has one.
Json algebra_to_json(const LeibnizAlgebra& L);
LeibnizAlgebra algebra_from_json(const Json& j);

/// {"field", "dim", "B", "lambda", "mu", "s"}
Json datum_to_json(const BiAffineBracket& K);
BiAffineBracket datum_from_json(const Json& j);

/// {"psi", "q"}
Json witness_to_json(const IsoWitness& w);
IsoWitness witness_from_json(const Json& j, const FieldSpec& f, std::size_t n);

/// {"found", "witness", "checked"}
Json search_result_to_json(const SearchResult& r);

Json report_to_json(const ConditionReport& r);

/// Parses text, rethrowing parse errors as std::invalid_argument.
Json parse_json(const std::string& text);

}  // namespace affleib
