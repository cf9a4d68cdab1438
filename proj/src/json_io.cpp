#include "affleib/json_io.hpp"

#include <stdexcept>

namespace affleib {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing key '") + key + "'");
  return *it;
}

std::size_t dim_of(const Json& j) {
  const Json& d = member(j, "dim");
  if (!d.is_number_unsigned() || d.get<std::uint64_t>() > 64) throw std::invalid_argument("'dim' must be a small non-negative integer");
  return d.get<std::size_t>();
}

void expect_array(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw std::invalid_argument(std::string(what) + " must be an array of length " + std::to_string(n));
}

}  // namespace

Json field_to_json(const FieldSpec& f) {
  if (f.is_rational()) return Json{{"kind", "Q"}};
  return Json{{"kind", "GF"}, {"p", f.modulus()}};
}

FieldSpec field_from_json(const Json& j) {
  if (j.is_string()) return parse_field(j.get<std::string>());
  const Json& kind = member(j, "kind");
  if (kind == "Q") return FieldSpec::rationals();
  if (kind == "GF") {
    const Json& p = member(j, "p");
    if (!p.is_number_unsigned()) throw std::invalid_argument("field 'p' must be a positive integer");
    std::uint64_t v = p.get<std::uint64_t>();
    if (v > 0xffffffffu) throw std::invalid_argument("field modulus too large");
    return FieldSpec::prime(static_cast<std::uint32_t>(v));
  }
  throw std::invalid_argument("unknown field kind");
}

FieldSpec parse_field(const std::string& text) {
  if (text == "Q" || text == "q") return FieldSpec::rationals();
  std::string digits;
  if (text.rfind("gf:", 0) == 0 || text.rfind("GF:", 0) == 0)
    digits = text.substr(3);
  else if (text.rfind("GF(", 0) == 0 && text.back() == ')')
    digits = text.substr(3, text.size() - 4);
  else
    throw std::invalid_argument("unknown field '" + text + "' (use Q or gf:p)");
  if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad prime in field '" + text + "'");
  return FieldSpec::prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

Json scalar_to_json(const Scalar& x) {
  if (x.is_rational()) return x.rational_value().get_str();
  return x.residue_value();
}

Scalar parse_scalar(const std::string& text, const FieldSpec& f) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("bad scalar '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("bad scalar '" + text + "'");
  q.canonicalize();
  return f.from_rational(q);
}

Scalar scalar_from_json(const Json& j, const FieldSpec& f) {
  if (f.is_rational()) {
    if (j.is_string()) return parse_scalar(j.get<std::string>(), f);
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    throw std::invalid_argument("rational scalars must be strings like \"3/4\"");
  }
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0 || static_cast<unsigned long long>(v) >= f.modulus())
      throw std::invalid_argument("residue " + std::to_string(v) + " out of range for " + f.to_string());
    return f.element(static_cast<std::uint32_t>(v));
  }
  throw std::invalid_argument("residues must be integers in [0, p)");
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

Vec vec_from_json(const Json& j, const FieldSpec& f, std::size_t n) {
  expect_array(j, n, "vector");
  Vec v(f, n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar_from_json(j[i], f);
  return v;
}

Json mat_to_json(const Mat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

Mat mat_from_json(const Json& j, const FieldSpec& f, std::size_t rows, std::size_t cols) {
  expect_array(j, rows, "matrix");
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vec r = vec_from_json(j[i], f, cols);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

Json tensor_to_json(const Tensor3& t) {
  Json a = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(vec_to_json(v));
    a.push_back(r);
  }
  return a;
}

Tensor3 tensor_from_json(const Json& j, const FieldSpec& f, std::size_t n) {
  expect_array(j, n, "structure constants");
  Tensor3 t = zero_tensor(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    expect_array(j[i], n, "structure constants row");
    for (std::size_t k = 0; k < n; ++k) t[i][k] = vec_from_json(j[i][k], f, n);
  }
  return t;
}

Json algebra_to_json(const LeibnizAlgebra& L) {
  Json j{{"field", field_to_json(L.field())}, {"dim", L.dim()}, {"c", tensor_to_json(L.constants())}};
  if (!L.name().empty()) j["name"] = L.name();
  return j;
}

LeibnizAlgebra algebra_from_json(const Json& j) {
  FieldSpec f = field_from_json(member(j, "field"));
  std::size_t n = dim_of(j);
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("'name' must be a string");
    name = j["name"].get<std::string>();
  }
  return LeibnizAlgebra(f, n, tensor_from_json(member(j, "c"), f, n), name);
}

Json datum_to_json(const BiAffineBracket& K) {
  return Json{{"field", field_to_json(K.field())}, {"dim", K.dim()},
              {"B", tensor_to_json(K.B())},        {"lambda", mat_to_json(K.lambda())},
              {"mu", mat_to_json(K.mu())},         {"s", vec_to_json(K.s())}};
}

BiAffineBracket datum_from_json(const Json& j) {
  FieldSpec f = field_from_json(member(j, "field"));
  std::size_t n = dim_of(j);
  return BiAffineBracket(f, n, tensor_from_json(member(j, "B"), f, n), mat_from_json(member(j, "lambda"), f, n, n),
                         mat_from_json(member(j, "mu"), f, n, n), vec_from_json(member(j, "s"), f, n));
}

Json witness_to_json(const IsoWitness& w) { return Json{{"psi", mat_to_json(w.psi)}, {"q", vec_to_json(w.q)}}; }

IsoWitness witness_from_json(const Json& j, const FieldSpec& f, std::size_t n) {
  return IsoWitness{mat_from_json(member(j, "psi"), f, n, n), vec_from_json(member(j, "q"), f, n)};
}

Json search_result_to_json(const SearchResult& r) {
  Json j{{"found", r.found}};
  j["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
  j["checked"] = r.checked;
  return j;
}

Json report_to_json(const ConditionReport& r) {
  Json j = Json::object();
  for (const auto& item : r.items) j[item.label] = item.holds;
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace affleib
