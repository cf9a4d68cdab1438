#include "affleib/catalog.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace affleib {

namespace {

using Rows = std::vector<std::vector<long long>>;

Tensor3 constants_from(const FieldSpec& f, std::size_t n,
                       const std::vector<std::tuple<std::size_t, std::size_t, std::vector<long long>>>& table) {
  Tensor3 c = zero_tensor(f, n);
  for (const auto& [i, j, v] : table) {
    Vec x(f, n);
    for (std::size_t k = 0; k < n; ++k) x[k] = f.from_int(v[k]);
    c[i][j] = x;
  }
  return c;
}

bool parse_index_suffix(const std::string& name, const std::string& head, std::string& arg) {
  if (name.size() <= head.size() + 2 || name.compare(0, head.size() + 1, head + "(") != 0 || name.back() != ')')
    return false;
  arg = name.substr(head.size() + 1, name.size() - head.size() - 2);
  return true;
}

}  // namespace

std::vector<std::string> algebra_names() { return {"L1(1)", "L1(2)", "L1(3)", "L2", "L3", "L4", "L4(xi)", "L7", "sl2"}; }

LeibnizAlgebra l4_xi(const Scalar& xi) {
  FieldSpec f = xi.field();
  if (xi.is_zero()) throw std::invalid_argument("L4(xi) requires xi != 0");
  Tensor3 c = zero_tensor(f, 2);
  c[1][1] = xi * Vec::unit(f, 2, 0);
  return LeibnizAlgebra(f, 2, std::move(c), "L4(" + xi.to_string() + ")");
}

LeibnizAlgebra algebra(const std::string& name, const FieldSpec& f) {
  std::string arg;
  if (parse_index_suffix(name, "L1", arg)) {
    std::size_t pos = 0;
    long n = -1;
    try {
      n = std::stol(arg, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != arg.size() || n < 1 || n > 16) throw std::invalid_argument("bad dimension in algebra name '" + name + "'");
    return LeibnizAlgebra::abelian(f, static_cast<std::size_t>(n));
  }
  if (name == "L1") return LeibnizAlgebra::abelian(f, 2);
  if (name == "L2") return LeibnizAlgebra(f, 2, constants_from(f, 2, {{0, 1, {1, 0}}, {1, 0, {-1, 0}}}), "L2");
  if (name == "L3") return LeibnizAlgebra(f, 2, constants_from(f, 2, {{0, 1, {1, 0}}}), "L3");
  if (name == "L4") return LeibnizAlgebra(f, 2, constants_from(f, 2, {{1, 1, {1, 0}}}), "L4");
  if (parse_index_suffix(name, "L4", arg)) {
    mpq_class xi;
    try {
      xi = mpq_class(arg);
      xi.canonicalize();
    } catch (const std::exception&) {
      throw std::invalid_argument("bad parameter in algebra name '" + name + "'");
    }
    return l4_xi(f.from_rational(xi));
  }
  if (name == "L7")
    return LeibnizAlgebra(
        f, 3, constants_from(f, 3, {{0, 1, {1, 0, 0}}, {0, 2, {1, 0, 0}}, {2, 1, {1, 0, 0}}, {2, 2, {1, 0, 0}}}),
        "L7");
  if (name == "sl2")
    // basis e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return LeibnizAlgebra(f, 3,
                          constants_from(f, 3,
                                         {{0, 1, {0, 0, 1}},
                                          {1, 0, {0, 0, -1}},
                                          {2, 0, {2, 0, 0}},
                                          {0, 2, {-2, 0, 0}},
                                          {2, 1, {0, -2, 0}},
                                          {1, 2, {0, 2, 0}}}),
                          "sl2");
  throw std::invalid_argument("unknown algebra '" + name + "'");
}

// ------------------------------------------------------------ relations

std::string to_string(FamilyType t) {
  switch (t) {
    case FamilyType::General: return "general";
    case FamilyType::Homogeneous: return "homogeneous";
    case FamilyType::LieType: return "lie-type";
  }
  return "?";
}

bool Relation::holds(const Bindings& b, const FieldSpec& f) const {
  bool eq = (lhs - rhs).evaluate(b, f).is_zero();
  return kind == RelationKind::Equal ? eq : !eq;
}

std::string Relation::to_string() const {
  return label + ": " + lhs.to_string() + (kind == RelationKind::Equal ? " = " : " != ") + rhs.to_string();
}

std::vector<std::string> FamilyDescriptor::free_params() const {
  std::set<std::string> solved;
  for (const auto& r : constraints)
    if (!r.solve_for.empty()) solved.insert(r.solve_for);
  std::vector<std::string> out;
  for (const auto& p : params)
    if (!solved.count(p)) out.push_back(p);
  return out;
}

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

std::vector<std::vector<Polynomial>> M(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> out;
  for (const auto& r : rows) {
    std::vector<Polynomial> row;
    for (const auto& e : r) row.push_back(P(e));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Polynomial> V(const std::vector<std::string>& v) {
  std::vector<Polynomial> out;
  for (const auto& e : v) out.push_back(P(e));
  return out;
}

Relation eq(std::string label, const std::string& l, const std::string& r, std::string solve = {}) {
  return {std::move(label), P(l), P(r), RelationKind::Equal, std::move(solve)};
}

Relation ne(std::string label, const std::string& l, const std::string& r) {
  return {std::move(label), P(l), P(r), RelationKind::NotEqual, {}};
}

const std::vector<std::vector<std::string>> kL7Lambda = {
    {"lambda3 + lambda9", "lambda2", "lambda3"}, {"0", "lambda5", "lambda6"}, {"0", "-lambda2", "lambda9"}};

FamilyDescriptor l7_family(int which) {
  FamilyDescriptor d;
  d.name = "L7_F" + std::to_string(which);
  d.fibre = "L7";
  d.type = FamilyType::Homogeneous;
  d.s_template = V({"s1", "s2", "s3"});
  switch (which) {
    case 1:
      d.params = {"lambda2", "lambda3", "lambda5", "lambda6", "lambda9", "mu2", "s1", "s2", "s3"};
      d.lambda_template = M(kL7Lambda);
      d.mu_template = M({{"0", "mu2", "mu2"}, {"0", "0", "0"}, {"0", "0", "0"}});
      d.constraints = {eq("s_sum", "s1 + s3", "mu2*(lambda3 + lambda9 - 1)", "s1")};
      break;
    case 2:
      d.params = {"lambda2", "lambda3", "lambda5", "lambda6", "lambda9", "mu2", "mu3", "s1", "s2", "s3"};
      d.lambda_template = M(kL7Lambda);
      d.mu_template = M({{"0", "mu2", "mu3"}, {"0", "0", "lambda2 + lambda9 - 1"}, {"0", "0", "1 - lambda2 - lambda9"}});
      d.constraints = {eq("lambda_link", "lambda2 - lambda5 + lambda6 + lambda9", "0", "lambda5"),
                       eq("c01", "mu3 - mu2", "lambda2 + lambda9 - 1", "mu3"),
                       eq("s_sum", "s1 + s3", "mu2*(lambda3 + lambda9 - 1)", "s1"),
                       ne("case.mu6", "lambda2 + lambda9 - 1", "0")};
      break;
    case 3:
      d.params = {"lambda2", "lambda3", "lambda5", "lambda6", "lambda9", "mu2", "mu3", "s1", "s2", "s3"};
      d.lambda_template = M(kL7Lambda);
      d.mu_template = M({{"0", "mu2", "mu3"}, {"0", "1 - lambda2 - lambda9", "0"}, {"0", "lambda2 + lambda9 - 1", "0"}});
      d.constraints = {eq("lambda_link", "lambda2 - lambda5 + lambda6 + lambda9", "0", "lambda5"),
                       eq("c01", "mu2 - mu3", "1 - lambda2 - lambda9", "mu2"),
                       eq("s_sum", "s1 + s3", "mu3*(lambda3 + lambda9 - 1)", "s1"),
                       ne("case.mu5", "1 - lambda2 - lambda9", "0")};
      break;
    case 4:
      d.params = {"lambda2", "lambda3", "lambda5", "mu2", "mu5", "s1", "s2", "s3"};
      d.lambda_template = M({{"lambda3 - lambda2 + 1", "lambda2", "lambda3"},
                             {"0", "lambda5", "lambda5 - 1"},
                             {"0", "-lambda2", "1 - lambda2"}});
      d.mu_template = M({{"0", "mu2", "mu2"}, {"0", "mu5", "mu5"}, {"0", "-mu5", "-mu5"}});
      d.constraints = {eq("s_sum", "s1 + s3", "(lambda3 - lambda2)*(mu2 - mu5)", "s1"),
                       ne("case.mu5", "mu5", "0")};
      break;
    case 5:
      d.params = {"lambda2", "lambda3", "lambda5", "lambda6", "mu2", "mu3", "mu5", "mu6", "s1", "s2", "s3"};
      d.lambda_template = M({{"lambda3 + lambda5 - lambda2 - lambda6", "lambda2", "lambda3"},
                             {"0", "lambda5", "lambda6"},
                             {"0", "-lambda2", "lambda5 - lambda2 - lambda6"}});
      d.mu_template = M({{"0", "mu2", "mu3"}, {"0", "mu5", "mu6"}, {"0", "-mu5", "-mu6"}});
      d.constraints = {eq("mu_link", "mu5 - mu6", "1 - lambda5 + lambda6", "mu6"),
                       eq("c01", "mu2 - mu5", "mu3 - mu6", "mu3"),
                       eq("s_sum", "s1 + s3", "(mu2 - mu5)*(lambda3 + lambda5 - lambda2 - lambda6 - 1)", "s1"),
                       ne("case.mu5", "mu5", "0"), ne("case.mu6", "mu6", "0"), ne("case.mu2_mu3", "mu2", "mu3")};
      break;
    default: throw std::invalid_argument("no L7 family F" + std::to_string(which));
  }
  return d;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"onedim_general",      "onedim_homogeneous_classes", "abelian_fibre_homogeneous", "homogeneous_self",
          "L2_homogeneous",      "L3_homogeneous",             "L4_homogeneous",            "sl2_homogeneous_normal",
          "L7_F1",               "L7_F2",                      "L7_F3",                     "L7_F4",
          "L7_F5",               "L4_lietype_F1",              "L4_lietype_F2"};
}

FamilyDescriptor homogeneous_self_family(const std::string& fibre) {
  LeibnizAlgebra L = algebra(fibre, FieldSpec::rationals());
  std::size_t n = L.dim();
  FamilyDescriptor d;
  d.name = "homogeneous_self";
  d.fibre = fibre;
  d.type = FamilyType::Homogeneous;
  std::vector<std::vector<std::string>> lam(n, std::vector<std::string>(n, "0")), mu = lam;
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) {
    lam[i][i] = "1";
    s.push_back("s" + std::to_string(i + 1));
    d.params.push_back(s.back());
  }
  d.lambda_template = M(lam);
  d.mu_template = M(mu);
  d.s_template = V(s);
  // [s, e_j] = 0, componentwise
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Polynomial lhs;
      for (std::size_t i = 0; i < n; ++i) {
        const mpq_class& c = L.basis_bracket(i, j)[k].rational_value();
        if (c != 0) lhs += Polynomial::constant(c) * Polynomial::variable(s[i]);
      }
      if (lhs.is_zero()) continue;
      d.constraints.push_back({"left_center." + std::to_string(j + 1) + "." + std::to_string(k + 1), lhs,
                               Polynomial(), RelationKind::Equal, {}});
    }
  return d;
}

FamilyDescriptor family(const std::string& name) {
  FamilyDescriptor d;
  d.name = name;
  if (name == "onedim_general") {
    d.fibre = "L1(1)";
    d.type = FamilyType::General;
    d.params = {"lambda", "mu", "s"};
    d.lambda_template = M({{"lambda"}});
    d.mu_template = M({{"mu"}});
    d.s_template = V({"s"});
  } else if (name == "onedim_homogeneous_classes") {
    d.fibre = "L1(1)";
    d.type = FamilyType::Homogeneous;
    d.params = {"lambda", "mu", "s"};
    d.lambda_template = M({{"lambda"}});
    d.mu_template = M({{"mu"}});
    d.s_template = V({"s"});
    d.constraints = {eq("mu_cases", "mu*(mu + lambda - 1)", "0")};
    d.has_normal_form = true;
  } else if (name == "abelian_fibre_homogeneous") {
    d.fibre = "L1(2)";
    d.type = FamilyType::Homogeneous;
    d.params = {"lambda1", "lambda2", "lambda3", "lambda4", "mu1", "mu2", "mu3", "mu4", "s1", "s2"};
    d.lambda_template = M({{"lambda1", "lambda2"}, {"lambda3", "lambda4"}});
    d.mu_template = M({{"mu1", "mu2"}, {"mu3", "mu4"}});
    d.s_template = V({"s1", "s2"});
    // (mu + lambda - id) mu = 0 entrywise
    const char* k[2][2] = {{"mu1 + lambda1 - 1", "mu2 + lambda2"}, {"mu3 + lambda3", "mu4 + lambda4 - 1"}};
    const char* m[2][2] = {{"mu1", "mu2"}, {"mu3", "mu4"}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        std::string e = "(" + std::string(k[i][0]) + ")*" + m[0][j] + " + (" + k[i][1] + ")*" + m[1][j];
        d.constraints.push_back(eq("kernel." + std::to_string(i + 1) + std::to_string(j + 1), e, "0"));
      }
  } else if (name == "homogeneous_self") {
    return homogeneous_self_family("L3");
  } else if (name == "L2_homogeneous") {
    d.fibre = "L2";
    d.type = FamilyType::Homogeneous;
    d.params = {"alpha", "mu1", "mu2"};
    d.lambda_template = M({{"alpha - mu1", "-mu2"}, {"0", "alpha"}});
    d.mu_template = M({{"mu1", "mu2"}, {"0", "0"}});
    d.s_template = V({"(alpha - 1)*mu2", "(1 - alpha)*mu1"});
    d.has_normal_form = true;
  } else if (name == "L3_homogeneous") {
    d.fibre = "L3";
    d.type = FamilyType::Homogeneous;
    d.params = {"lambda1", "lambda4", "mu2", "s2"};
    d.lambda_template = M({{"lambda1", "0"}, {"0", "lambda4"}});
    d.mu_template = M({{"0", "mu2"}, {"0", "0"}});
    d.s_template = V({"mu2*(lambda1 - 1)", "s2"});
    d.has_normal_form = true;
  } else if (name == "L4_homogeneous") {
    d.fibre = "L4";
    d.type = FamilyType::Homogeneous;
    d.params = {"lambda1", "lambda2", "mu2", "s1"};
    d.lambda_template = M({{"lambda1", "lambda2"}, {"0", "lambda1"}});
    d.mu_template = M({{"0", "mu2"}, {"0", "0"}});
    d.s_template = V({"s1", "mu2*(lambda1 - 1)"});
    d.has_normal_form = true;
  } else if (name == "sl2_homogeneous_normal") {
    // mu = ad_z for z = z1 e + z2 f + z3 h, lambda = alpha id - mu, s = (1 - alpha) z
    d.fibre = "sl2";
    d.type = FamilyType::Homogeneous;
    d.params = {"alpha", "z1", "z2", "z3"};
    d.lambda_template = M({{"alpha + 2*z3", "0", "-2*z1"}, {"0", "alpha - 2*z3", "2*z2"}, {"-z2", "z1", "alpha"}});
    d.mu_template = M({{"-2*z3", "0", "2*z1"}, {"0", "2*z3", "-2*z2"}, {"z2", "-z1", "0"}});
    d.s_template = V({"(1 - alpha)*z1", "(1 - alpha)*z2", "(1 - alpha)*z3"});
    d.has_normal_form = true;
  } else if (name.size() == 5 && name.rfind("L7_F", 0) == 0 && name[4] >= '1' && name[4] <= '5') {
    return l7_family(name[4] - '0');
  } else if (name == "L4_lietype_F1") {
    d.fibre = "L4";
    d.type = FamilyType::LieType;
    d.params = {"lambda2", "mu1", "mu2", "s1"};
    d.lambda_template = M({{"-1", "lambda2"}, {"0", "0"}});
    d.mu_template = M({{"mu1", "mu2"}, {"0", "1"}});
    d.s_template = V({"s1", "0"});
    d.has_normal_form = true;
  } else if (name == "L4_lietype_F2") {
    d.fibre = "L4";
    d.type = FamilyType::LieType;
    d.params = {"lambda2", "mu1", "mu2", "s1"};
    d.lambda_template = M({{"3", "lambda2"}, {"0", "2"}});
    d.mu_template = M({{"mu1", "mu2"}, {"0", "-1"}});
    d.s_template = V({"s1", "0"});
    d.has_normal_form = true;
  } else {
    throw std::invalid_argument("unknown family '" + name + "'");
  }
  return d;
}

// ------------------------------------------------------------ instantiation

namespace {

Polynomial scalar_constant(const Scalar& x) {
  return Polynomial::constant(x.is_rational() ? x.rational_value() : mpq_class(x.residue_value()));
}

Mat eval_matrix(const std::vector<std::vector<Polynomial>>& t, const Bindings& b, const FieldSpec& f) {
  Mat m(f, t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) m(i, j) = t[i][j].evaluate(b, f);
  return m;
}

}  // namespace

BiAffineBracket instantiate(const FamilyDescriptor& fam, const Bindings& given, const FieldSpec& f) {
  for (const auto& [k, v] : given) {
    if (std::find(fam.params.begin(), fam.params.end(), k) == fam.params.end())
      throw std::invalid_argument("family " + fam.name + " has no parameter '" + k + "'");
    if (v.field() != f) throw std::invalid_argument("parameter '" + k + "' is over the wrong field");
  }
  Bindings b = given;
  for (const auto& r : fam.constraints) {
    if (r.solve_for.empty() || b.count(r.solve_for)) continue;
    Polynomial sol = (r.lhs - r.rhs).solve_linear_for(r.solve_for);
    for (const auto& [k, v] : b) sol = sol.substitute(k, scalar_constant(v));
    if (!sol.is_constant()) {
      auto vars = sol.variables();
      throw std::invalid_argument("unbound parameter '" + *vars.begin() + "'");
    }
    b[r.solve_for] = f.from_rational(sol.constant_term());
  }
  for (const auto& p : fam.params)
    if (!b.count(p)) throw std::invalid_argument("unbound parameter '" + p + "'");
  for (const auto& r : fam.constraints)
    if (!r.holds(b, f)) throw std::invalid_argument("constraint violated: " + r.to_string());
  LeibnizAlgebra L = algebra(fam.fibre, f);
  Vec s(f, fam.dim());
  for (std::size_t i = 0; i < fam.dim(); ++i) s[i] = fam.s_template[i].evaluate(b, f);
  return BiAffineBracket::from_algebra(L, eval_matrix(fam.lambda_template, b, f), eval_matrix(fam.mu_template, b, f),
                                       std::move(s));
}

std::optional<Bindings> recover_bindings(const FamilyDescriptor& fam, const BiAffineBracket& K) {
  const auto& f = K.field();
  std::size_t n = fam.dim();
  if (K.dim() != n) return std::nullopt;
  LeibnizAlgebra L = algebra(fam.fibre, f);
  if (!(K.B() == L.constants())) return std::nullopt;
  std::vector<std::pair<Polynomial, Scalar>> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      entries.emplace_back(fam.lambda_template[i][j], K.lambda()(i, j));
      entries.emplace_back(fam.mu_template[i][j], K.mu()(i, j));
    }
    entries.emplace_back(fam.s_template[i], K.s()[i]);
  }
  for (const auto& r : fam.constraints)
    if (r.kind == RelationKind::Equal) entries.emplace_back(r.lhs - r.rhs, f.zero());

  Bindings b;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [tmpl, value] : entries) {
      Polynomial t = tmpl;
      for (const auto& [k, v] : b) t = t.substitute(k, scalar_constant(v));
      auto vars = t.variables();
      if (vars.size() != 1) continue;
      const std::string& v = *vars.begin();
      if (t.degree_in(v) != 1) continue;
      Scalar r0, r1;
      try {
        r0 = t.substitute(v, Polynomial()).evaluate({}, f);
        r1 = t.substitute(v, Polynomial::constant(1)).evaluate({}, f);
      } catch (const std::exception&) {
        continue;
      }
      Scalar coef = r1 - r0;
      if (coef.is_zero()) continue;
      b[v] = (value - r0) / coef;
      progress = true;
    }
  }
  for (const auto& p : fam.params)
    if (!b.count(p)) return std::nullopt;
  try {
    if (instantiate(fam, b, f) == K) return b;
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

bool in_family(const FamilyDescriptor& fam, const BiAffineBracket& K) { return recover_bindings(fam, K).has_value(); }

bool satisfies_declared_type(const FamilyDescriptor& fam, const BiAffineBracket& K) {
  switch (fam.type) {
    case FamilyType::General: return is_affine_leibniz(K) && linearization_vanishes(K, Vec(K.field(), K.dim()));
    case FamilyType::Homogeneous: return is_homogeneous(K);
    case FamilyType::LieType: return is_lie_type(K);
  }
  return false;
}

// ------------------------------------------------------------ square classes

SquareClass square_class(const Scalar& x) {
  FieldSpec f = x.field();
  if (x.is_zero()) return {f.zero(), f.one()};
  if (f.is_prime_field()) {
    std::uint32_t p = f.modulus();
    auto is_square = [&](const Scalar& y) {
      for (std::uint32_t t = 1; t < p; ++t)
        if (f.element(t) * f.element(t) == y) return true;
      return false;
    };
    Scalar rep = f.one();
    if (!is_square(x)) {
      std::uint32_t g = 2;
      while (is_square(f.element(g))) ++g;
      rep = f.element(g);
    }
    Scalar target = x / rep;
    for (std::uint32_t t = 1; t < p; ++t)
      if (f.element(t) * f.element(t) == target) return {rep, f.element(t)};
    throw std::logic_error("square root search failed");
  }
  const mpq_class& q = x.rational_value();
  mpz_class m = q.get_num() * q.get_den();
  int sign = sgn(m);
  m = abs(m);
  mpz_class rep = 1, root = 1;
  for (mpz_class d = 2; d * d <= m; ++d) {
    if (d > 10'000'000) throw std::invalid_argument("square class: value too large to factor");
    while (m % (d * d) == 0) {
      m /= d * d;
      root *= d;
    }
    if (m % d == 0) {
      m /= d;
      rep *= d;
    }
  }
  rep *= m;
  // x = num/den = num*den/den^2 = sign*rep*root^2/den^2
  mpq_class r(root, q.get_den());
  r.canonicalize();
  return {Scalar::rational(mpq_class(sign * rep)), Scalar::rational(r)};
}

// ------------------------------------------------------------ normal forms

namespace {

Mat mat2(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  Mat m(a.field(), 2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

Vec vec2(const Scalar& a, const Scalar& b) { return Vec(a.field(), std::vector<Scalar>{a, b}); }

NormalForm finish(const std::string& name, const BiAffineBracket& K, Mat psi, Vec q,
                  const std::optional<BiAffineBracket>& expected) {
  BiAffineBracket Kp = apply_iso(K, psi, q);
  if (expected && !(Kp == *expected))
    throw std::logic_error("normal form of " + name + " does not have the expected shape");
  if (!is_affgebra_iso(K, Kp, psi, q)) throw std::logic_error("normal form witness of " + name + " failed validation");
  return {std::move(Kp), IsoWitness{std::move(psi), std::move(q)}};
}

NormalForm onedim_normal_form(const BiAffineBracket& K) {
  const auto& f = K.field();
  Scalar l = K.lambda()(0, 0), m = K.mu()(0, 0), s = K.s()[0];
  Mat psi = Mat::identity(f, 1);
  Vec q(f, 1);
  Scalar s_out = f.zero();
  if (m.is_zero() && !(l == f.one())) {
    q[0] = s / (l - f.one());
  } else if (!s.is_zero()) {
    psi(0, 0) = s.inverse();
    s_out = f.one();
  }
  LeibnizAlgebra L = LeibnizAlgebra::abelian(f, 1);
  Mat lm(f, 1, 1), mm(f, 1, 1);
  lm(0, 0) = l;
  mm(0, 0) = m;
  BiAffineBracket expected = BiAffineBracket::from_algebra(L, lm, mm, Vec(f, std::vector<Scalar>{s_out}));
  return finish("onedim_homogeneous_classes", K, psi, q, expected);
}

NormalForm l4_homogeneous_normal_form(const BiAffineBracket& K, const Bindings& b) {
  const auto& f = K.field();
  Scalar l1 = b.at("lambda1"), l2 = b.at("lambda2"), m2 = b.at("mu2"), s1 = b.at("s1");
  Scalar z = f.zero(), one = f.one();
  LeibnizAlgebra L = algebra("L4", f);
  Vec q = vec2(z, m2);
  if (m2 == l2) {
    SquareClass sc = square_class(s1 - l2 * l2);
    Scalar theta = sc.root.inverse();
    BiAffineBracket expected =
        BiAffineBracket::from_algebra(L, l1 * Mat::identity(f, 2), Mat::zero(f, 2, 2), vec2(sc.rep, z));
    return finish("L4_homogeneous", K, mat2(theta * theta, z, z, theta), q, expected);
  }
  Scalar theta = (l2 - m2).inverse();
  Scalar omega = (s1 - l2 * m2) / ((m2 - l2) * (m2 - l2));
  BiAffineBracket expected = BiAffineBracket::from_algebra(L, mat2(l1, one, z, l1), Mat::zero(f, 2, 2), vec2(omega, z));
  return finish("L4_homogeneous", K, mat2(theta * theta, z, z, theta), q, expected);
}

NormalForm l4_lietype_normal_form(const std::string& name, const BiAffineBracket& K, const Bindings& b, bool first) {
  const auto& f = K.field();
  Scalar z = f.zero(), one = f.one();
  Scalar l2 = b.at("lambda2"), m1 = b.at("mu1"), m2 = b.at("mu2");
  Scalar m4 = first ? one : -one;
  LeibnizAlgebra L = algebra("L4", f);

  bool shear_only = !(m2 == l2) && m1.is_zero();
  auto witness = [&](const Scalar& theta, const Scalar& q1) {
    Scalar t2 = theta * theta;
    Scalar delta = (m2 == l2 || m1.is_zero()) ? z : t2 * (m2 - l2) / m1;
    Scalar q2 = first ? (delta + t2 * l2) / t2 : (t2 * l2 - delta) / t2;
    return std::make_pair(mat2(t2, delta, z, theta), vec2(q1, q2));
  };
  Scalar theta = shear_only ? (m2 - l2).inverse() : one;

  auto [psi0, q0] = witness(theta, z);
  auto [psi1, q1v] = witness(theta, one);
  Scalar s0 = apply_iso(K, psi0, q0).s()[0];
  Scalar coef = apply_iso(K, psi1, q1v).s()[0] - s0;

  Scalar q1 = z, s_out = z;
  if (!coef.is_zero()) {
    q1 = -s0 / coef;
  } else {
    if (shear_only) throw std::logic_error(name + ": constant term cannot be normalized in this characteristic");
    SquareClass sc = square_class(s0);
    theta = sc.root.inverse();
    s_out = sc.rep;
  }
  Mat lam = first ? mat2(-one, z, z, z) : mat2(f.from_int(3), z, z, f.from_int(2));
  Mat mu = shear_only ? mat2(z, one, z, m4) : mat2(m1, z, z, m4);
  BiAffineBracket expected = BiAffineBracket::from_algebra(L, lam, mu, vec2(s_out, z));
  auto [psi, q] = witness(theta, q1);
  return finish(name, K, psi, q, expected);
}

}  // namespace

NormalForm normal_form(const std::string& family_name, const BiAffineBracket& K) {
  FamilyDescriptor fam = family(family_name);
  if (!fam.has_normal_form) throw std::invalid_argument("family " + family_name + " has no normal form");
  auto b = recover_bindings(fam, K);
  if (!b) throw std::invalid_argument("datum is not in family " + family_name);
  const auto& f = K.field();
  Scalar z = f.zero();
  if (family_name == "onedim_homogeneous_classes") return onedim_normal_form(K);
  if (family_name == "L2_homogeneous") {
    BiAffineBracket expected = BiAffineBracket::from_algebra(algebra("L2", f), b->at("alpha") * Mat::identity(f, 2),
                                                             Mat::zero(f, 2, 2), Vec(f, 2));
    return finish(family_name, K, Mat::identity(f, 2), vec2(b->at("mu2"), -b->at("mu1")), expected);
  }
  if (family_name == "L3_homogeneous") {
    Scalar l1 = b->at("lambda1"), l4 = b->at("lambda4");
    BiAffineBracket expected = BiAffineBracket::from_algebra(
        algebra("L3", f), mat2(z, z, z, l4), Mat::zero(f, 2, 2), vec2(z, b->at("s2") + l1 * (f.one() - l4)));
    return finish(family_name, K, Mat::identity(f, 2), vec2(b->at("mu2"), l1), expected);
  }
  if (family_name == "L4_homogeneous") return l4_homogeneous_normal_form(K, *b);
  if (family_name == "sl2_homogeneous_normal") {
    Vec zv(f, std::vector<Scalar>{b->at("z1"), b->at("z2"), b->at("z3")});
    BiAffineBracket expected = BiAffineBracket::from_algebra(algebra("sl2", f), b->at("alpha") * Mat::identity(f, 3),
                                                             Mat::zero(f, 3, 3), Vec(f, 3));
    return finish(family_name, K, Mat::identity(f, 3), -zv, expected);
  }
  if (family_name == "L4_lietype_F1") return l4_lietype_normal_form(family_name, K, *b, true);
  if (family_name == "L4_lietype_F2") return l4_lietype_normal_form(family_name, K, *b, false);
  throw std::invalid_argument("family " + family_name + " has no normal form");
}

// ------------------------------------------------------------ enumeration

bool key_fits(std::uint32_t p, std::size_t n) {
  long double bound = 1;
  for (std::size_t i = 0; i < 2 * n * n + n; ++i) bound *= p;
  return bound < 18446744073709551615.0L;
}

std::uint64_t datum_key(const BiAffineBracket& K) {
  const auto& f = K.field();
  if (!f.is_prime_field()) throw std::invalid_argument("datum keys require a prime field");
  std::size_t n = K.dim();
  if (!key_fits(f.modulus(), n)) throw std::invalid_argument("datum key would overflow 64 bits");
  std::uint64_t key = 0, p = f.modulus();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) key = key * p + K.lambda()(i, j).residue_value();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) key = key * p + K.mu()(i, j).residue_value();
  for (std::size_t i = 0; i < n; ++i) key = key * p + K.s()[i].residue_value();
  return key;
}

BiAffineBracket datum_from_key(const LeibnizAlgebra& L, std::uint64_t key) {
  const auto& f = L.field();
  if (!f.is_prime_field()) throw std::invalid_argument("datum keys require a prime field");
  std::size_t n = L.dim();
  std::uint32_t p = f.modulus();
  std::vector<std::uint32_t> digits(2 * n * n + n);
  for (std::size_t k = digits.size(); k-- > 0;) {
    digits[k] = static_cast<std::uint32_t>(key % p);
    key /= p;
  }
  Mat lam(f, n, n), mu(f, n, n);
  Vec s(f, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lam(i, j) = f.element(digits[k++]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mu(i, j) = f.element(digits[k++]);
  for (std::size_t i = 0; i < n; ++i) s[i] = f.element(digits[k++]);
  return BiAffineBracket::from_algebra(L, lam, mu, s);
}

std::vector<std::uint64_t> enumerate_family(const FamilyDescriptor& fam, const FieldSpec& f, std::uint64_t cap) {
  if (!f.is_prime_field()) throw std::invalid_argument("family enumeration requires a prime field");
  std::uint32_t p = f.modulus();
  std::size_t n = fam.dim();
  if (!key_fits(p, n)) throw std::invalid_argument("datum key would overflow 64 bits");
  const auto& order = fam.params;
  auto index_of = [&](const std::string& v) {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
  };
  std::vector<std::string> free = fam.free_params();
  std::vector<std::size_t> free_idx;
  for (const auto& v : free) free_idx.push_back(index_of(v));

  std::set<std::string> known(free.begin(), free.end());
  std::vector<std::pair<std::size_t, CompiledPolynomial>> solvers;
  std::vector<std::pair<RelationKind, CompiledPolynomial>> checks;
  for (const auto& r : fam.constraints) {
    Polynomial diff = r.lhs - r.rhs;
    if (!r.solve_for.empty()) {
      Polynomial sol = diff.solve_linear_for(r.solve_for);
      for (const auto& v : sol.variables())
        if (!known.count(v)) throw std::logic_error("family " + fam.name + ": solving order uses '" + v + "' early");
      solvers.emplace_back(index_of(r.solve_for), CompiledPolynomial(sol, order, p));
      known.insert(r.solve_for);
    }
    checks.emplace_back(r.kind, CompiledPolynomial(diff, order, p));
  }
  std::vector<CompiledPolynomial> entries;
  for (const auto& row : fam.lambda_template)
    for (const auto& e : row) entries.emplace_back(e, order, p);
  for (const auto& row : fam.mu_template)
    for (const auto& e : row) entries.emplace_back(e, order, p);
  for (const auto& e : fam.s_template) entries.emplace_back(e, order, p);

  long double total_ld = 1;
  for (std::size_t i = 0; i < free.size(); ++i) total_ld *= p;
  if (total_ld > static_cast<long double>(cap))
    throw std::invalid_argument("enumeration of " + fam.name + " needs more than " + std::to_string(cap) +
                                " candidates");
  std::uint64_t total = static_cast<std::uint64_t>(total_ld);

  std::vector<std::uint64_t> keys;
  std::vector<std::uint32_t> values(order.size(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (std::size_t i = free_idx.size(); i-- > 0;) {
      values[free_idx[i]] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    for (const auto& [i, poly] : solvers) values[i] = poly(values);
    bool ok = true;
    for (const auto& [kind, poly] : checks) {
      bool zero = poly(values) == 0;
      if (zero != (kind == RelationKind::Equal)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::uint64_t key = 0;
    for (const auto& e : entries) key = key * p + e(values);
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace affleib
