#include "affleib/affgebra.hpp"

#include <stdexcept>

namespace affleib {

namespace {

void check_square(const Mat& m, const FieldSpec& f, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n || m.field() != f)
    throw std::invalid_argument(std::string(what) + " must be an " + std::to_string(n) + "x" +
                                std::to_string(n) + " matrix over " + f.to_string());
}

void check_vec(const Vec& v, const FieldSpec& f, std::size_t n, const char* what) {
  if (v.size() != n || v.field() != f)
    throw std::invalid_argument(std::string(what) + " must be a vector of length " + std::to_string(n) +
                                " over " + f.to_string());
}

}  // namespace

// ------------------------------------------------------------ BiAffineBracket

BiAffineBracket::BiAffineBracket(FieldSpec f, std::size_t n, Tensor3 B, Mat lambda, Mat mu, Vec s)
    : field_(f), n_(n), B_(std::move(B)), lambda_(std::move(lambda)), mu_(std::move(mu)), s_(std::move(s)) {
  check_tensor_shape(B_, field_, n_);
  check_square(lambda_, field_, n_, "lambda");
  check_square(mu_, field_, n_, "mu");
  check_vec(s_, field_, n_, "s");
}

BiAffineBracket BiAffineBracket::from_algebra(const LeibnizAlgebra& L, Mat lambda, Mat mu, Vec s) {
  return BiAffineBracket(L.field(), L.dim(), L.constants(), std::move(lambda), std::move(mu), std::move(s));
}

BiAffineBracket BiAffineBracket::zero(const FieldSpec& f, std::size_t n) {
  return BiAffineBracket(f, n, zero_tensor(f, n), Mat(f, n, n), Mat(f, n, n), Vec(f, n));
}

Vec BiAffineBracket::operator()(const Vec& a, const Vec& b) const {
  Vec r = bilinear(B_, a, b);
  for (std::size_t i = 0; i < n_; ++i) {
    r[i] += s_[i];
    for (std::size_t k = 0; k < n_; ++k) {
      if (!a[k].is_zero() && !lambda_(i, k).is_zero()) r[i] += lambda_(i, k) * a[k];
      if (!b[k].is_zero() && !mu_(i, k).is_zero()) r[i] += mu_(i, k) * b[k];
    }
  }
  return r;
}

bool BiAffineBracket::is_datum() const { return is_leibniz(B_); }

LeibnizAlgebra BiAffineBracket::fibre_algebra() const { return LeibnizAlgebra(field_, n_, B_); }

BiAffineBracket bi_affine_from_function(const std::function<Vec(const Vec&, const Vec&)>& f,
                                        const FieldSpec& field, std::size_t n) {
  Vec zero(field, n);
  Vec s = f(zero, zero);
  Mat lambda(field, n, n), mu(field, n, n);
  std::vector<Vec> fa, fb;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = Vec::unit(field, n, i);
    fa.push_back(f(e, zero));
    fb.push_back(f(zero, e));
    Vec l = fa.back() - s, m = fb.back() - s;
    for (std::size_t r = 0; r < n; ++r) {
      lambda(r, i) = l[r];
      mu(r, i) = m[r];
    }
  }
  Tensor3 B = zero_tensor(field, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      B[i][j] = f(Vec::unit(field, n, i), Vec::unit(field, n, j)) - fa[i] - fb[j] + s;
  return BiAffineBracket(field, n, std::move(B), std::move(lambda), std::move(mu), std::move(s));
}

Vec eval_bracket(const BiAffineBracket& K, const Vec& a, const Vec& b) { return K(a, b); }

Vec leibnizian(const BiAffineBracket& K, const Vec& a, const Vec& b, const Vec& c) {
  return K(K(a, c), b) - K(K(a, b), c) + K(a, K(b, c));
}

Vec linearized_leibnizian_direct(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b,
                                 const Vec& c) {
  auto L = [&](const Vec& x, const Vec& y, const Vec& z) { return leibnizian(K, x, y, z); };
  return o + L(a, b, c) - L(a, b, o) - L(a, o, c) - L(o, b, c) + L(a, o, o) + L(o, b, o) + L(o, o, c) -
         L(o, o, o);
}

Vec linearized_leibnizian(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b, const Vec& c) {
  // Conjugate the bracket by the translation to the origin, linearize there,
  // and translate the result back.
  auto Ko = [&](const Vec& x, const Vec& y) { return K(x + o, y + o) - o; };
  auto L = [&](const Vec& x, const Vec& y, const Vec& z) {
    return Ko(Ko(x, z), y) - Ko(Ko(x, y), z) + Ko(x, Ko(y, z));
  };
  Vec x = a - o, y = b - o, z = c - o, zero(K.field(), K.dim());
  Vec lin = L(x, y, z) - L(x, y, zero) - L(x, zero, z) - L(zero, y, z) + L(x, zero, zero) +
            L(zero, y, zero) + L(zero, zero, z) - L(zero, zero, zero);
  return lin + o;
}

bool linearization_vanishes(const BiAffineBracket& K, const Vec& o, const CheckOptions& opt) {
  std::vector<int> deg{1, 1, 1};
  return grid_vanishes(
      [&](std::span<const Vec> v) { return linearized_leibnizian(K, o, v[0], v[1], v[2]) - o; }, deg,
      K.field(), K.dim(), opt.shape);
}

bool is_affine_leibniz(const BiAffineBracket& K) { return K.is_datum(); }

Vec fibre_bracket(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b) {
  return K(a, b) - K(a, o) + K(o, o) - K(o, b) + o;
}

Fibre fibre_at(const BiAffineBracket& K, const Vec& o) {
  if (!is_affine_leibniz(K)) throw std::invalid_argument("fibre_at: bracket is not an affine Leibniz bracket");
  const auto& f = K.field();
  std::size_t n = K.dim();
  if (o.size() != n || o.field() != f) throw std::invalid_argument("fibre_at: base point has wrong dimension");
  Tensor3 c = zero_tensor(f, n);
  Mat lambda(f, n, n), mu(f, n, n);
  Vec oo = K(o, o);
  for (std::size_t i = 0; i < n; ++i) {
    Vec pi = o + Vec::unit(f, n, i);
    for (std::size_t j = 0; j < n; ++j) c[i][j] = fibre_bracket(K, o, pi, o + Vec::unit(f, n, j)) - o;
    Vec l = K(pi, o) - oo, m = K(o, pi) - oo;
    for (std::size_t r = 0; r < n; ++r) {
      lambda(r, i) = l[r];
      mu(r, i) = m[r];
    }
  }
  return Fibre{LeibnizAlgebra(f, n, std::move(c)), std::move(lambda), std::move(mu), oo - o};
}

BiAffineBracket recenter(const Fibre& F, const Vec& o) {
  const auto& f = F.algebra.field();
  std::size_t n = F.algebra.dim();
  return bi_affine_from_function(
      [&](const Vec& a, const Vec& b) {
        Vec x = a - o, y = b - o;
        return o + F.algebra.bracket(x, y) + F.lambda * x + F.mu * y + F.s;
      },
      f, n);
}

// ------------------------------------------------------------ condition reports

bool ConditionReport::all() const {
  for (const auto& r : items)
    if (!r.holds) return false;
  return true;
}

const ConditionResult& ConditionReport::at(const std::string& label) const {
  for (const auto& r : items)
    if (r.label == label) return r;
  throw std::out_of_range("no condition labelled " + label);
}

ConditionResult check_identity(const Identity& id, const FieldSpec& field, std::size_t n,
                               const CheckOptions& opt) {
  auto w = grid_counterexample(id.defect, id.degrees, field, n, opt.shape);
  return ConditionResult{id.label, !w.has_value(), std::move(w)};
}

ConditionReport check_identities(const std::vector<Identity>& ids, const FieldSpec& field, std::size_t n,
                                 const CheckOptions& opt, bool stop_at_first_failure) {
  ConditionReport rep;
  for (const auto& id : ids) {
    rep.items.push_back(check_identity(id, field, n, opt));
    if (stop_at_first_failure && !rep.items.back().holds) break;
  }
  return rep;
}

std::vector<Identity> general_identities(const BiAffineBracket& K) {
  // The identities capture K by reference; the caller keeps K alive.
  const auto& l = K.lambda();
  const auto& m = K.mu();
  const auto& s = K.s();
  auto br = [&K](const Vec& x, const Vec& y) { return K.bilinear_part(x, y); };
  auto Lam = [&K](const Vec& x, const Vec& y, const Vec& z) { return leibnizian(K, x, y, z); };
  auto z = [&K] { return Vec(K.field(), K.dim()); };
  std::vector<Identity> ids;
  ids.push_back({"general.const", {}, [=](std::span<const Vec>) {
                   return Lam(z(), z(), z()) - (m * s + s);
                 }});
  ids.push_back({"general.a", {1}, [=](std::span<const Vec> v) {
                   const Vec& a = v[0];
                   return Lam(a, z(), z()) - Lam(z(), z(), z()) - (br(a, s) + l * a);
                 }});
  ids.push_back({"general.b", {1}, [=](std::span<const Vec> v) {
                   const Vec& b = v[0];
                   return Lam(z(), b, z()) - Lam(z(), z(), z()) - ((m * l - l * m) * b + m * b + br(s, b));
                 }});
  ids.push_back({"general.c", {1}, [=](std::span<const Vec> v) {
                   const Vec& c = v[0];
                   return Lam(z(), z(), c) - Lam(z(), z(), z()) -
                          (m * (m * c) - m * c + l * (m * c) - br(s, c));
                 }});
  ids.push_back({"general.ab", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &b = v[1];
                   return Lam(a, b, z()) - Lam(a, z(), z()) + Lam(z(), z(), z()) - Lam(z(), b, z()) -
                          (br(l * a, b) + br(a, l * b) - l * br(a, b));
                 }});
  ids.push_back({"general.ac", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &c = v[1];
                   return Lam(a, z(), c) - Lam(a, z(), z()) + Lam(z(), z(), z()) - Lam(z(), z(), c) -
                          (l * br(a, c) + br(a, m * c) - br(l * a, c));
                 }});
  ids.push_back({"general.bc", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &b = v[0], &c = v[1];
                   return Lam(z(), b, c) - Lam(z(), b, z()) + Lam(z(), z(), z()) - Lam(z(), z(), c) -
                          (m * br(b, c) + br(m * c, b) - br(m * b, c));
                 }});
  return ids;
}

std::vector<Identity> derivative_identities(const BiAffineBracket& K) {
  const auto& l = K.lambda();
  const auto& m = K.mu();
  const auto& s = K.s();
  auto br = [&K](const Vec& x, const Vec& y) { return K.bilinear_part(x, y); };
  std::vector<Identity> ids;
  ids.push_back({"derivative.mu_s", {}, [=](std::span<const Vec>) { return m * s; }});
  ids.push_back({"derivative.a_s", {1}, [=](std::span<const Vec> v) { return br(v[0], s); }});
  ids.push_back({"derivative.b", {1}, [=](std::span<const Vec> v) {
                   const Vec& b = v[0];
                   return m * (l * b) - l * (m * b) + br(s, b);
                 }});
  ids.push_back({"derivative.c", {1}, [=](std::span<const Vec> v) {
                   const Vec& c = v[0];
                   return m * (m * c) - m * c + l * (m * c) - br(s, c);
                 }});
  ids.push_back({"derivative.ab", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &b = v[1];
                   return br(a, b) - (br(l * a, b) + br(a, l * b) - l * br(a, b));
                 }});
  ids.push_back({"derivative.ac", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &c = v[1];
                   return l * br(a, c) + br(a, m * c) - br(l * a, c);
                 }});
  ids.push_back({"derivative.bc", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &b = v[0], &c = v[1];
                   return m * br(b, c) + br(m * c, b) - br(m * b, c);
                 }});
  return ids;
}

std::vector<Identity> homogeneous_identities(const BiAffineBracket& K) {
  const auto& l = K.lambda();
  const auto& m = K.mu();
  const auto& s = K.s();
  auto br = [&K](const Vec& x, const Vec& y) { return K.bilinear_part(x, y); };
  std::vector<Identity> ids;
  ids.push_back({"homogeneous.generalized_derivation", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &b = v[1];
                   return br(l * a, b) - br(a, m * b) - l * br(a, b);
                 }});
  ids.push_back({"homogeneous.mu_bracket", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &b = v[1];
                   return br(m * a, b) - br(m * b, a) - m * br(a, b);
                 }});
  ids.push_back({"homogeneous.s_mu", {1}, [=](std::span<const Vec> v) {
                   const Vec& a = v[0];
                   return br(s, a) + m * a - m * (m * a) - l * (m * a);
                 }});
  return ids;
}

std::vector<Identity> lie_type_identities(const BiAffineBracket& K) {
  const auto& l = K.lambda();
  const auto& m = K.mu();
  const auto& s = K.s();
  auto br = [&K](const Vec& x, const Vec& y) { return K.bilinear_part(x, y); };
  std::vector<Identity> ids;
  ids.push_back({"lie_type.const", {}, [=](std::span<const Vec>) { return br(s, s); }});
  ids.push_back({"lie_type.a", {3}, [=](std::span<const Vec> v) {
                   const Vec& a = v[0];
                   Vec aa = br(a, a);
                   return aa - br(aa, a) - br(l * a, a) - br(m * a, a) - br(s, a) - br(a, s);
                 }});
  ids.push_back({"lie_type.b", {3}, [=](std::span<const Vec> v) {
                   const Vec& b = v[0];
                   Vec lb = l * b, bb = br(b, b);
                   return br(lb, lb) + br(lb, s) + br(s, lb) - br(bb, b) - br(lb, b) - br(m * b, b) - l * bb;
                 }});
  ids.push_back({"lie_type.c", {3}, [=](std::span<const Vec> v) {
                   const Vec& c = v[0];
                   Vec mc = m * c;
                   return -br(br(c, c), c) - br(l * c, c) - br(mc, c) + br(mc, mc) + br(mc, s) + br(s, mc);
                 }});
  ids.push_back({"lie_type.ab", {2, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &b = v[1];
                   return br(br(a, a), b) + br(m * a, b) - br(a, l * b) + l * br(a, b);
                 }});
  ids.push_back({"lie_type.ac", {1, 1}, [=](std::span<const Vec> v) {
                   const Vec &a = v[0], &c = v[1];
                   return l * br(a, c) + br(a, m * c) - br(l * a, c);
                 }});
  ids.push_back({"lie_type.bc", {2, 2}, [=](std::span<const Vec> v) {
                   const Vec &b = v[0], &c = v[1];
                   Vec bc = br(b, c), lb = l * b, mc = m * c;
                   return br(bc, bc) + br(lb, bc) + br(mc, bc) + br(s, bc) + br(bc, lb) + br(bc, mc) +
                          br(bc, s) + br(lb, mc) + br(mc, lb) + l * bc + br(br(c, c), b) + br(l * c, b) +
                          br(m * b, c);
                 }});
  return ids;
}

ConditionReport check_general_conditions(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identities(general_identities(K), K.field(), K.dim(), opt);
}

ConditionReport check_derivative_conditions(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identities(derivative_identities(K), K.field(), K.dim(), opt);
}

ConditionReport check_homogeneous_conditions(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identities(homogeneous_identities(K), K.field(), K.dim(), opt);
}

ConditionReport check_lie_type_conditions(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identities(lie_type_identities(K), K.field(), K.dim(), opt);
}

// ------------------------------------------------------------ typed Leibnizians

bool is_derivative(const BiAffineBracket& K, const CheckOptions& opt) {
  std::vector<int> deg{1, 1, 1};
  return grid_vanishes(
      [&](std::span<const Vec> v) { return leibnizian(K, v[0], v[1], v[2]) - K(v[0], v[1]); }, deg, K.field(),
      K.dim(), opt.shape);
}

bool is_homogeneous(const BiAffineBracket& K, const CheckOptions& opt) {
  std::vector<int> deg{1, 2, 1};
  return grid_vanishes(
      [&](std::span<const Vec> v) { return leibnizian(K, v[0], v[1], v[2]) - K(v[0], K(v[1], v[1])); }, deg,
      K.field(), K.dim(), opt.shape);
}

Vec lie_type_leibnizian(const BiAffineBracket& K, const Vec& a, const Vec& b, const Vec& c) {
  Vec aa = K(a, a), bc = K(b, c), cc = K(c, c);
  return aa - K(cc, c) + K(bc, bc) - K(aa, a) + K(cc, b) - K(K(b, b), b) + K(aa, b);
}

bool is_lie_type(const BiAffineBracket& K, const CheckOptions& opt) {
  std::vector<int> deg{3, 3, 3};
  return grid_vanishes(
      [&](std::span<const Vec> v) {
        return leibnizian(K, v[0], v[1], v[2]) - lie_type_leibnizian(K, v[0], v[1], v[2]);
      },
      deg, K.field(), K.dim(), opt.shape);
}

namespace {

Identity antisymmetry_identity(const BiAffineBracket& K) {
  return {"antisymmetry", {2, 2}, [&K](std::span<const Vec> v) {
            const Vec &a = v[0], &b = v[1];
            return K(a, b) - K(a, a) + K(b, a) - K(b, b);
          }};
}

Identity jacobi_identity(const BiAffineBracket& K) {
  return {"jacobi", {3, 3, 3}, [&K](std::span<const Vec> v) {
            const Vec &a = v[0], &b = v[1], &c = v[2];
            return K(K(a, b), c) - K(K(a, a), a) + K(K(b, c), a) - K(K(b, b), b) + K(K(c, a), b) - K(K(c, c), c);
          }};
}

}  // namespace

bool is_affine_antisymmetric(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identity(antisymmetry_identity(K), K.field(), K.dim(), opt).holds;
}

bool satisfies_affine_jacobi(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identity(jacobi_identity(K), K.field(), K.dim(), opt).holds;
}

bool is_lie_affgebra(const BiAffineBracket& K, const CheckOptions& opt) {
  return is_affine_antisymmetric(K, opt) && satisfies_affine_jacobi(K, opt);
}

ConditionReport check_lie_affgebra_axioms(const BiAffineBracket& K, const CheckOptions& opt) {
  return check_identities({antisymmetry_identity(K), jacobi_identity(K)}, K.field(), K.dim(), opt);
}

bool generalized_derivation_holds(const LeibnizAlgebra& L, const Mat& lambda, const Mat& mu) {
  std::size_t n = L.dim();
  check_square(lambda, L.field(), n, "lambda");
  check_square(mu, L.field(), n, "mu");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec a = Vec::unit(L.field(), n, i), b = Vec::unit(L.field(), n, j);
      if (!(lambda * L.bracket(a, b) == L.bracket(lambda * a, b) - L.bracket(a, mu * b))) return false;
    }
  return true;
}

// ------------------------------------------------------------ vector-valued

VectorValuedBracket::VectorValuedBracket(FieldSpec f, std::size_t n, Tensor3 B, Mat lambda, Mat mu, Vec s)
    : field_(f), n_(n), B_(std::move(B)), lambda_(std::move(lambda)), mu_(std::move(mu)), s_(std::move(s)) {
  check_tensor_shape(B_, field_, n_);
  check_square(lambda_, field_, n_, "lambda");
  check_square(mu_, field_, n_, "mu");
  check_vec(s_, field_, n_, "s");
}

Vec VectorValuedBracket::operator()(const Vec& a, const Vec& b) const {
  Vec r = bilinear(B_, a, b);
  for (std::size_t i = 0; i < n_; ++i) {
    r[i] += s_[i];
    for (std::size_t k = 0; k < n_; ++k) {
      if (!a[k].is_zero() && !lambda_(i, k).is_zero()) r[i] += lambda_(i, k) * a[k];
      if (!b[k].is_zero() && !mu_(i, k).is_zero()) r[i] += mu_(i, k) * b[k];
    }
  }
  return r;
}

Vec VectorValuedBracket::with_right_arrow(const Vec& x, const Vec& c) const {
  return bilinear(B_, x, c) + lambda_ * x;
}

Vec VectorValuedBracket::with_left_arrow(const Vec& a, const Vec& y) const {
  return bilinear(B_, a, y) + mu_ * y;
}

VectorValuedBracket to_vector_valued(const BiAffineBracket& K, const CheckOptions& opt) {
  if (!is_derivative(K, opt)) throw std::invalid_argument("to_vector_valued: bracket is not derivative");
  return VectorValuedBracket(K.field(), K.dim(), K.B(), K.lambda() - Mat::identity(K.field(), K.dim()),
                             K.mu(), K.s());
}

BiAffineBracket from_vector_valued(const VectorValuedBracket& V) {
  return BiAffineBracket(V.field(), V.dim(), V.B(), V.lambda() + Mat::identity(V.field(), V.dim()), V.mu(),
                         V.s());
}

bool satisfies_vector_leibniz_rule(const VectorValuedBracket& V, const CheckOptions& opt) {
  std::vector<int> deg{1, 1, 1};
  return grid_vanishes(
      [&](std::span<const Vec> v) {
        const Vec &a = v[0], &b = v[1], &c = v[2];
        return V.with_right_arrow(V(a, b), c) - V.with_right_arrow(V(a, c), b) - V.with_left_arrow(a, V(b, c));
      },
      deg, V.field(), V.dim(), opt.shape);
}

bool satisfies_quasi_nilpotency(const VectorValuedBracket& V, const CheckOptions& opt) {
  std::vector<int> deg{1, 2};
  return grid_vanishes([&](std::span<const Vec> v) { return V.with_left_arrow(v[0], V(v[1], v[1])); }, deg,
                       V.field(), V.dim(), opt.shape);
}

// ------------------------------------------------------------ associative

bool is_associative_product(const FieldSpec& f, std::size_t n, const Tensor3& M, const Mat& lin_left,
                            const Mat& lin_right, const Vec& t) {
  auto prod = [&](const Vec& a, const Vec& b) { return bilinear(M, a, b) + lin_left * a + lin_right * b + t; };
  std::vector<int> deg{1, 1, 1};
  return grid_vanishes(
      [&](std::span<const Vec> v) { return prod(prod(v[0], v[1]), v[2]) - prod(v[0], prod(v[1], v[2])); }, deg,
      f, n, GridShape::Simplex);
}

AssociativeAffgebra::AssociativeAffgebra(FieldSpec f, std::size_t n, Tensor3 M, Mat lin_left, Mat lin_right,
                                         Vec t)
    : field_(f), n_(n), M_(std::move(M)), L_(std::move(lin_left)), R_(std::move(lin_right)), t_(std::move(t)) {
  check_tensor_shape(M_, field_, n_);
  check_square(L_, field_, n_, "lin_left");
  check_square(R_, field_, n_, "lin_right");
  check_vec(t_, field_, n_, "t");
  if (!is_associative_product(field_, n_, M_, L_, R_, t_))
    throw std::invalid_argument("affine product is not associative");
}

Vec AssociativeAffgebra::operator()(const Vec& a, const Vec& b) const {
  return bilinear(M_, a, b) + L_ * a + R_ * b + t_;
}

AffineMapData AffineMapData::identity(const FieldSpec& f, std::size_t n) {
  return AffineMapData{Mat::identity(f, n), Vec(f, n)};
}

BiAffineBracket derivative_from_associative(const AssociativeAffgebra& A, const AffineMapData& D) {
  const auto& f = A.field();
  std::size_t n = A.dim();
  if (D.source_dim() != n || D.target_dim() != n || D.matrix.field() != f || D.offset.size() != n)
    throw std::invalid_argument("D must be an affine self-map of the affgebra");
  std::vector<int> deg{1, 1};
  std::vector<std::string> failed;
  if (!grid_vanishes([&](std::span<const Vec> v) { return D(A(D(v[0]), v[1])) - A(D(v[0]), D(v[1])); }, deg, f,
                     n, GridShape::Simplex))
    failed.push_back("D.left");
  if (!grid_vanishes([&](std::span<const Vec> v) { return A(D(v[0]), D(v[1])) - D(A(v[0], D(v[1]))); }, deg, f,
                     n, GridShape::Simplex))
    failed.push_back("D.right");
  if (!failed.empty()) {
    std::string msg = "derivative_from_associative: precondition failed:";
    for (const auto& s : failed) msg += " " + s;
    throw std::invalid_argument(msg);
  }
  return bi_affine_from_function(
      [&](const Vec& a, const Vec& b) {
        Vec db = D(b);
        return A(a, db) - A(db, a) + a;
      },
      f, n);
}

}  // namespace affleib
