#pragma once

// Bi-affine brackets {a,b} = B(a,b) + lambda(a) + mu(b) + s on F^n, their
// Leibnizians, the condition systems for each affgebra type and the direct
// grid-identity predicates they are checked against.

#include "affleib/exact.hpp"
#include "affleib/leibniz_algebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace affleib {

class BiAffineBracket {
 public:
  BiAffineBracket() = default;
  /// Validates shapes and fields; B need not be Leibniz.
  BiAffineBracket(FieldSpec f, std::size_t n, Tensor3 B, Mat lambda, Mat mu, Vec s);

  /// The affgebra datum a(L; lambda, mu, s).
  static BiAffineBracket from_algebra(const LeibnizAlgebra& L, Mat lambda, Mat mu, Vec s);
  /// All-zero bracket on F^n.
  static BiAffineBracket zero(const FieldSpec& f, std::size_t n);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return n_; }
  const Tensor3& B() const { return B_; }
  const Mat& lambda() const { return lambda_; }
  const Mat& mu() const { return mu_; }
  const Vec& s() const { return s_; }

  Vec operator()(const Vec& a, const Vec& b) const;
  /// [a,b] with the bilinear part only.
  Vec bilinear_part(const Vec& a, const Vec& b) const { return bilinear(B_, a, b); }

  /// True when B satisfies the Leibniz rule.
  bool is_datum() const;
  /// The fibre at the origin; throws std::invalid_argument unless is_datum().
  LeibnizAlgebra fibre_algebra() const;

  friend bool operator==(const BiAffineBracket& x, const BiAffineBracket& y) {
    return x.field_ == y.field_ && x.n_ == y.n_ && x.B_ == y.B_ && x.lambda_ == y.lambda_ &&
           x.mu_ == y.mu_ && x.s_ == y.s_;
  }

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  Tensor3 B_;
  Mat lambda_, mu_;
  Vec s_;
};

/// Recovers (B, lambda, mu, s) of a bi-affine map by evaluation at 0 and
/// the basis vectors. The caller guarantees f is bi-affine.
BiAffineBracket bi_affine_from_function(const std::function<Vec(const Vec&, const Vec&)>& f,
                                        const FieldSpec& field, std::size_t n);

Vec eval_bracket(const BiAffineBracket& K, const Vec& a, const Vec& b);

/// {{a,c},b} - {{a,b},c} + {a,{b,c}}
Vec leibnizian(const BiAffineBracket& K, const Vec& a, const Vec& b, const Vec& c);

/// The eight-term linearization of the Leibnizian at the base point o,
/// returned as a point; it vanishes when it equals o.
Vec linearized_leibnizian(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b, const Vec& c);

/// Same quantity written directly as o + sum of signed Leibnizian values,
/// without translating to the origin first.
Vec linearized_leibnizian_direct(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b,
                                 const Vec& c);

struct CheckOptions {
  GridShape shape = GridShape::Simplex;
};

/// Grid test that the linearized Leibnizian at o vanishes identically.
bool linearization_vanishes(const BiAffineBracket& K, const Vec& o, const CheckOptions& opt = {});

/// Decided from B by the Leibniz rule on basis triples.
bool is_affine_leibniz(const BiAffineBracket& K);

/// The bracket [a,b]_o = {a,b} - {a,o} + {o,o} - {o,b} on the fibre at o,
/// computed on points and returned as a point of the fibre (o is its zero).
Vec fibre_bracket(const BiAffineBracket& K, const Vec& o, const Vec& a, const Vec& b);

struct Fibre {
  LeibnizAlgebra algebra;  // constants in the basis o + e_i
  Mat lambda;              // x -> {o+x, o} - {o, o}
  Mat mu;                  // y -> {o, o+y} - {o, o}
  Vec s;                   // {o, o} - o
};

/// Decomposition at o. Throws std::invalid_argument unless K is affine-Leibniz.
Fibre fibre_at(const BiAffineBracket& K, const Vec& o);

/// The origin-centred bracket {a,b} = o + [a-o,b-o]_o + lambda(a-o) + mu(b-o) + s.
BiAffineBracket recenter(const Fibre& F, const Vec& o);

struct ConditionResult {
  std::string label;
  bool holds = false;
  /// Argument tuple where the identity fails, when it fails.
  std::optional<std::vector<Vec>> witness;
};

struct ConditionReport {
  std::vector<ConditionResult> items;

  bool all() const;
  const ConditionResult& at(const std::string& label) const;
};

/// One identity "lhs(args) = rhs(args)" checked on the grid; the evaluator
/// returns lhs - rhs.
struct Identity {
  std::string label;
  std::vector<int> degrees;
  GridEvaluator defect;
};

ConditionResult check_identity(const Identity& id, const FieldSpec& field, std::size_t n,
                               const CheckOptions& opt = {});
ConditionReport check_identities(const std::vector<Identity>& ids, const FieldSpec& field, std::size_t n,
                                 const CheckOptions& opt = {}, bool stop_at_first_failure = false);

// Condition systems. Each identity compares a combination of the datum's
// parts; the first group restates partial Leibnizian evaluations.
std::vector<Identity> general_identities(const BiAffineBracket& K);
std::vector<Identity> derivative_identities(const BiAffineBracket& K);
std::vector<Identity> homogeneous_identities(const BiAffineBracket& K);
std::vector<Identity> lie_type_identities(const BiAffineBracket& K);

ConditionReport check_general_conditions(const BiAffineBracket& K, const CheckOptions& opt = {});
ConditionReport check_derivative_conditions(const BiAffineBracket& K, const CheckOptions& opt = {});
ConditionReport check_homogeneous_conditions(const BiAffineBracket& K, const CheckOptions& opt = {});
ConditionReport check_lie_type_conditions(const BiAffineBracket& K, const CheckOptions& opt = {});

// Typed Leibnizians decided directly: Lambda - expected vanishes on the grid.
bool is_derivative(const BiAffineBracket& K, const CheckOptions& opt = {});
bool is_homogeneous(const BiAffineBracket& K, const CheckOptions& opt = {});
bool is_lie_type(const BiAffineBracket& K, const CheckOptions& opt = {});

/// {a,a} - {{c,c},c} + {{b,c},{b,c}} - {{a,a},a} + {{c,c},b} - {{b,b},b} + {{a,a},b}
Vec lie_type_leibnizian(const BiAffineBracket& K, const Vec& a, const Vec& b, const Vec& c);

bool is_affine_antisymmetric(const BiAffineBracket& K, const CheckOptions& opt = {});
bool satisfies_affine_jacobi(const BiAffineBracket& K, const CheckOptions& opt = {});
bool is_lie_affgebra(const BiAffineBracket& K, const CheckOptions& opt = {});
ConditionReport check_lie_affgebra_axioms(const BiAffineBracket& K, const CheckOptions& opt = {});

/// lambda([a,b]) = [lambda(a),b] - [a,mu(b)] on basis pairs.
bool generalized_derivation_holds(const LeibnizAlgebra& L, const Mat& lambda, const Mat& mu);

// ------------------------------------------------------------ vector-valued

/// [a,b]_v = B(a,b) + lambda(a) + mu(b) + s with values in the tangent space at 0.
class VectorValuedBracket {
 public:
  VectorValuedBracket() = default;
  VectorValuedBracket(FieldSpec f, std::size_t n, Tensor3 B, Mat lambda, Mat mu, Vec s);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return n_; }
  const Tensor3& B() const { return B_; }
  const Mat& lambda() const { return lambda_; }
  const Mat& mu() const { return mu_; }
  const Vec& s() const { return s_; }

  Vec operator()(const Vec& a, const Vec& b) const;
  /// Linear part of x -> [x, c]_v, applied to the vector x.
  Vec with_right_arrow(const Vec& x, const Vec& c) const;
  /// Linear part of y -> [a, y]_v, applied to the vector y.
  Vec with_left_arrow(const Vec& a, const Vec& y) const;

  friend bool operator==(const VectorValuedBracket& x, const VectorValuedBracket& y) {
    return x.field_ == y.field_ && x.n_ == y.n_ && x.B_ == y.B_ && x.lambda_ == y.lambda_ &&
           x.mu_ == y.mu_ && x.s_ == y.s_;
  }

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  Tensor3 B_;
  Mat lambda_, mu_;
  Vec s_;
};

/// [a,b]_v = {a,b} - a. Throws std::invalid_argument unless K is derivative.
VectorValuedBracket to_vector_valued(const BiAffineBracket& K, const CheckOptions& opt = {});
/// {a,b} = [a,b]_v + a.
BiAffineBracket from_vector_valued(const VectorValuedBracket& V);

/// [[a,b]_v, c>]_v = [[a,c]_v, b>]_v + [<a, [b,c]_v]_v on the grid.
bool satisfies_vector_leibniz_rule(const VectorValuedBracket& V, const CheckOptions& opt = {});
/// [<a, [b,b]_v]_v = 0 on the grid.
bool satisfies_quasi_nilpotency(const VectorValuedBracket& V, const CheckOptions& opt = {});

// ------------------------------------------------------------ associative

/// Affine product a.b = M(a,b) + L(a) + R(b) + t.
class AssociativeAffgebra {
 public:
  AssociativeAffgebra() = default;
  /// Throws std::invalid_argument on shape errors or if the product is not associative.
  AssociativeAffgebra(FieldSpec f, std::size_t n, Tensor3 M, Mat lin_left, Mat lin_right, Vec t);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return n_; }
  Vec operator()(const Vec& a, const Vec& b) const;

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  Tensor3 M_;
  Mat L_, R_;
  Vec t_;
};

bool is_associative_product(const FieldSpec& f, std::size_t n, const Tensor3& M, const Mat& lin_left,
                            const Mat& lin_right, const Vec& t);

/// phi(a) = matrix * a + offset.
struct AffineMapData {
  Mat matrix;
  Vec offset;

  Vec operator()(const Vec& a) const { return matrix * a + offset; }
  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  static AffineMapData identity(const FieldSpec& f, std::size_t n);
};

/// {a,b} = a.D(b) - D(b).a + a expanded to (B, lambda, mu, s). Throws
/// std::invalid_argument listing failed preconditions
/// ("D.left" for D(D(a)b) = D(a)D(b), "D.right" for D(a)D(b) = D(aD(b))).
BiAffineBracket derivative_from_associative(const AssociativeAffgebra& A, const AffineMapData& D);

}  // namespace affleib
