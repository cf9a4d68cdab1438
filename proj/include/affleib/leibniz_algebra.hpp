#pragma once

// Finite-dimensional Leibniz algebras given by structure constants.
//
// Convention: [e_i, e_j] = sum_k c[i][j][k] e_k, and the Leibniz rule is the
// right one, [[a,b],c] = [[a,c],b] + [a,[b,c]], so that ad_a = [-, a] is a
// derivation. ad_left(a) = [a, -] is generally not.

#include "affleib/exact.hpp"

#include <string>
#include <vector>

namespace affleib {

/// t[i][j] is the image of (e_i, e_j); each entry has length n.
using Tensor3 = std::vector<std::vector<Vec>>;

Tensor3 zero_tensor(const FieldSpec& f, std::size_t n);
/// sum_{i,j} x_i y_j t[i][j]
Vec bilinear(const Tensor3& t, const Vec& x, const Vec& y);
/// Throws std::invalid_argument unless t is n x n x n over f.
void check_tensor_shape(const Tensor3& t, const FieldSpec& f, std::size_t n);

bool is_leibniz(const Tensor3& c);

class LeibnizAlgebra {
 public:
  LeibnizAlgebra() = default;
  /// Throws std::invalid_argument if c is malformed or violates the Leibniz rule.
  LeibnizAlgebra(FieldSpec f, std::size_t n, Tensor3 c, std::string name = {});

  static LeibnizAlgebra abelian(const FieldSpec& f, std::size_t n);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return n_; }
  const Tensor3& constants() const { return c_; }
  const Vec& basis_bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }
  const std::string& name() const { return name_; }

  Vec bracket(const Vec& x, const Vec& y) const;

  friend bool operator==(const LeibnizAlgebra& a, const LeibnizAlgebra& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  Tensor3 c_;
  std::string name_;
};

Vec bracket(const LeibnizAlgebra& L, const Vec& x, const Vec& y);

bool is_abelian(const LeibnizAlgebra& L);
bool is_lie(const LeibnizAlgebra& L);
Subspace leib_ideal(const LeibnizAlgebra& L);
Subspace left_center(const LeibnizAlgebra& L);
Subspace right_center(const LeibnizAlgebra& L);
/// [L, L]
Subspace derived_subspace(const LeibnizAlgebra& L);

/// Matrix of x -> [x, a].
Mat ad_right(const LeibnizAlgebra& L, const Vec& a);
/// Matrix of x -> [a, x].
Mat ad_left(const LeibnizAlgebra& L, const Vec& a);

bool is_derivation(const LeibnizAlgebra& L, const Mat& D);
bool in_centroid(const LeibnizAlgebra& L, const Mat& kappa);
/// Basis of the centroid as a subspace of n*n row-major matrix coordinates.
std::vector<Mat> centroid_basis(const LeibnizAlgebra& L);

/// psi([a,b]) = [psi a, psi b]' on basis pairs.
bool is_leibniz_morphism(const LeibnizAlgebra& L, const LeibnizAlgebra& Lp, const Mat& psi);

/// Subspace H with [H, H] contained in H.
bool is_bracket_closed(const LeibnizAlgebra& L, const Subspace& H);

}  // namespace affleib
