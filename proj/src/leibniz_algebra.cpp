#include "affleib/leibniz_algebra.hpp"

#include <stdexcept>

namespace affleib {

Tensor3 zero_tensor(const FieldSpec& f, std::size_t n) {
  return Tensor3(n, std::vector<Vec>(n, Vec(f, n)));
}

Vec bilinear(const Tensor3& t, const Vec& x, const Vec& y) {
  std::size_t n = t.size();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("bilinear: dimension mismatch");
  Vec r(x.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Vec& c = t[i][j];
      if (c.is_zero()) continue;
      Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!c[k].is_zero()) r[k] += xy * c[k];
    }
  }
  return r;
}

void check_tensor_shape(const Tensor3& t, const FieldSpec& f, std::size_t n) {
  if (t.size() != n) throw std::invalid_argument("tensor has wrong outer dimension");
  for (const auto& row : t) {
    if (row.size() != n) throw std::invalid_argument("tensor has wrong middle dimension");
    for (const auto& v : row)
      if (v.size() != n || v.field() != f) throw std::invalid_argument("tensor entry has wrong shape or field");
  }
}

bool is_leibniz(const Tensor3& c) {
  std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& ij = c[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        Vec ei = Vec::unit(ij.field(), n, i);
        Vec lhs = bilinear(c, ij, Vec::unit(ij.field(), n, k));
        Vec rhs = bilinear(c, c[i][k], Vec::unit(ij.field(), n, j)) + bilinear(c, ei, c[j][k]);
        if (!(lhs == rhs)) return false;
      }
    }
  return true;
}

LeibnizAlgebra::LeibnizAlgebra(FieldSpec f, std::size_t n, Tensor3 c, std::string name)
    : field_(f), n_(n), c_(std::move(c)), name_(std::move(name)) {
  check_tensor_shape(c_, field_, n_);
  if (!is_leibniz(c_)) throw std::invalid_argument("structure constants violate the Leibniz rule");
}

LeibnizAlgebra LeibnizAlgebra::abelian(const FieldSpec& f, std::size_t n) {
  return LeibnizAlgebra(f, n, zero_tensor(f, n), "L1(" + std::to_string(n) + ")");
}

Vec LeibnizAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("bracket: dimension mismatch");
  if (x.field() != field_ || y.field() != field_) throw std::invalid_argument("bracket: field mismatch");
  return bilinear(c_, x, y);
}

Vec bracket(const LeibnizAlgebra& L, const Vec& x, const Vec& y) { return L.bracket(x, y); }

bool is_abelian(const LeibnizAlgebra& L) {
  for (const auto& row : L.constants())
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

Subspace leib_ideal(const LeibnizAlgebra& L) {
  const auto& f = L.field();
  std::size_t n = L.dim();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    gens.push_back(L.basis_bracket(i, i));
    for (std::size_t j = i + 1; j < n; ++j) gens.push_back(L.basis_bracket(i, j) + L.basis_bracket(j, i));
  }
  if (f.is_prime_field() && f.modulus() == 2)
    for (const Vec& v : all_vectors(f, n)) gens.push_back(L.bracket(v, v));
  return Subspace::span(f, n, gens);
}

bool is_lie(const LeibnizAlgebra& L) { return leib_ideal(L).is_zero(); }

namespace {

// Kernel of x -> (rows of each block applied to x), blocks stacked vertically.
Subspace kernel_of_stack(const FieldSpec& f, std::size_t n, const std::vector<Mat>& blocks) {
  Mat a(f, blocks.size() * n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(b * n + i, j) = blocks[b](i, j);
  return solve_linear(a, Vec(f, blocks.size() * n))->kernel;
}

}  // namespace

Mat ad_right(const LeibnizAlgebra& L, const Vec& a) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < L.dim(); ++i) cols.push_back(L.bracket(Vec::unit(L.field(), L.dim(), i), a));
  return Mat::from_columns(L.field(), L.dim(), cols);
}

Mat ad_left(const LeibnizAlgebra& L, const Vec& a) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < L.dim(); ++i) cols.push_back(L.bracket(a, Vec::unit(L.field(), L.dim(), i)));
  return Mat::from_columns(L.field(), L.dim(), cols);
}

Subspace left_center(const LeibnizAlgebra& L) {
  std::vector<Mat> blocks;
  for (std::size_t j = 0; j < L.dim(); ++j) blocks.push_back(ad_right(L, Vec::unit(L.field(), L.dim(), j)));
  return kernel_of_stack(L.field(), L.dim(), blocks);
}

Subspace right_center(const LeibnizAlgebra& L) {
  std::vector<Mat> blocks;
  for (std::size_t j = 0; j < L.dim(); ++j) blocks.push_back(ad_left(L, Vec::unit(L.field(), L.dim(), j)));
  return kernel_of_stack(L.field(), L.dim(), blocks);
}

Subspace derived_subspace(const LeibnizAlgebra& L) {
  std::vector<Vec> gens;
  for (const auto& row : L.constants())
    for (const auto& v : row) gens.push_back(v);
  return Subspace::span(L.field(), L.dim(), gens);
}

bool is_derivation(const LeibnizAlgebra& L, const Mat& D) {
  std::size_t n = L.dim();
  if (D.rows() != n || D.cols() != n) throw std::invalid_argument("derivation matrix has wrong shape");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei = Vec::unit(L.field(), n, i), ej = Vec::unit(L.field(), n, j);
      if (!(L.bracket(D * ei, ej) + L.bracket(ei, D * ej) == D * L.basis_bracket(i, j))) return false;
    }
  return true;
}

bool in_centroid(const LeibnizAlgebra& L, const Mat& kappa) {
  std::size_t n = L.dim();
  if (kappa.rows() != n || kappa.cols() != n) throw std::invalid_argument("centroid matrix has wrong shape");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei = Vec::unit(L.field(), n, i), ej = Vec::unit(L.field(), n, j);
      if (!(kappa * L.basis_bracket(i, j) == L.bracket(kappa * ei, ej))) return false;
    }
  return true;
}

std::vector<Mat> centroid_basis(const LeibnizAlgebra& L) {
  // Unknown kappa(r, c) sits at column r*n + c. Equation rows: for each (i, j, k),
  // (kappa [e_i,e_j])_k - ([kappa e_i, e_j])_k = 0.
  const auto& f = L.field();
  std::size_t n = L.dim();
  Mat a(f, n * n * n, n * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k, ++row) {
        for (std::size_t c = 0; c < n; ++c) a(row, k * n + c) += L.basis_bracket(i, j)[c];
        // kappa e_i = sum_r kappa(r, i) e_r
        for (std::size_t r = 0; r < n; ++r) a(row, r * n + i) -= L.basis_bracket(r, j)[k];
      }
  auto sol = solve_linear(a, Vec(f, n * n * n));
  std::vector<Mat> out;
  for (const Vec& v : sol->kernel.basis()) {
    Mat m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
    out.push_back(std::move(m));
  }
  return out;
}

bool is_leibniz_morphism(const LeibnizAlgebra& L, const LeibnizAlgebra& Lp, const Mat& psi) {
  if (L.field() != Lp.field()) throw std::invalid_argument("morphism between algebras over different fields");
  if (psi.rows() != Lp.dim() || psi.cols() != L.dim()) throw std::invalid_argument("morphism matrix has wrong shape");
  std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei = Vec::unit(L.field(), n, i), ej = Vec::unit(L.field(), n, j);
      if (!(psi * L.basis_bracket(i, j) == Lp.bracket(psi * ei, psi * ej))) return false;
    }
  return true;
}

bool is_bracket_closed(const LeibnizAlgebra& L, const Subspace& H) {
  for (const Vec& x : H.basis())
    for (const Vec& y : H.basis())
      if (!H.contains(L.bracket(x, y))) return false;
  return true;
}

}  // namespace affleib
