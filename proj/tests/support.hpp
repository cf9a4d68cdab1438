#pragma once

// Random generators and small helpers shared by the test suites.

#include "affleib/affgebra.hpp"
#include "affleib/catalog.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace affleib;

inline Scalar rand_scalar(std::mt19937& g, const FieldSpec& f, int span = 4) {
  if (f.is_prime_field()) return f.element(std::uniform_int_distribution<std::uint32_t>(0, f.modulus() - 1)(g));
  int num = std::uniform_int_distribution<int>(-span, span)(g);
  int den = std::uniform_int_distribution<int>(1, 3)(g);
  return f.from_rational(mpq_class(num, den));
}

inline Scalar rand_nonzero(std::mt19937& g, const FieldSpec& f) {
  for (;;) {
    Scalar x = rand_scalar(g, f);
    if (!x.is_zero()) return x;
  }
}

inline Vec rand_vec(std::mt19937& g, const FieldSpec& f, std::size_t n) {
  Vec v(f, n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rand_scalar(g, f);
  return v;
}

inline Mat rand_mat(std::mt19937& g, const FieldSpec& f, std::size_t r, std::size_t c) {
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_scalar(g, f);
  return m;
}

inline Mat rand_invertible(std::mt19937& g, const FieldSpec& f, std::size_t n) {
  for (;;) {
    Mat m = rand_mat(g, f, n, n);
    if (m.inverse()) return m;
  }
}

inline Tensor3 rand_tensor(std::mt19937& g, const FieldSpec& f, std::size_t n) {
  Tensor3 t = zero_tensor(f, n);
  for (auto& row : t)
    for (auto& v : row) v = rand_vec(g, f, n);
  return t;
}

inline const std::vector<std::string>& fibre_names() {
  static const std::vector<std::string> names{"L1(1)", "L1(2)", "L2", "L3", "L4", "L7", "sl2"};
  return names;
}

inline BiAffineBracket rand_datum(std::mt19937& g, const LeibnizAlgebra& L) {
  const auto& f = L.field();
  std::size_t n = L.dim();
  return BiAffineBracket::from_algebra(L, rand_mat(g, f, n, n), rand_mat(g, f, n, n), rand_vec(g, f, n));
}

inline BiAffineBracket rand_datum(std::mt19937& g, const FieldSpec& f) {
  const auto& names = fibre_names();
  std::string name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(g)];
  return rand_datum(g, algebra(name, f));
}

/// {a,b} = alpha acting on (a, b): (1 - alpha) a + alpha b.
inline BiAffineBracket action_bracket(const FieldSpec& f, std::size_t n, const Scalar& alpha) {
  Mat id = Mat::identity(f, n);
  return BiAffineBracket(f, n, zero_tensor(f, n), (f.one() - alpha) * id, alpha * id, Vec(f, n));
}

/// Bracket evaluated straight from the structure tensor, independent of the
/// library's bracket code.
inline Vec raw_bracket(const BiAffineBracket& K, const Vec& a, const Vec& b) {
  const auto& f = K.field();
  std::size_t n = K.dim();
  Vec out = K.s();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) out[i] += K.lambda()(i, k) * a[k] + K.mu()(i, k) * b[k];
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) out[i] += a[x] * b[y] * K.B()[x][y][i];
  }
  (void)f;
  return out;
}

inline Vec raw_leibnizian(const BiAffineBracket& K, const Vec& a, const Vec& b, const Vec& c) {
  auto br = [&](const Vec& x, const Vec& y) { return raw_bracket(K, x, y); };
  return br(br(a, c), b) - br(br(a, b), c) + br(a, br(b, c));
}

/// {a,b} = [a,b] + a + s with s = 0, or a random element of the left centre.
inline BiAffineBracket homogeneous_self(const std::string& fibre, const FieldSpec& f, std::mt19937* g = nullptr) {
  auto L = algebra(fibre, f);
  Vec s(f, L.dim());
  Subspace lc = left_center(L);
  if (g)
    for (const Vec& v : lc.basis()) s += rand_scalar(*g, f) * v;
  Bindings b;
  for (std::size_t i = 0; i < L.dim(); ++i) b["s" + std::to_string(i + 1)] = s[i];
  return instantiate(homogeneous_self_family(fibre), b, f);
}

}  // namespace testing
