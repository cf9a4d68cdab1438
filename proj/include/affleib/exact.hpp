#pragma once

// Exact scalars over Q and F_p, dense vectors and matrices, echelon-form
// linear solving and grid-based polynomial identity testing.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace affleib {

class Scalar;

class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  /// Throws std::invalid_argument unless p is prime.
  static FieldSpec prime(std::uint32_t p);

  Kind kind() const { return p_ == 0 ? Kind::Rationals : Kind::PrimeField; }
  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  /// Element with canonical index i in [0, p). F_p only.
  Scalar element(std::uint32_t i) const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues are canonical in [0, p).
class Scalar {
 public:
  Scalar() = default;

  static Scalar rational(mpq_class q);
  static Scalar residue(std::uint64_t value, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  FieldSpec field() const;
  bool is_rational() const { return p_ == 0; }

  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational_value() const;
  std::uint32_t residue_value() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "p" or "p/q" over Q, the residue over F_p.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  std::uint32_t p_ = 0;
  std::variant<mpq_class, std::uint32_t> v_;
};

class Vec {
 public:
  Vec() = default;
  Vec(const FieldSpec& f, std::size_t n);
  Vec(const FieldSpec& f, std::vector<Scalar> entries);

  static Vec unit(const FieldSpec& f, std::size_t n, std::size_t i);
  static Vec from_ints(const FieldSpec& f, std::initializer_list<long long> v);

  const FieldSpec& field() const { return field_; }
  std::size_t size() const { return e_.size(); }
  Scalar& operator[](std::size_t i) { return e_[i]; }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  bool is_zero() const;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  Vec operator-() const;
  friend Vec operator*(const Scalar& a, Vec v);

  friend bool operator==(const Vec& a, const Vec& b);

  std::string to_string() const;

 private:
  void check_compatible(const Vec& o) const;

  FieldSpec field_;
  std::vector<Scalar> e_;
};

class Mat {
 public:
  Mat() = default;
  Mat(const FieldSpec& f, std::size_t rows, std::size_t cols);

  static Mat identity(const FieldSpec& f, std::size_t n);
  static Mat zero(const FieldSpec& f, std::size_t rows, std::size_t cols) {
    return Mat(f, rows, cols);
  }
  static Mat from_rows(const FieldSpec& f, const std::vector<std::vector<long long>>& rows);
  static Mat from_columns(const FieldSpec& f, std::size_t rows, const std::vector<Vec>& cols);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  Mat transpose() const;
  bool is_zero() const;

  std::size_t rank() const;
  std::optional<Mat> inverse() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  Mat operator-() const;
  friend Mat operator*(const Scalar& a, Mat m);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);

  friend bool operator==(const Mat& a, const Mat& b);

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> e_;
};

/// Row-reduces m in place: leftmost pivot, first nonzero row, pivots scaled
/// to one and cleared above and below. Returns the pivot columns.
std::vector<std::size_t> reduce_to_rref(Mat& m);

/// A linear subspace of F^n held by its reduced row echelon basis, so equal
/// subspaces compare equal entrywise.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const FieldSpec& f, std::size_t ambient_dim);  // zero subspace

  static Subspace span(const FieldSpec& f, std::size_t ambient_dim,
                       const std::vector<Vec>& generators);
  static Subspace full(const FieldSpec& f, std::size_t ambient_dim);

  const FieldSpec& field() const { return field_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Canonical remainder of v modulo the subspace; zero iff v lies in it.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).is_zero(); }
  bool is_subspace_of(const Subspace& other) const;
  /// Coordinates of v in basis(), or nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// The vector with the given coordinates in basis().
  Vec combine(const Vec& coords) const;

  friend bool operator==(const Subspace&, const Subspace&);

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

struct LinearSolution {
  Vec particular;
  Subspace kernel;
};

/// Solves A x = b. Returns nullopt when inconsistent; throws
/// std::invalid_argument on a dimension mismatch.
std::optional<LinearSolution> solve_linear(const Mat& a, const Vec& b);

/// Map from k argument vectors to a vector; polynomial in the coordinates.
using GridEvaluator = std::function<Vec(std::span<const Vec>)>;

enum class GridShape {
  /// {0..d}^n per argument: valid when each coordinate has degree <= d.
  Tensor,
  /// {x in {0..d}^n : sum x <= d}: valid when each argument block has total
  /// degree <= d. Much smaller for n > 1.
  Simplex,
};

/// Points used for one argument. Over F_p with p <= degree this is all of F_p^n.
std::vector<Vec> grid_points(const FieldSpec& field, std::size_t n, int degree,
                             GridShape shape);

/// First grid tuple where f is nonzero, in lexicographic order of the
/// argument point lists.
std::optional<std::vector<Vec>> grid_counterexample(const GridEvaluator& f,
                                                    std::span<const int> degrees,
                                                    const FieldSpec& field, std::size_t n,
                                                    GridShape shape = GridShape::Tensor);

bool grid_vanishes(const GridEvaluator& f, int degree_bound, const FieldSpec& field,
                   std::size_t n, std::size_t k);

bool grid_vanishes(const GridEvaluator& f, std::span<const int> degrees,
                   const FieldSpec& field, std::size_t n, GridShape shape = GridShape::Tensor);

/// All vectors of F_p^n in lexicographic order of residues.
std::vector<Vec> all_vectors(const FieldSpec& field, std::size_t n);

}  // namespace affleib
