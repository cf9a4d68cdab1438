#include "affleib/exact.hpp"

#include <algorithm>
#include <sstream>

namespace affleib {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
  if (p > 65521) throw std::invalid_argument("field modulus too large (max 65521)");
  return FieldSpec(p);
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long long v) const {
  if (p_ == 0) return Scalar::rational(mpq_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Scalar::residue(static_cast<std::uint64_t>(r), p_);
}

Scalar FieldSpec::from_rational(const mpq_class& q) const {
  if (p_ == 0) return Scalar::rational(q);
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (den == 0) throw std::domain_error("denominator vanishes in " + to_string());
  if (num < 0) num += p_;
  if (den < 0) den += p_;
  return Scalar::residue(num.get_ui(), p_) / Scalar::residue(den.get_ui(), p_);
}

Scalar FieldSpec::element(std::uint32_t i) const {
  if (p_ == 0) throw std::logic_error("element(i) requires a prime field");
  return Scalar::residue(i, p_);
}

std::string FieldSpec::to_string() const {
  return p_ == 0 ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

Scalar Scalar::rational(mpq_class q) {
  q.canonicalize();
  Scalar s;
  s.p_ = 0;
  s.v_ = std::move(q);
  return s;
}

Scalar Scalar::residue(std::uint64_t value, std::uint32_t p) {
  if (p == 0) throw std::invalid_argument("residue modulus must be prime");
  Scalar s;
  s.p_ = p;
  s.v_ = static_cast<std::uint32_t>(value % p);
  return s;
}

FieldSpec Scalar::field() const { return p_ == 0 ? FieldSpec::rationals() : FieldSpec::prime(p_); }

bool Scalar::is_zero() const {
  if (p_ == 0) return std::get<mpq_class>(v_) == 0;
  return std::get<std::uint32_t>(v_) == 0;
}

bool Scalar::is_one() const {
  if (p_ == 0) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint32_t>(v_) == 1;
}

const mpq_class& Scalar::rational_value() const {
  if (p_ != 0) throw std::logic_error("scalar is not rational");
  return std::get<mpq_class>(v_);
}

std::uint32_t Scalar::residue_value() const {
  if (p_ == 0) throw std::logic_error("scalar is not a residue");
  return std::get<std::uint32_t>(v_);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (p_ != o.p_) throw std::invalid_argument("scalar field mismatch");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (p_ == 0) return rational(1 / std::get<mpq_class>(v_));
  // Fermat: a^(p-2)
  std::uint64_t base = std::get<std::uint32_t>(v_), r = 1, e = p_ - 2;
  while (e) {
    if (e & 1) r = r * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return residue(r, p_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0) {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  } else {
    auto& x = std::get<std::uint32_t>(v_);
    x = (x + std::get<std::uint32_t>(o.v_)) % p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0) {
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  } else {
    auto& x = std::get<std::uint32_t>(v_);
    x = (x + p_ - std::get<std::uint32_t>(o.v_)) % p_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0) {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  } else {
    auto& x = std::get<std::uint32_t>(v_);
    x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * std::get<std::uint32_t>(o.v_) % p_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  if (p_ == 0) return rational(-std::get<mpq_class>(v_));
  return residue((p_ - std::get<std::uint32_t>(v_)) % p_, p_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (a.p_ == 0) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  return std::get<std::uint32_t>(a.v_) == std::get<std::uint32_t>(b.v_);
}

std::string Scalar::to_string() const {
  if (p_ == 0) return std::get<mpq_class>(v_).get_str();
  return std::to_string(std::get<std::uint32_t>(v_));
}

// ---------------------------------------------------------------- Vec

Vec::Vec(const FieldSpec& f, std::size_t n) : field_(f), e_(n, f.zero()) {}

Vec::Vec(const FieldSpec& f, std::vector<Scalar> entries) : field_(f), e_(std::move(entries)) {
  for (const auto& x : e_)
    if (x.modulus() != f.modulus()) throw std::invalid_argument("vector entry field mismatch");
}

Vec Vec::unit(const FieldSpec& f, std::size_t n, std::size_t i) {
  Vec v(f, n);
  if (i >= n) throw std::out_of_range("unit vector index out of range");
  v[i] = f.one();
  return v;
}

Vec Vec::from_ints(const FieldSpec& f, std::initializer_list<long long> v) {
  std::vector<Scalar> e;
  for (long long x : v) e.push_back(f.from_int(x));
  return Vec(f, std::move(e));
}

bool Vec::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& x) { return x.is_zero(); });
}

void Vec::check_compatible(const Vec& o) const {
  if (field_ != o.field_) throw std::invalid_argument("vector field mismatch");
  if (e_.size() != o.e_.size())
    throw std::invalid_argument("vector dimension mismatch: " + std::to_string(e_.size()) + " vs " +
                                std::to_string(o.e_.size()));
}

Vec& Vec::operator+=(const Vec& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Vec Vec::operator-() const {
  Vec r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Vec operator*(const Scalar& a, Vec v) {
  for (auto& x : v.e_) x *= a;
  return v;
}

bool operator==(const Vec& a, const Vec& b) { return a.field_ == b.field_ && a.e_ == b.e_; }

std::string Vec::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? ", " : "") << e_[i].to_string();
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- Mat

Mat::Mat(const FieldSpec& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), e_(rows * cols, f.zero()) {}

Mat Mat::identity(const FieldSpec& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Mat Mat::from_rows(const FieldSpec& f, const std::vector<std::vector<long long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Mat m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

Mat Mat::from_columns(const FieldSpec& f, std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows || cols[j].field() != f)
      throw std::invalid_argument("column does not fit matrix");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::column(std::size_t c) const {
  Vec v(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

Vec Mat::row(std::size_t r) const {
  Vec v(field_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
  return v;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& x) { return x.is_zero(); });
}

std::size_t Mat::rank() const {
  Mat m = *this;
  return reduce_to_rref(m).size();
}

std::optional<Mat> Mat::inverse() const {
  if (!is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  std::size_t n = rows_;
  Mat aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = field_.one();
  }
  auto piv = reduce_to_rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat inv(field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Mat& Mat::operator+=(const Mat& o) {
  if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in addition");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in subtraction");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Mat operator*(const Scalar& a, Mat m) {
  for (auto& x : m.e_) x *= a;
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.field_ != b.field_ || a.cols_ != b.rows_)
    throw std::invalid_argument("matrix shape mismatch in product");
  Mat r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.field_ != v.field() || a.cols_ != v.size())
    throw std::invalid_argument("matrix-vector shape mismatch");
  Vec r(a.field_, a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) r[i] += a(i, k) * v[k];
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<std::size_t> reduce_to_rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(const FieldSpec& f, std::size_t ambient_dim) : field_(f), n_(ambient_dim) {}

Subspace Subspace::span(const FieldSpec& f, std::size_t ambient_dim, const std::vector<Vec>& generators) {
  Subspace s(f, ambient_dim);
  if (generators.empty()) return s;
  Mat m(f, generators.size(), ambient_dim);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_dim || generators[i].field() != f)
      throw std::invalid_argument("generator does not lie in the ambient space");
    for (std::size_t j = 0; j < ambient_dim; ++j) m(i, j) = generators[i][j];
  }
  s.pivots_ = reduce_to_rref(m);
  for (std::size_t i = 0; i < s.pivots_.size(); ++i) s.basis_.push_back(m.row(i));
  return s;
}

Subspace Subspace::full(const FieldSpec& f, std::size_t ambient_dim) {
  std::vector<Vec> g;
  for (std::size_t i = 0; i < ambient_dim; ++i) g.push_back(Vec::unit(f, ambient_dim, i));
  return span(f, ambient_dim, g);
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != n_ || v.field() != field_) throw std::invalid_argument("vector outside ambient space");
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Scalar c = r[pivots_[i]];
    if (!c.is_zero()) r -= c * basis_[i];
  }
  return r;
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  return std::all_of(basis_.begin(), basis_.end(), [&](const Vec& b) { return other.contains(b); });
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(field_, basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vec Subspace::combine(const Vec& coords) const {
  if (coords.size() != basis_.size()) throw std::invalid_argument("coordinate count mismatch");
  Vec r(field_, n_);
  for (std::size_t i = 0; i < basis_.size(); ++i) r += coords[i] * basis_[i];
  return r;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.field_ == b.field_ && a.n_ == b.n_ && a.basis_ == b.basis_;
}

std::optional<LinearSolution> solve_linear(const Mat& a, const Vec& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: " + std::to_string(a.rows()) + " rows but rhs has " +
                                std::to_string(b.size()) + " entries");
  if (a.field() != b.field()) throw std::invalid_argument("solve_linear: field mismatch");
  const FieldSpec& f = a.field();
  std::size_t n = a.cols();
  Mat aug(f, a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = reduce_to_rref(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;

  LinearSolution sol{Vec(f, n), Subspace(f, n)};
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    is_pivot[piv[i]] = true;
    sol.particular[piv[i]] = aug(i, n);
  }
  std::vector<Vec> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec k(f, n);
    k[free] = f.one();
    for (std::size_t i = 0; i < piv.size(); ++i) k[piv[i]] = -aug(i, free);
    kernel.push_back(std::move(k));
  }
  sol.kernel = Subspace::span(f, n, kernel);
  return sol;
}

// ---------------------------------------------------------------- grids

std::vector<Vec> all_vectors(const FieldSpec& field, std::size_t n) {
  if (!field.is_prime_field()) throw std::logic_error("all_vectors requires a prime field");
  std::uint32_t p = field.modulus();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::uint32_t> digits(n, 0);
  for (std::size_t t = 0; t < total; ++t) {
    Vec v(field, n);
    for (std::size_t i = 0; i < n; ++i) v[i] = field.element(digits[i]);
    out.push_back(std::move(v));
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<Vec> grid_points(const FieldSpec& field, std::size_t n, int degree, GridShape shape) {
  if (degree < 0) throw std::invalid_argument("negative degree bound");
  if (field.is_prime_field() && field.modulus() <= static_cast<std::uint32_t>(degree))
    return all_vectors(field, n);
  std::vector<Vec> out;
  std::vector<int> digits(n, 0);
  while (true) {
    int sum = 0;
    for (int d : digits) sum += d;
    if (shape == GridShape::Tensor || sum <= degree) {
      Vec v(field, n);
      for (std::size_t i = 0; i < n; ++i) v[i] = field.from_int(digits[i]);
      out.push_back(std::move(v));
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] <= degree) break;
      digits[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::optional<std::vector<Vec>> grid_counterexample(const GridEvaluator& f, std::span<const int> degrees,
                                                    const FieldSpec& field, std::size_t n, GridShape shape) {
  std::size_t k = degrees.size();
  std::vector<std::vector<Vec>> pts;
  for (int d : degrees) pts.push_back(grid_points(field, n, d, shape));
  for (const auto& p : pts)
    if (p.empty()) return std::nullopt;
  std::vector<std::size_t> idx(k, 0);
  std::vector<Vec> args(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) args[i] = pts[i][idx[i]];
    if (!f(std::span<const Vec>(args)).is_zero()) return args;
    std::size_t i = k;
    while (true) {
      if (i == 0) return std::nullopt;
      --i;
      if (++idx[i] < pts[i].size()) break;
      idx[i] = 0;
    }
  }
}

bool grid_vanishes(const GridEvaluator& f, int degree_bound, const FieldSpec& field, std::size_t n,
                   std::size_t k) {
  std::vector<int> degrees(k, degree_bound);
  return !grid_counterexample(f, degrees, field, n, GridShape::Tensor).has_value();
}

bool grid_vanishes(const GridEvaluator& f, std::span<const int> degrees, const FieldSpec& field,
                   std::size_t n, GridShape shape) {
  return !grid_counterexample(f, degrees, field, n, shape).has_value();
}

}  // namespace affleib
