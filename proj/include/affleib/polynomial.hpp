#pragma once

// Sparse multivariate polynomials with rational coefficients, used for
// parametric family templates and their constraint relations.

#include "affleib/exact.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace affleib {

using Bindings = std::map<std::string, Scalar>;

class Polynomial {
 public:
  /// Sorted (variable, exponent) pairs with positive exponents.
  using Monomial = std::vector<std::pair<std::string, int>>;

  Polynomial() = default;
  static Polynomial constant(const mpq_class& c);
  static Polynomial variable(const std::string& name);
  /// Parses e.g. "mu2*(l3 + l9 - 1)", "1/2*x^2 - y". Division only by constants.
  static Polynomial parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;
  std::set<std::string> variables() const;
  int degree_in(const std::string& var) const;

  /// Exact value at the bindings, mapped into `field`. Throws
  /// std::invalid_argument naming the first unbound variable.
  Scalar evaluate(const Bindings& b, const FieldSpec& field) const;

  Polynomial substitute(const std::string& var, const Polynomial& value) const;

  /// For P = c*var + R with c a nonzero constant and R free of var, returns
  /// -R/c. Throws std::invalid_argument otherwise.
  Polynomial solve_linear_for(const std::string& var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  Polynomial pow(int e) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

  const std::map<Monomial, mpq_class>& terms() const { return terms_; }

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  std::map<Monomial, mpq_class> terms_;
};

/// A polynomial reduced modulo p over a fixed variable order, for fast
/// evaluation in enumeration loops.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  /// Throws std::invalid_argument if a coefficient denominator is divisible
  /// by p or a variable is missing from `order`.
  CompiledPolynomial(const Polynomial& poly, const std::vector<std::string>& order, std::uint32_t p);

  std::uint32_t operator()(const std::vector<std::uint32_t>& values) const;

 private:
  struct Term {
    std::uint64_t coef;
    std::vector<std::pair<std::size_t, int>> factors;
  };
  std::uint32_t p_ = 0;
  std::vector<Term> terms_;
};

}  // namespace affleib
