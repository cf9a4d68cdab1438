#include "affleib/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace affleib {

namespace {

Polynomial::Monomial multiply(const Polynomial::Monomial& a, const Polynomial::Monomial& b) {
  std::map<std::string, int> e;
  for (const auto& [v, k] : a) e[v] += k;
  for (const auto& [v, k] : b) e[v] += k;
  return {e.begin(), e.end()};
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error in \"" + s_ + "\" at " + std::to_string(pos_) +
                                ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p;
    if (eat('-'))
      p = -term();
    else {
      eat('+');
      p = term();
    }
    while (true) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = power();
    while (true) {
      if (eat('*')) {
        p *= power();
      } else if (eat('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.constant_term() == 0) fail("division by a non-constant or zero");
        p *= Polynomial::constant(1 / d.constant_term());
      } else {
        return p;
      }
    }
  }

  Polynomial power() {
    Polynomial b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return b;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(mpq_class(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Polynomial::variable(s_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::constant(const mpq_class& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

Polynomial Polynomial::parse(const std::string& text) { return Parser(text).parse(); }

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

mpq_class Polynomial::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

int Polynomial::degree_in(const std::string& var) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (v == var && e > d) d = e;
  return d;
}

Scalar Polynomial::evaluate(const Bindings& b, const FieldSpec& field) const {
  Scalar total = field.zero();
  for (const auto& [m, c] : terms_) {
    Scalar t = field.from_rational(c);
    for (const auto& [v, e] : m) {
      auto it = b.find(v);
      if (it == b.end()) throw std::invalid_argument("unbound parameter '" + v + "'");
      if (it->second.modulus() != field.modulus())
        throw std::invalid_argument("parameter '" + v + "' is over the wrong field");
      for (int k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(c);
    Monomial rest;
    int e = 0;
    for (const auto& [v, k] : m) {
      if (v == var)
        e = k;
      else
        rest.push_back({v, k});
    }
    Polynomial r;
    r.add_term(rest, 1);
    out += t * r * value.pow(e);
  }
  return out;
}

Polynomial Polynomial::solve_linear_for(const std::string& var) const {
  Polynomial coeff, rest;
  for (const auto& [m, c] : terms_) {
    bool has = false;
    Monomial other;
    for (const auto& [v, k] : m) {
      if (v == var) {
        if (k != 1) throw std::invalid_argument("relation is not linear in '" + var + "'");
        has = true;
      } else {
        other.push_back({v, k});
      }
    }
    (has ? coeff : rest).add_term(other, c);
  }
  if (!coeff.is_constant() || coeff.is_zero())
    throw std::invalid_argument("relation does not determine '" + var + "' with a constant coefficient");
  return rest * constant(-1 / coeff.constant_term());
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(multiply(m1, m2), c1 * c2);
  *this = std::move(r);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Polynomial r = constant(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool unit = a == 1 && !m.empty();
    if (!unit) os << a.get_str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!unit || i > 0) os << '*';
      os << m[i].first;
      if (m[i].second > 1) os << '^' << m[i].second;
    }
  }
  return os.str();
}

}  // namespace affleib

namespace affleib {

CompiledPolynomial::CompiledPolynomial(const Polynomial& poly, const std::vector<std::string>& order,
                                       std::uint32_t p)
    : p_(p) {
  FieldSpec f = FieldSpec::prime(p);
  for (const auto& [m, c] : poly.terms()) {
    mpz_class den = c.get_den();
    if (mpz_class(den % p) == 0)
      throw std::invalid_argument("coefficient " + c.get_str() + " is undefined modulo " + std::to_string(p));
    Term t{f.from_rational(c).residue_value(), {}};
    for (const auto& [v, e] : m) {
      auto it = std::find(order.begin(), order.end(), v);
      if (it == order.end()) throw std::invalid_argument("unbound parameter '" + v + "'");
      t.factors.emplace_back(static_cast<std::size_t>(it - order.begin()), e);
    }
    terms_.push_back(std::move(t));
  }
}

std::uint32_t CompiledPolynomial::operator()(const std::vector<std::uint32_t>& values) const {
  std::uint64_t total = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.coef;
    for (const auto& [i, e] : t.factors)
      for (int k = 0; k < e; ++k) v = v * values[i] % p_;
    total = (total + v) % p_;
  }
  return static_cast<std::uint32_t>(total);
}

}  // namespace affleib
