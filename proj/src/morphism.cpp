#include "affleib/morphism.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace affleib {

namespace {

void check_pair(const BiAffineBracket& K, const BiAffineBracket& Kp) {
  if (K.field() != Kp.field()) throw std::invalid_argument("affgebra data over different fields");
}

bool transports_bilinear(const BiAffineBracket& K, const BiAffineBracket& Kp, const Mat& psi) {
  std::size_t n = K.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei = Vec::unit(K.field(), n, i), ej = Vec::unit(K.field(), n, j);
      if (!(psi * K.B()[i][j] == Kp.bilinear_part(psi * ei, psi * ej))) return false;
    }
  return true;
}

// Matrix of x -> B(x, q) (right) or x -> B(q, x) (left).
Mat right_mult(const BiAffineBracket& K, const Vec& q) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < K.dim(); ++i) cols.push_back(K.bilinear_part(Vec::unit(K.field(), K.dim(), i), q));
  return Mat::from_columns(K.field(), K.dim(), cols);
}

Mat left_mult(const BiAffineBracket& K, const Vec& q) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < K.dim(); ++i) cols.push_back(K.bilinear_part(q, Vec::unit(K.field(), K.dim(), i)));
  return Mat::from_columns(K.field(), K.dim(), cols);
}

Mat matrix_from_index(const FieldSpec& f, std::size_t n, std::uint64_t idx) {
  std::uint32_t p = f.modulus();
  Mat m(f, n, n);
  for (std::size_t k = n * n; k-- > 0;) {
    m(k / n, k % n) = f.element(static_cast<std::uint32_t>(idx % p));
    idx /= p;
  }
  return m;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ConditionReport hom_conditions(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi) {
  check_pair(K, Kp);
  const Mat& psi = phi.matrix;
  const Vec& qp = phi.offset;
  if (psi.rows() != Kp.dim() || psi.cols() != K.dim() || qp.size() != Kp.dim())
    throw std::invalid_argument("affine map has the wrong shape for these data");
  ConditionReport rep;
  rep.items.push_back({"hom.leibniz_morphism", transports_bilinear(K, Kp, psi), std::nullopt});
  Vec rhs_s = Kp.s() + (Kp.lambda() + Kp.mu()) * qp + Kp.bilinear_part(qp, qp) - qp;
  rep.items.push_back({"hom.s", psi * K.s() == rhs_s, std::nullopt});
  rep.items.push_back({"hom.mu", psi * K.mu() == left_mult(Kp, qp) * psi + Kp.mu() * psi, std::nullopt});
  rep.items.push_back({"hom.lambda", psi * K.lambda() == right_mult(Kp, qp) * psi + Kp.lambda() * psi, std::nullopt});
  return rep;
}

bool preserves_bracket(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi,
                       const CheckOptions& opt) {
  std::vector<int> deg{1, 1};
  return grid_vanishes([&](std::span<const Vec> v) { return phi(K(v[0], v[1])) - Kp(phi(v[0]), phi(v[1])); },
                       deg, K.field(), K.dim(), opt.shape);
}

bool is_affgebra_hom(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi) {
  bool by_conditions = hom_conditions(K, Kp, phi).all();
  bool direct = preserves_bracket(K, Kp, phi);
  if (by_conditions != direct)
    throw std::logic_error("homomorphism conditions disagree with direct bracket preservation");
  return by_conditions;
}

ConditionReport iso_conditions(const BiAffineBracket& K, const BiAffineBracket& Kp, const Mat& psi, const Vec& q) {
  check_pair(K, Kp);
  if (K.dim() != Kp.dim() || psi.rows() != K.dim() || psi.cols() != K.dim() || q.size() != K.dim())
    throw std::invalid_argument("isomorphism data have the wrong shape");
  ConditionReport rep;
  auto inv = psi.inverse();
  if (!inv) {
    for (const char* l : {"iso.leibniz_isomorphism", "iso.s", "iso.mu", "iso.lambda"})
      rep.items.push_back({l, false, std::nullopt});
    return rep;
  }
  rep.items.push_back({"iso.leibniz_isomorphism", transports_bilinear(K, Kp, psi), std::nullopt});
  Vec s = psi * (K.s() - (K.lambda() + K.mu()) * q + K.bilinear_part(q, q) + q);
  rep.items.push_back({"iso.s", Kp.s() == s, std::nullopt});
  rep.items.push_back({"iso.mu", Kp.mu() == psi * (K.mu() - left_mult(K, q)) * *inv, std::nullopt});
  rep.items.push_back({"iso.lambda", Kp.lambda() == psi * (K.lambda() - right_mult(K, q)) * *inv, std::nullopt});
  return rep;
}

bool is_affgebra_iso(const BiAffineBracket& K, const BiAffineBracket& Kp, const Mat& psi, const Vec& q) {
  bool by_conditions = iso_conditions(K, Kp, psi, q).all();
  bool direct = false;
  if (psi.inverse()) direct = preserves_bracket(K, Kp, AffineMapData{psi, psi * q});
  if (by_conditions != direct)
    throw std::logic_error("isomorphism conditions disagree with direct bracket preservation");
  return by_conditions;
}

BiAffineBracket apply_iso(const BiAffineBracket& K, const Mat& psi, const Vec& q) {
  auto inv = psi.inverse();
  if (!inv) throw std::invalid_argument("apply_iso: psi is not invertible");
  const auto& f = K.field();
  std::size_t n = K.dim();
  Tensor3 B = zero_tensor(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      B[i][j] = psi * K.bilinear_part(inv->column(i), inv->column(j));
  Vec s = psi * (K.s() - (K.lambda() + K.mu()) * q + K.bilinear_part(q, q) + q);
  Mat mu = psi * (K.mu() - left_mult(K, q)) * *inv;
  Mat lambda = psi * (K.lambda() - right_mult(K, q)) * *inv;
  return BiAffineBracket(f, n, std::move(B), std::move(lambda), std::move(mu), std::move(s));
}

bool fibre_invariants_match(const LeibnizAlgebra& L, const LeibnizAlgebra& Lp) {
  return L.dim() == Lp.dim() && leib_ideal(L).dim() == leib_ideal(Lp).dim() &&
         left_center(L).dim() == left_center(Lp).dim() && right_center(L).dim() == right_center(Lp).dim() &&
         derived_subspace(L).dim() == derived_subspace(Lp).dim();
}

SearchResult search_iso(const BiAffineBracket& K, const BiAffineBracket& Kp, unsigned jobs) {
  check_pair(K, Kp);
  const auto& f = K.field();
  if (!f.is_prime_field()) throw std::invalid_argument("isomorphism search is only supported over prime fields");
  SearchResult res;
  if (K.dim() != Kp.dim()) return res;
  if (!fibre_invariants_match(K.fibre_algebra(), Kp.fibre_algebra())) return res;
  std::size_t n = K.dim();
  std::uint64_t total = ipow(f.modulus(), n * n);
  std::vector<Vec> qs = all_vectors(f, n);
  if (jobs == 0) jobs = 1;
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total));

  struct Part {
    std::optional<std::pair<std::uint64_t, std::size_t>> best;  // (psi index, q index)
    std::uint64_t checked = 0;
  };
  std::vector<Part> parts(jobs);
  auto work = [&](unsigned w) {
    std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
    Part& part = parts[w];
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      Mat psi = matrix_from_index(f, n, idx);
      auto inv = psi.inverse();
      if (!inv || !transports_bilinear(K, Kp, psi)) continue;
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        ++part.checked;
        const Vec& q = qs[qi];
        if (!(Kp.lambda() == psi * (K.lambda() - right_mult(K, q)) * *inv)) continue;
        if (!(Kp.mu() == psi * (K.mu() - left_mult(K, q)) * *inv)) continue;
        if (!(Kp.s() == psi * (K.s() - (K.lambda() + K.mu()) * q + K.bilinear_part(q, q) + q))) continue;
        part.best = {idx, qi};
        return;
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  // Partitions are ordered, so the first partition with a witness holds the
  // global minimum; count work as if the search had run sequentially.
  for (const auto& part : parts) {
    res.checked += part.checked;
    if (part.best) {
      res.found = true;
      res.witness = IsoWitness{matrix_from_index(f, n, part.best->first), qs[part.best->second]};
      break;
    }
  }
  if (res.found && !is_affgebra_iso(K, Kp, res.witness->psi, res.witness->q))
    throw std::logic_error("search_iso produced an invalid witness");
  return res;
}

std::vector<Mat> automorphisms(const LeibnizAlgebra& L) {
  const auto& f = L.field();
  if (!f.is_prime_field()) throw std::invalid_argument("automorphism enumeration requires a prime field");
  std::size_t n = L.dim();
  std::uint64_t total = ipow(f.modulus(), n * n);
  std::vector<Mat> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Mat psi = matrix_from_index(f, n, idx);
    if (psi.rank() == n && is_leibniz_morphism(L, L, psi)) out.push_back(std::move(psi));
  }
  return out;
}

// ------------------------------------------------------------ subaffgebras

ConditionReport subaffgebra_conditions(const BiAffineBracket& K, const Vec& a, const Subspace& H) {
  if (H.ambient_dim() != K.dim() || a.size() != K.dim()) throw std::invalid_argument("subspace has wrong ambient dimension");
  ConditionReport rep;
  bool closed = true;
  for (const Vec& x : H.basis())
    for (const Vec& y : H.basis()) closed = closed && H.contains(K.bilinear_part(x, y));
  rep.items.push_back({"sub.closed", closed, std::nullopt});
  Vec c = K.bilinear_part(a, a) - a + (K.lambda() + K.mu()) * a + K.s();
  rep.items.push_back({"sub.constant", H.contains(c), std::nullopt});
  Mat lam = K.lambda() + right_mult(K, a), mu = K.mu() + left_mult(K, a);
  bool lok = true, mok = true;
  for (const Vec& h : H.basis()) {
    lok = lok && H.contains(lam * h);
    mok = mok && H.contains(mu * h);
  }
  rep.items.push_back({"sub.lambda", lok, std::nullopt});
  rep.items.push_back({"sub.mu", mok, std::nullopt});
  return rep;
}

bool is_closed_affine_subspace(const BiAffineBracket& K, const Vec& a, const Subspace& H) {
  std::size_t k = H.dim();
  std::vector<int> deg{1, 1};
  return grid_vanishes(
      [&](std::span<const Vec> u) {
        Vec x = a + H.combine(u[0]), y = a + H.combine(u[1]);
        Vec r = H.reduce(K(x, y) - a);
        return r;
      },
      deg, K.field(), k, GridShape::Simplex);
}

bool is_subaffgebra(const BiAffineBracket& K, const Vec& a, const Subspace& H) {
  bool by_conditions = subaffgebra_conditions(K, a, H).all();
  bool direct = is_closed_affine_subspace(K, a, H);
  if (by_conditions != direct) throw std::logic_error("subaffgebra conditions disagree with direct closure test");
  return by_conditions;
}

BiAffineBracket induced_subaffgebra(const BiAffineBracket& K, const Vec& a, const Subspace& H) {
  if (!is_subaffgebra(K, a, H)) throw std::invalid_argument("induced_subaffgebra: a + H is not a subaffgebra");
  const auto& f = K.field();
  std::size_t k = H.dim();
  const auto& basis = H.basis();
  auto coords = [&](const Vec& v) { return *H.coordinates(v); };
  Tensor3 B = zero_tensor(f, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) B[i][j] = coords(K.bilinear_part(basis[i], basis[j]));
  Mat lam = K.lambda() + right_mult(K, a), mu = K.mu() + left_mult(K, a);
  Mat l(f, k, k), m(f, k, k);
  for (std::size_t j = 0; j < k; ++j) {
    Vec lc = coords(lam * basis[j]), mc = coords(mu * basis[j]);
    for (std::size_t i = 0; i < k; ++i) {
      l(i, j) = lc[i];
      m(i, j) = mc[i];
    }
  }
  Vec s = coords(K.bilinear_part(a, a) - a + (K.lambda() + K.mu()) * a + K.s());
  return BiAffineBracket(f, k, std::move(B), std::move(l), std::move(m), std::move(s));
}

bool shift_embedding_is_hom(const BiAffineBracket& K, const Vec& a, const Subspace& H,
                            const BiAffineBracket& induced) {
  std::vector<int> deg{1, 1};
  auto iota = [&](const Vec& u) { return a + H.combine(u); };
  return grid_vanishes(
      [&](std::span<const Vec> u) { return iota(induced(u[0], u[1])) - K(iota(u[0]), iota(u[1])); }, deg,
      K.field(), H.dim(), GridShape::Simplex);
}

// ------------------------------------------------------------ automorphism templates

Mat AutomorphismFamily::instantiate(const Bindings& b, const FieldSpec& f) const {
  for (const auto& p : nonzero) {
    auto it = b.find(p);
    if (it == b.end()) throw std::invalid_argument("unbound parameter '" + p + "'");
    if (it->second.is_zero()) throw std::invalid_argument("parameter '" + p + "' must be nonzero");
  }
  std::size_t n = matrix.size();
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = matrix[i][j].evaluate(b, f);
  return m;
}

std::vector<Mat> AutomorphismFamily::enumerate(const FieldSpec& f) const {
  if (!f.is_prime_field()) throw std::invalid_argument("family enumeration requires a prime field");
  std::uint32_t p = f.modulus();
  std::size_t k = params.size();
  std::uint64_t total = ipow(p, k);
  std::vector<std::pair<std::string, Mat>> found;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Bindings b;
    std::uint64_t r = idx;
    bool ok = true;
    for (std::size_t i = k; i-- > 0;) {
      b[params[i]] = f.element(static_cast<std::uint32_t>(r % p));
      r /= p;
    }
    for (const auto& z : nonzero) ok = ok && !b[z].is_zero();
    if (!ok) continue;
    Mat m = instantiate(b, f);
    found.emplace_back(std::string(), std::move(m));
  }
  // Sort by row-major digits and deduplicate.
  auto key = [&](const Mat& m) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v = v * p + m(i, j).residue_value();
    return v;
  };
  std::vector<std::pair<std::uint64_t, Mat>> keyed;
  for (auto& [s, m] : found) keyed.emplace_back(key(m), std::move(m));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Mat> out;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    if (i == 0 || keyed[i].first != keyed[i - 1].first) out.push_back(std::move(keyed[i].second));
  return out;
}

AutomorphismFamily automorphism_family(const std::string& name) {
  auto P = [](const char* s) { return Polynomial::parse(s); };
  if (name == "L2") return {"L2", {"theta", "delta"}, {"theta"}, {{P("theta"), P("delta")}, {P("0"), P("1")}}};
  if (name == "L3") return {"L3", {"theta"}, {"theta"}, {{P("theta"), P("0")}, {P("0"), P("1")}}};
  if (name == "L4")
    return {"L4", {"theta", "delta"}, {"theta"}, {{P("theta^2"), P("delta")}, {P("0"), P("theta")}}};
  throw std::invalid_argument("no automorphism template for '" + name + "'");
}

}  // namespace affleib
