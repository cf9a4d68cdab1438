#include "affleib/classify.hpp"

#include "affleib/morphism.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace affleib {

std::string to_string(SweepType t) {
  switch (t) {
    case SweepType::General: return "general";
    case SweepType::Homogeneous: return "homogeneous";
    case SweepType::LieType: return "lie";
  }
  return "?";
}

SweepType parse_sweep_type(const std::string& s) {
  if (s == "general") return SweepType::General;
  if (s == "homogeneous") return SweepType::Homogeneous;
  if (s == "lie" || s == "lie-type") return SweepType::LieType;
  throw std::invalid_argument("unknown sweep type '" + s + "'");
}

namespace {

std::vector<Identity> linear_identities(const BiAffineBracket& K, SweepType t) {
  std::vector<Identity> out;
  if (t == SweepType::Homogeneous) {
    for (auto& id : homogeneous_identities(K))
      if (id.label != "homogeneous.s_mu") out.push_back(std::move(id));
  } else if (t == SweepType::LieType) {
    for (auto& id : lie_type_identities(K))
      if (id.label == "lie_type.ac") out.push_back(std::move(id));
  }
  return out;
}

// Both linear systems are bilinear in their arguments, so basis pairs suffice.
Vec linear_defects(const BiAffineBracket& K, SweepType t) {
  const auto& f = K.field();
  std::size_t n = K.dim();
  std::vector<Scalar> out;
  for (const auto& id : linear_identities(K, t))
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vec> args{Vec::unit(f, n, i), Vec::unit(f, n, j)};
        Vec d = id.defect(args);
        out.insert(out.end(), d.begin(), d.end());
      }
  return Vec(f, std::move(out));
}

std::pair<Mat, Mat> split(const FieldSpec& f, std::size_t n, const Vec& x) {
  Mat lam(f, n, n), mu(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      lam(i, j) = x[i * n + j];
      mu(i, j) = x[n * n + i * n + j];
    }
  return {lam, mu};
}

std::uint64_t ipow(std::uint64_t b, std::size_t e, std::uint64_t cap) {
  long double r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  if (r > static_cast<long double>(cap)) return cap + 1;
  return static_cast<std::uint64_t>(r);
}

Vec combination(const FieldSpec& f, const std::vector<Vec>& basis, std::size_t len, std::uint64_t idx) {
  std::uint32_t p = f.modulus();
  Vec x(f, len);
  for (std::size_t i = basis.size(); i-- > 0;) {
    std::uint32_t d = static_cast<std::uint32_t>(idx % p);
    idx /= p;
    if (d) x += f.element(d) * basis[i];
  }
  return x;
}

}  // namespace

Subspace linear_condition_kernel(const LeibnizAlgebra& L, SweepType t) {
  const auto& f = L.field();
  std::size_t n = L.dim(), m = 2 * n * n;
  if (t == SweepType::General) return Subspace::full(f, m);
  std::vector<Vec> cols;
  for (std::size_t u = 0; u < m; ++u) {
    auto [lam, mu] = split(f, n, Vec::unit(f, m, u));
    BiAffineBracket K = BiAffineBracket::from_algebra(L, lam, mu, Vec(f, n));
    cols.push_back(linear_defects(K, t));
  }
  Mat A = Mat::from_columns(f, cols[0].size(), cols);
  auto sol = solve_linear(A, Vec(f, A.rows()));
  return sol->kernel;
}

SweepResult sweep(const LeibnizAlgebra& L, SweepType t, const SweepOptions& opt) {
  const auto& f = L.field();
  if (!f.is_prime_field()) throw std::invalid_argument("sweeps require a prime field");
  std::size_t n = L.dim();
  std::uint32_t p = f.modulus();
  if (!key_fits(p, n)) throw std::invalid_argument("datum keys would overflow 64 bits for this field and dimension");

  Subspace ker = linear_condition_kernel(L, t);
  std::uint64_t points = ipow(p, ker.dim(), opt.cap);
  std::uint64_t per_point = t == SweepType::Homogeneous ? 1 : ipow(p, n, opt.cap);
  long double total = static_cast<long double>(points) * per_point;
  if (points > opt.cap || total > static_cast<long double>(opt.cap))
    throw std::invalid_argument("sweep needs more than " + std::to_string(opt.cap) +
                                " candidates; raise the cap to run it");

  // Homogeneous constant term: [s, e_j] = (mu^2 + lambda mu - mu) e_j.
  Mat As(f, n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) As(j * n + k, i) = L.basis_bracket(i, j)[k];

  std::vector<Vec> svecs = all_vectors(f, n);
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::min<std::uint64_t>(points, 1024))));
  std::vector<std::vector<std::uint64_t>> found(jobs);
  auto work = [&](unsigned w) {
    std::uint64_t lo = points * w / jobs, hi = points * (w + 1) / jobs;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      auto [lam, mu] = split(f, n, combination(f, ker.basis(), 2 * n * n, idx));
      if (t == SweepType::Homogeneous) {
        Mat rhs_m = mu * mu + lam * mu - mu;
        Vec rhs(f, n * n);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) rhs[j * n + k] = rhs_m(k, j);
        auto sol = solve_linear(As, rhs);
        if (!sol) continue;
        std::uint64_t count = ipow(p, sol->kernel.dim(), ~0ull);
        for (std::uint64_t c = 0; c < count; ++c) {
          Vec s = sol->particular + combination(f, sol->kernel.basis(), n, c);
          found[w].push_back(datum_key(BiAffineBracket::from_algebra(L, lam, mu, s)));
        }
        continue;
      }
      for (const Vec& s : svecs) {
        BiAffineBracket K = BiAffineBracket::from_algebra(L, lam, mu, s);
        bool ok;
        if (t == SweepType::LieType) {
          ok = check_identities(lie_type_identities(K), f, n, {}, true).all();
        } else {
          ok = is_affine_leibniz(K) && check_general_conditions(K).all() && linearization_vanishes(K, Vec(f, n));
        }
        if (ok) found[w].push_back(datum_key(K));
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  SweepResult res;
  res.candidates = static_cast<std::uint64_t>(total);
  for (auto& part : found) res.solutions.insert(res.solutions.end(), part.begin(), part.end());
  std::sort(res.solutions.begin(), res.solutions.end());
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()), res.solutions.end());
  return res;
}

std::vector<Orbit> orbits(const LeibnizAlgebra& L, const std::vector<std::uint64_t>& solutions, std::uint64_t cap) {
  const auto& f = L.field();
  std::vector<Mat> auts = automorphisms(L);
  std::vector<Vec> qs = all_vectors(f, L.dim());
  long double work = static_cast<long double>(solutions.size()) * auts.size() * qs.size();
  if (work > static_cast<long double>(cap))
    throw std::invalid_argument("orbit computation needs more than " + std::to_string(cap) + " group applications");
  std::unordered_set<std::uint64_t> in_set(solutions.begin(), solutions.end()), seen;
  std::vector<Orbit> out;
  for (std::uint64_t key : solutions) {
    if (seen.count(key)) continue;
    BiAffineBracket K = datum_from_key(L, key);
    std::unordered_set<std::uint64_t> orbit;
    for (const Mat& psi : auts)
      for (const Vec& q : qs) {
        std::uint64_t k2 = datum_key(apply_iso(K, psi, q));
        if (!in_set.count(k2)) throw std::logic_error("solution set is not closed under affine automorphisms");
        orbit.insert(k2);
      }
    seen.insert(orbit.begin(), orbit.end());
    out.push_back({key, orbit.size()});
  }
  return out;
}

}  // namespace affleib
