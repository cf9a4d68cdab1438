#include "affleib/classify.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace affleib;

namespace {

// Filters every datum over the fibre with a direct predicate.
template <class Pred>
std::vector<std::uint64_t> brute_force(const LeibnizAlgebra& L, Pred pred) {
  const auto& f = L.field();
  std::size_t n = L.dim(), m = 2 * n * n + n;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= f.modulus();
  std::vector<std::uint64_t> out;
  for (std::uint64_t key = 0; key < total; ++key)
    if (pred(datum_from_key(L, key))) out.push_back(datum_key(datum_from_key(L, key)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> merged(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

TEST_CASE("sweeps agree with brute force on small fibres") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto f = FieldSpec::prime(p);
    auto L = algebra("L1(1)", f);
    auto hom = sweep(L, SweepType::Homogeneous);
    CHECK(hom.solutions == brute_force(L, [](const BiAffineBracket& K) { return is_homogeneous(K); }));
    auto lie = sweep(L, SweepType::LieType);
    CHECK(lie.solutions == brute_force(L, [](const BiAffineBracket& K) { return is_lie_type(K); }));
    auto gen = sweep(L, SweepType::General);
    CHECK(gen.solutions.size() == static_cast<std::size_t>(p) * p * p);
  }
  auto F3 = FieldSpec::prime(3);
  auto L2 = algebra("L2", F3);
  CHECK(sweep(L2, SweepType::Homogeneous).solutions ==
        brute_force(L2, [](const BiAffineBracket& K) { return is_homogeneous(K); }));
  auto L3 = algebra("L3", FieldSpec::prime(2));
  CHECK(sweep(L3, SweepType::LieType).solutions ==
        brute_force(L3, [](const BiAffineBracket& K) { return is_lie_type(K); }));
}

TEST_CASE("homogeneous sweeps against the catalog families") {
  auto F5 = FieldSpec::prime(5);
  auto l2 = sweep(algebra("L2", F5), SweepType::Homogeneous);
  CHECK(l2.solutions.size() == 125);
  CHECK(l2.solutions == enumerate_family(family("L2_homogeneous"), F5));
  auto l3 = sweep(algebra("L3", F5), SweepType::Homogeneous);
  CHECK(l3.solutions.size() == 625);
  CHECK(l3.solutions == enumerate_family(family("L3_homogeneous"), F5));
  // The L4 family is a proper subset of the homogeneous data: the sweep
  // also finds the branch mu4 = 1 - lambda4 != 0.
  auto l4 = sweep(algebra("L4", F5), SweepType::Homogeneous);
  auto fam = enumerate_family(family("L4_homogeneous"), F5);
  CHECK(fam.size() == 625);
  CHECK(l4.solutions.size() == 1125);
  CHECK(std::includes(l4.solutions.begin(), l4.solutions.end(), fam.begin(), fam.end()));
  auto L4 = algebra("L4", F5);
  for (auto key : l4.solutions) {
    if (std::binary_search(fam.begin(), fam.end(), key)) continue;
    auto K = datum_from_key(L4, key);
    CHECK(K.mu()(1, 1) == F5.one() - K.lambda()(1, 1));
    CHECK_FALSE(K.mu()(1, 1).is_zero());
  }
}

TEST_CASE("Lie-type sweeps") {
  auto F3 = FieldSpec::prime(3);
  auto l4 = sweep(algebra("L4", F3), SweepType::LieType);
  CHECK(l4.candidates == 2187);
  CHECK(l4.solutions.size() == 162);
  CHECK(l4.solutions == merged(enumerate_family(family("L4_lietype_F1"), F3),
                               enumerate_family(family("L4_lietype_F2"), F3)));
  auto l3 = sweep(algebra("L3", F3), SweepType::LieType);
  CHECK(l3.candidates == 729);
  CHECK(l3.solutions.empty());
  CHECK(sweep(algebra("L3", FieldSpec::prime(5)), SweepType::LieType).solutions.empty());
}

TEST_CASE("sweeps are independent of the job count") {
  auto F5 = FieldSpec::prime(5);
  auto L = algebra("L4", F5);
  auto one = sweep(L, SweepType::Homogeneous, {1});
  for (unsigned j : {2u, 3u, 8u}) {
    auto many = sweep(L, SweepType::Homogeneous, {j});
    CHECK(many.solutions == one.solutions);
    CHECK(many.candidates == one.candidates);
  }
  auto F3 = FieldSpec::prime(3);
  CHECK(sweep(algebra("L4", F3), SweepType::LieType, {5}).solutions ==
        sweep(algebra("L4", F3), SweepType::LieType, {1}).solutions);
}

TEST_CASE("orbits partition the solution set") {
  auto F3 = FieldSpec::prime(3);
  auto L = algebra("L4", F3);
  auto res = sweep(L, SweepType::LieType);
  auto orbs = orbits(L, res.solutions);
  CHECK(orbs.size() == 12);
  std::uint64_t total = 0;
  for (const auto& o : orbs) {
    total += o.size;
    // Representatives are the least key of their orbit.
    auto K = datum_from_key(L, o.representative);
    for (const auto& psi : automorphisms(L))
      for (const auto& q : all_vectors(F3, 2)) CHECK(datum_key(apply_iso(K, psi, q)) >= o.representative);
  }
  CHECK(total == res.solutions.size());
  std::vector<std::uint64_t> partial(res.solutions.begin(), res.solutions.begin() + 1);
  CHECK_THROWS_AS(orbits(L, partial), std::logic_error);
  CHECK_THROWS_AS(orbits(L, res.solutions, 10), std::invalid_argument);
}

TEST_CASE("sweep argument errors") {
  CHECK_THROWS_AS(sweep(algebra("L2", FieldSpec::rationals()), SweepType::Homogeneous), std::invalid_argument);
  CHECK_THROWS_AS(sweep(algebra("L7", FieldSpec::prime(5)), SweepType::General, {1, 1000}), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_type("lie-ish"), std::invalid_argument);
  CHECK(parse_sweep_type("lie-type") == SweepType::LieType);
  CHECK(to_string(parse_sweep_type("homogeneous")) == "homogeneous");
}

TEST_CASE("linear kernels contain every solution") {
  auto F5 = FieldSpec::prime(5);
  for (const char* name : {"L2", "L3", "L4"}) {
    auto L = algebra(name, F5);
    for (auto t : {SweepType::Homogeneous, SweepType::LieType}) {
      auto ker = linear_condition_kernel(L, t);
      auto res = sweep(L, t);
      for (std::size_t i = 0; i < res.solutions.size(); i += 7) {
        auto K = datum_from_key(L, res.solutions[i]);
        std::vector<Scalar> x;
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t c = 0; c < 2; ++c) x.push_back(K.lambda()(r, c));
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t c = 0; c < 2; ++c) x.push_back(K.mu()(r, c));
        CHECK(ker.contains(Vec(F5, x)));
      }
    }
  }
}

TEST_CASE("Lie-type data with affine Jacobi need not be antisymmetric") {
  for (std::uint32_t p : {2u, 3u}) {
    auto F = FieldSpec::prime(p);
    auto L = algebra("L4", F);
    int jacobi = 0;
    for (auto key : sweep(L, SweepType::LieType).solutions) {
      auto K = datum_from_key(L, key);
      CHECK_FALSE(is_affine_antisymmetric(K));
      jacobi += satisfies_affine_jacobi(K);
    }
    CHECK(jacobi == (p == 2 ? 16 : 81));
  }
}
