#include "support.hpp"

#include <doctest.h>

using namespace affleib;
using testing::rand_mat;
using testing::rand_scalar;
using testing::rand_vec;

TEST_CASE("field construction and characteristic") {
  CHECK(FieldSpec::rationals().characteristic() == 0);
  CHECK(FieldSpec::prime(7).characteristic() == 7);
  CHECK_THROWS_AS(FieldSpec::prime(9), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
}

TEST_CASE("rationals are kept in lowest terms") {
  auto Q = FieldSpec::rationals();
  Scalar x = Q.from_rational(mpq_class(6, -4));
  CHECK(x.to_string() == "-3/2");
  CHECK(x.rational_value().get_den() == 2);
  CHECK((x * Q.from_int(2)).to_string() == "-3");
}

TEST_CASE("residues are canonical") {
  auto F = FieldSpec::prime(5);
  CHECK(F.from_int(-1).residue_value() == 4);
  CHECK(F.from_int(12).residue_value() == 2);
  CHECK(F.from_rational(mpq_class(1, 2)).residue_value() == 3);
  CHECK_THROWS_AS(F.from_rational(mpq_class(1, 5)), std::domain_error);
  CHECK_THROWS_AS(F.zero().inverse(), std::domain_error);
}

TEST_CASE("mixing fields is an error") {
  auto F = FieldSpec::prime(5);
  auto G = FieldSpec::prime(7);
  CHECK_THROWS(F.one() + G.one());
  CHECK_THROWS(F.one() + FieldSpec::rationals().one());
}

TEST_CASE("property: field axioms") {
  std::mt19937 g(11);
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(5), FieldSpec::prime(101)}) {
    for (int it = 0; it < 200; ++it) {
      Scalar a = rand_scalar(g, f), b = rand_scalar(g, f), c = rand_scalar(g, f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == f.zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
    }
  }
}

TEST_CASE("property: residue arithmetic matches integer arithmetic mod p") {
  std::mt19937 g(12);
  for (std::uint32_t p : {2u, 3u, 7u, 65521u}) {
    auto f = FieldSpec::prime(p);
    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
    for (int it = 0; it < 200; ++it) {
      std::uint64_t x = d(g), y = d(g);
      CHECK((f.element(x) + f.element(y)).residue_value() == (x + y) % p);
      CHECK((f.element(x) * f.element(y)).residue_value() == (x * y) % p);
      CHECK((f.element(x) - f.element(y)).residue_value() == (x + p - y) % p);
    }
  }
}

TEST_CASE("matrix shape errors are reported") {
  auto Q = FieldSpec::rationals();
  Mat a(Q, 2, 3);
  Vec v(Q, 2);
  CHECK_THROWS_AS(a * v, std::invalid_argument);
  CHECK_THROWS_AS(a * a, std::invalid_argument);
  CHECK_THROWS_AS(Vec(Q, 2) + Vec(Q, 3), std::invalid_argument);
}

TEST_CASE("solve_linear: identity and zero systems") {
  auto Q = FieldSpec::rationals();
  auto s = solve_linear(Mat::identity(Q, 2), Vec::from_ints(Q, {1, 2}));
  REQUIRE(s);
  CHECK(s->particular == Vec::from_ints(Q, {1, 2}));
  CHECK(s->kernel.dim() == 0);
  auto z = solve_linear(Mat::zero(Q, 2, 2), Vec(Q, 2));
  REQUIRE(z);
  CHECK(z->particular.is_zero());
  CHECK(z->kernel.dim() == 2);
  CHECK_FALSE(solve_linear(Mat::zero(Q, 2, 2), Vec::from_ints(Q, {1, 0})));
  CHECK_THROWS_AS(solve_linear(Mat::zero(Q, 2, 2), Vec(Q, 3)), std::invalid_argument);
}

TEST_CASE("solve_linear over F_3 matches a scan of all vectors") {
  auto F = FieldSpec::prime(3);
  Mat A = Mat::from_rows(F, {{1, 1}, {2, 2}});
  Vec b = Vec::from_ints(F, {1, 2});
  auto s = solve_linear(A, b);
  REQUIRE(s);
  CHECK(s->kernel.dim() == 1);
  std::size_t count = 0;
  for (const Vec& x : all_vectors(F, 2)) {
    bool solves = A * x == b;
    if (solves) ++count;
    bool in_affine = s->kernel.contains(x - s->particular);
    CHECK(solves == in_affine);
  }
  CHECK(count == 3);
}

TEST_CASE("property: solve_linear results check out") {
  std::mt19937 g(13);
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::prime(7)}) {
    for (int it = 0; it < 100; ++it) {
      std::size_t r = 1 + g() % 4, c = 1 + g() % 4;
      Mat A = rand_mat(g, f, r, c);
      if (it % 3 == 0)
        for (std::size_t j = 0; j < c; ++j) A(r - 1, j) = A(0, j);
      Vec x0 = rand_vec(g, f, c);
      Vec b = A * x0;
      auto s = solve_linear(A, b);
      REQUIRE(s);
      CHECK(A * s->particular == b);
      for (const Vec& k : s->kernel.basis()) CHECK((A * k).is_zero());
      CHECK(s->kernel.dim() + A.rank() == c);
      CHECK(s->kernel.contains(x0 - s->particular));
      auto again = solve_linear(A, b);
      CHECK(again->particular == s->particular);
      CHECK(again->kernel == s->kernel);
    }
  }
}

TEST_CASE("inverse and rank") {
  auto Q = FieldSpec::rationals();
  Mat m = Mat::from_rows(Q, {{2, 1}, {1, 1}});
  auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(m * *inv == Mat::identity(Q, 2));
  CHECK_FALSE(Mat::from_rows(Q, {{1, 2}, {2, 4}}).inverse());
  CHECK(Mat::from_rows(Q, {{1, 2}, {2, 4}}).rank() == 1);
}

TEST_CASE("subspaces are canonical") {
  auto Q = FieldSpec::rationals();
  auto a = Subspace::span(Q, 3, {Vec::from_ints(Q, {1, 1, 0}), Vec::from_ints(Q, {0, 1, 1})});
  auto b = Subspace::span(Q, 3, {Vec::from_ints(Q, {1, 0, -1}), Vec::from_ints(Q, {2, 3, 1})});
  CHECK(a == b);
  CHECK(a.contains(Vec::from_ints(Q, {1, 2, 1})));
  CHECK_FALSE(a.contains(Vec::from_ints(Q, {1, 0, 0})));
  auto co = a.coordinates(Vec::from_ints(Q, {3, 5, 2}));
  REQUIRE(co);
  CHECK(a.combine(*co) == Vec::from_ints(Q, {3, 5, 2}));
}

TEST_CASE("grid_vanishes: simple cases") {
  auto Q = FieldSpec::rationals();
  GridEvaluator zero = [](std::span<const Vec> a) { return a[0] - a[0]; };
  CHECK(grid_vanishes(zero, 1, Q, 3, 1));
  GridEvaluator sq = [&](std::span<const Vec> a) { return Vec(Q, {a[0][0] * a[0][0]}); };
  CHECK_FALSE(grid_vanishes(sq, 2, Q, 1, 1));
}

TEST_CASE("grid_vanishes: non-Leibniz bilinear part over F_3 matches exhaustive evaluation") {
  std::mt19937 g(14);
  auto F = FieldSpec::prime(3);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (int it = 0; it < 6; ++it) {
      Tensor3 B = testing::rand_tensor(g, F, n);
      BiAffineBracket K(F, n, B, rand_mat(g, F, n, n), rand_mat(g, F, n, n), rand_vec(g, F, n));
      Vec o(F, n);
      GridEvaluator lin = [&](std::span<const Vec> v) { return linearized_leibnizian(K, o, v[0], v[1], v[2]) - o; };
      bool exhaustive = true;
      auto pts = all_vectors(F, n);
      for (const auto& a : pts)
        for (const auto& b : pts)
          for (const auto& c : pts)
            if (!(linearized_leibnizian(K, o, a, b, c) == o)) exhaustive = false;
      std::vector<int> deg{1, 1, 1};
      CHECK(grid_vanishes(lin, deg, F, n) == exhaustive);
      CHECK(exhaustive == is_leibniz(B));
    }
  }
}

TEST_CASE("property: grid_vanishes agrees with exhaustive evaluation on small fields") {
  std::mt19937 g(15);
  for (std::uint32_t p : {2u, 3u}) {
    auto F = FieldSpec::prime(p);
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t k = 1; k <= 3; ++k)
        for (int it = 0; it < 8; ++it) {
          // Random sum of products of coordinates, at most cubic per coordinate;
          // half of the trials subtract the same polynomial to get zero.
          struct Term {
            Scalar c;
            std::vector<std::pair<std::size_t, int>> f;  // (flat coordinate, exponent)
          };
          std::vector<Term> terms;
          for (int t = 0; t < 4; ++t) {
            Term term{rand_scalar(g, F), {}};
            for (int m = 0; m < 2; ++m) term.f.push_back({g() % (n * k), static_cast<int>(g() % 4)});
            terms.push_back(term);
          }
          bool cancel = g() % 2;
          GridEvaluator fn = [&](std::span<const Vec> a) {
            Scalar acc = F.zero();
            for (const auto& term : terms) {
              Scalar v = term.c;
              for (auto [idx, e] : term.f)
                for (int r = 0; r < e; ++r) v *= a[idx / n][idx % n];
              acc += v;
            }
            if (cancel) acc -= acc;
            return Vec(F, {acc});
          };
          bool exhaustive = true;
          auto pts = all_vectors(F, n);
          std::vector<std::size_t> idx(k, 0);
          for (;;) {
            std::vector<Vec> args;
            for (auto i : idx) args.push_back(pts[i]);
            if (!fn(args).is_zero()) exhaustive = false;
            std::size_t pos = 0;
            while (pos < k && ++idx[pos] == pts.size()) idx[pos++] = 0;
            if (pos == k) break;
          }
          CHECK(grid_vanishes(fn, 6, F, n, k) == exhaustive);
        }
  }
}
