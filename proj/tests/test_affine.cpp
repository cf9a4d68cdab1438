#include "affleib/affine.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace affleib;
using testing::rand_scalar;
using testing::rand_vec;

TEST_CASE("heap operation") {
  auto Q = FieldSpec::rationals();
  std::mt19937 g(31);
  Vec a = rand_vec(g, Q, 3), b = rand_vec(g, Q, 3);
  CHECK(heap(a, b, b) == a);
  CHECK(heap(a, a, b) == b);
  CHECK(heap(Vec::from_ints(Q, {1, 0}), Vec::from_ints(Q, {0, 1}), Vec::from_ints(Q, {2, 2})) ==
        Vec::from_ints(Q, {3, 1}));
}

TEST_CASE("scalar action") {
  auto Q = FieldSpec::rationals();
  std::mt19937 g(32);
  Vec a = rand_vec(g, Q, 2), b = rand_vec(g, Q, 2);
  Scalar alpha = rand_scalar(g, Q);
  CHECK(act(Q.zero(), a, b) == a);
  CHECK(act(Q.one(), a, b) == b);
  CHECK(act(alpha, a, a) == a);
}

TEST_CASE("translation") {
  auto Q = FieldSpec::rationals();
  std::mt19937 g(33);
  Vec o = rand_vec(g, Q, 2), u = rand_vec(g, Q, 2), a = rand_vec(g, Q, 2);
  CHECK(translate(o, o, a) == a);
  CHECK(translate(o, u, o) == u);
  CHECK(translate(Vec::from_ints(Q, {1, 1}), Vec::from_ints(Q, {0, 0}), Vec::from_ints(Q, {2, 3})) ==
        Vec::from_ints(Q, {1, 2}));
}

TEST_CASE("property: heap and action axioms") {
  std::mt19937 g(34);
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(5)}) {
    for (int it = 0; it < 100; ++it) {
      std::size_t n = 1 + it % 3;
      Vec a = rand_vec(g, f, n), b = rand_vec(g, f, n), c = rand_vec(g, f, n), d = rand_vec(g, f, n),
          e = rand_vec(g, f, n);
      Scalar alpha = rand_scalar(g, f), beta = rand_scalar(g, f);
      CHECK(heap(heap(a, b, c), d, e) == heap(a, b, heap(c, d, e)));
      CHECK(heap(a, b, c) == heap(c, b, a));
      // base change
      CHECK(act(alpha, a, b) == heap(act(alpha, c, b), act(alpha, c, a), a));
      // heap morphism in the scalar slot and in the point slot
      CHECK(act(alpha - beta + f.one(), a, b) == heap(act(alpha, a, b), act(beta, a, b), act(f.one(), a, b)));
      CHECK(act(alpha, a, heap(b, c, d)) == heap(act(alpha, a, b), act(alpha, a, c), act(alpha, a, d)));
      CHECK(act(alpha, a, act(beta, a, b)) == act(alpha * beta, a, b));
      Vec o = rand_vec(g, f, n), u = rand_vec(g, f, n);
      CHECK(translate(u, o, translate(o, u, a)) == a);
    }
  }
}

TEST_CASE("dimension mismatch is an error") {
  auto Q = FieldSpec::rationals();
  CHECK_THROWS_AS(heap(Vec(Q, 2), Vec(Q, 3), Vec(Q, 2)), std::invalid_argument);
}
