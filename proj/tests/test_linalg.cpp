#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "basisdiv/linalg.hpp"

using namespace basisdiv;

namespace {

Vector vec(const FieldDescriptor& f, const std::vector<long long>& xs) {
  std::vector<Scalar> coords;
  for (long long x : xs) coords.push_back(Scalar::from_integer(f, x));
  return Vector(f, std::move(coords));
}

Vector random_vector(std::mt19937_64& rng, const FieldDescriptor& f, int n) {
  std::vector<Scalar> coords;
  for (int i = 0; i < n; ++i)
    coords.push_back(Scalar::from_integer(f, static_cast<long long>(rng() % 7) - 3));
  return Vector(f, std::move(coords));
}

}  // namespace

TEST_CASE("span canonicalizes") {
  FieldDescriptor Q = FieldDescriptor::rationals();

  Subspace empty = Subspace::span(Q, 3, {});
  CHECK(empty.rank() == 0);
  CHECK(empty == Subspace::zero(Q, 3));

  // scalar multiples collapse to one echelon row
  Subspace line = Subspace::span(Q, 2, {vec(Q, {2, 4}), vec(Q, {1, 2})});
  CHECK(line.rank() == 1);
  CHECK(line.rows()[0] == vec(Q, {1, 2}));
  CHECK(line.pivots() == std::vector<int>{0});

  FieldDescriptor F2 = FieldDescriptor::prime(2);
  Subspace full = Subspace::span(F2, 2, {vec(F2, {1, 0}), vec(F2, {1, 1})});
  CHECK(full.rank() == 2);
  CHECK(full == Subspace::full(F2, 2));
}

TEST_CASE("membership") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  Subspace S = Subspace::span(Q, 2, {vec(Q, {1, 0})});
  CHECK(S.contains(vec(Q, {1, 0})));
  CHECK(S.contains(vec(Q, {-7, 0})));
  CHECK_FALSE(S.contains(vec(Q, {0, 1})));
  CHECK_FALSE(S.contains(vec(Q, {1, 1})));
  CHECK(S.contains(Vector(Q, 2)));  // zero vector
}

TEST_CASE("span is idempotent and order-insensitive") {
  std::mt19937_64 rng(11);
  for (const FieldDescriptor& f :
       {FieldDescriptor::rationals(), FieldDescriptor::prime(3)}) {
    for (int t = 0; t < 100; ++t) {
      int n = 2 + static_cast<int>(rng() % 3);
      std::vector<Vector> vs;
      int count = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < count; ++i) vs.push_back(random_vector(rng, f, n));
      Subspace S = Subspace::span(f, n, vs);
      CHECK(Subspace::span(f, n, S.rows()) == S);
      std::vector<Vector> shuffled = vs;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(Subspace::span(f, n, shuffled) == S);
    }
  }
}

TEST_CASE("canonical equality ignores the spanning set") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  Subspace a = Subspace::span(Q, 3, {vec(Q, {1, 1, 0}), vec(Q, {0, 0, 1})});
  Subspace b = Subspace::span(Q, 3, {vec(Q, {2, 2, 2}), vec(Q, {1, 1, 3})});
  CHECK(a == b);
}

TEST_CASE("sum and intersection") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  Subspace x = Subspace::span(Q, 3, {vec(Q, {1, 0, 0})});
  Subspace y = Subspace::span(Q, 3, {vec(Q, {0, 1, 0})});
  Subspace xy = Subspace::span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})});
  CHECK(sum(x, y) == xy);
  CHECK(intersect(x, y).rank() == 0);
  CHECK(intersect(xy, x) == x);

  // two planes in Q^3 meet in a line
  Subspace p1 = Subspace::span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})});
  Subspace p2 = Subspace::span(Q, 3, {vec(Q, {0, 1, 0}), vec(Q, {0, 0, 1})});
  CHECK(intersect(p1, p2) == y);
}

TEST_CASE("intersection against random containment") {
  std::mt19937_64 rng(23);
  FieldDescriptor F3 = FieldDescriptor::prime(3);
  for (int t = 0; t < 100; ++t) {
    int n = 3;
    std::vector<Vector> va, vb;
    for (int i = 0; i < 2; ++i) va.push_back(random_vector(rng, F3, n));
    for (int i = 0; i < 2; ++i) vb.push_back(random_vector(rng, F3, n));
    Subspace A = Subspace::span(F3, n, va);
    Subspace B = Subspace::span(F3, n, vb);
    Subspace I = intersect(A, B);
    for (const Vector& r : I.rows()) {
      CHECK(A.contains(r));
      CHECK(B.contains(r));
    }
    CHECK(sum(A, B).rank() == A.rank() + B.rank() - I.rank());
  }
}

TEST_CASE("kernel solves the constraints") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  // x + y + z = 0 over Q^3: kernel has rank 2
  Subspace K = kernel(Q, 3, {vec(Q, {1, 1, 1})});
  CHECK(K.rank() == 2);
  for (const Vector& r : K.rows()) {
    Scalar s = r[0] + r[1] + r[2];
    CHECK(s.is_zero());
  }
  // no constraints: everything
  CHECK(kernel(Q, 3, {}).rank() == 3);
  // full-rank constraints: nothing
  Subspace Z = kernel(Q, 2, {vec(Q, {1, 0}), vec(Q, {1, 1})});
  CHECK(Z.rank() == 0);
}

TEST_CASE("matrix inverse round trips") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  std::vector<Vector> M = {vec(Q, {1, 2}), vec(Q, {3, 4})};
  std::vector<Vector> inv = invert_matrix(M);
  // M * inv = identity: row i of product is linear_combination(inv, M[i])
  for (int i = 0; i < 2; ++i) {
    Vector row = linear_combination(inv, M[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 2; ++j) CHECK(row[j] == Scalar::from_integer(Q, i == j ? 1 : 0));
  }
  CHECK_THROWS_AS(invert_matrix(std::vector<Vector>{vec(Q, {1, 2}), vec(Q, {2, 4})}),
                  Error);
}

TEST_CASE("dimension and field mismatches are rejected") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  FieldDescriptor F2 = FieldDescriptor::prime(2);
  CHECK_THROWS_AS(Subspace::span(Q, 2, {vec(Q, {1, 2, 3})}), Error);
  CHECK_THROWS_AS(Subspace::span(Q, 2, {vec(F2, {1, 1})}), Error);
  CHECK_THROWS_AS(vec(Q, {1, 0}) + vec(Q, {1, 0, 0}), Error);
  CHECK_THROWS_AS(vec(Q, {1, 0}) + vec(F2, {1, 0}), Error);
}
