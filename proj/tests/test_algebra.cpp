#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "basisdiv/algebra.hpp"
#include "basisdiv/oracle.hpp"
#include "helpers.hpp"

using namespace basisdiv;
using testutil::vec;

namespace {
const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F2 = FieldDescriptor::prime(2);
const FieldDescriptor F3 = FieldDescriptor::prime(3);
}  // namespace

TEST_CASE("presentation validation") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  CHECK(e1.dim() == 2);
  CHECK(e1.products().size() == 2);

  // result index out of range in a dim-2 algebra
  ProductTable bad;
  bad[{0, 0}].emplace(2, Scalar::one(Q));
  CHECK_THROWS_AS(AlgebraPresentation::make(Q, {"a", "b"}, bad), Error);

  // empty products map, dim 1: the valid zero algebra
  AlgebraPresentation z = AlgebraPresentation::make(Q, {"a"}, {});
  CHECK(z.is_zero_algebra());

  CHECK_THROWS_AS(AlgebraPresentation::make(Q, {"a", "a"}, {}), Error);
  CHECK_THROWS_AS(AlgebraPresentation::make(Q, {}, {}), Error);

  ProductTable wrong_field;
  wrong_field[{0, 0}].emplace(0, Scalar::one(F2));
  CHECK_THROWS_AS(AlgebraPresentation::make(Q, {"a", "b"}, wrong_field), Error);

  // explicitly stored zeros are normalized away
  ProductTable zeros;
  zeros[{0, 0}].emplace(0, Scalar::zero(Q));
  AlgebraPresentation norm = AlgebraPresentation::make(Q, {"a", "b"}, zeros);
  CHECK(norm.is_zero_algebra());
}

TEST_CASE("product") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  Vector b1 = e1.basis_vector(0), b2 = e1.basis_vector(1);

  CHECK(e1.product(b2, b2) == vec(Q, {1, 1}));
  CHECK(e1.product(b1, e1.zero_vector()).is_zero());
  CHECK(e1.product(e1.zero_vector(), b2).is_zero());
  // (b1+b2)^2 = 2 b1 + b2 over Q
  CHECK(e1.product(b1 + b2, b1 + b2) == vec(Q, {2, 1}));

  CHECK_THROWS_AS(e1.product(b1, vec(Q, {1, 2, 3})), Error);
  CHECK_THROWS_AS(e1.product(b1, vec(F2, {1, 0})), Error);
}

TEST_CASE("bilinearity on random samples") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    FuzzConfig cfg;
    cfg.field = trial % 2 == 0 ? F3 : Q;
    cfg.dim = 2 + static_cast<int>(rng() % 2);
    cfg.sparsity = 0.5;
    cfg.seed = rng();
    AlgebraPresentation A = random_algebra(cfg);
    auto rnd = [&]() {
      std::vector<Scalar> cs;
      for (int i = 0; i < A.dim(); ++i)
        cs.push_back(Scalar::from_integer(cfg.field, static_cast<long long>(rng() % 5) - 2));
      return Vector(cfg.field, cs);
    };
    Vector x = rnd(), y = rnd(), z = rnd();
    Scalar alpha = Scalar::from_integer(cfg.field, 2);
    Scalar beta = Scalar::from_integer(cfg.field, -1);
    CHECK(A.product(alpha * x + beta * y, z) ==
          alpha * A.product(x, z) + beta * A.product(y, z));
    CHECK(A.product(z, alpha * x + beta * y) ==
          alpha * A.product(z, x) + beta * A.product(z, y));
  }
}

TEST_CASE("annihilator") {
  // E1: x b1 = a b1, x b2 = b (b1 + b2) force a = b = 0
  CHECK(annihilator(testutil::e1_algebra(Q)).rank() == 0);
  CHECK(annihilator(testutil::d2_algebra(Q)).rank() == 0);
  CHECK(annihilator(testutil::zero_algebra(Q, 2)).rank() == 2);
  CHECK(annihilator(testutil::sl2_algebra(Q)).rank() == 0);

  // one-sided action: u annihilates nothing from the left it hits v, etc.
  CHECK(annihilator(testutil::w_algebra(F2)).rank() == 0);

  // a genuinely nonzero annihilator: c*c = c uses only the first coordinate
  AlgebraPresentation padded =
      testutil::make_algebra(Q, {"c", "n"}, {{0, 0, 0, 1}});
  Subspace ann = annihilator(padded);
  CHECK(ann.rank() == 1);
  CHECK(ann.contains(padded.basis_vector(1)));
}

TEST_CASE("annihilator rows really annihilate and form an ideal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    FuzzConfig cfg;
    cfg.field = F2;
    cfg.dim = 2 + static_cast<int>(rng() % 3);
    cfg.sparsity = 0.25;
    cfg.seed = rng();
    AlgebraPresentation A = random_algebra(cfg);
    Subspace ann = annihilator(A);
    CHECK(is_ideal(A, ann));
    for (const Vector& r : ann.rows())
      for (int j = 0; j < A.dim(); ++j) {
        CHECK(A.product(r, A.basis_vector(j)).is_zero());
        CHECK(A.product(A.basis_vector(j), r).is_zero());
      }
  }
}

TEST_CASE("ideal closure on the worked example") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  Vector b1 = e1.basis_vector(0), b2 = e1.basis_vector(1);

  // b1 b1 = b1, b1 b2 = b2 b1 = 0: already closed
  Subspace i1 = ideal_closure(e1, {b1});
  CHECK(i1 == Subspace::span(Q, 2, {b1}));

  CHECK(ideal_closure(e1, {e1.zero_vector()}).rank() == 0);
  CHECK(ideal_closure(e1, {}).rank() == 0);

  // b2 b2 = b1 + b2 adjoins b1 + b2, then (b1+b2) b1 = b1 adjoins b1
  Subspace i2 = ideal_closure(e1, {b2});
  CHECK(i2.rank() == 2);
  CHECK(i2.contains(b1 + b2));
}

TEST_CASE("ideal closure output is a minimal ideal containing the generators") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    FuzzConfig cfg;
    cfg.field = trial % 2 == 0 ? F2 : F3;
    cfg.dim = 2 + static_cast<int>(rng() % 2);
    cfg.sparsity = 0.35;
    cfg.seed = rng();
    AlgebraPresentation A = random_algebra(cfg);
    std::vector<Scalar> cs;
    for (int i = 0; i < A.dim(); ++i)
      cs.push_back(Scalar::from_integer(cfg.field, static_cast<long long>(rng() % 3)));
    Vector g(cfg.field, cs);
    Subspace I = ideal_closure(A, {g});
    CHECK(is_ideal(A, I));
    CHECK(I.contains(g));
  }
}

TEST_CASE("is_ideal") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  CHECK(is_ideal(e1, Subspace::span(Q, 2, {e1.basis_vector(0)})));
  CHECK_FALSE(is_ideal(e1, Subspace::span(Q, 2, {e1.basis_vector(1)})));
  CHECK(is_ideal(e1, Subspace::full(Q, 2)));
  CHECK(is_ideal(e1, Subspace::zero(Q, 2)));
}

TEST_CASE("product of subspaces") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  Subspace sb2 = Subspace::span(Q, 2, {e1.basis_vector(1)});
  CHECK(product_of_subspaces(e1, sb2, sb2) ==
        Subspace::span(Q, 2, {vec(Q, {1, 1})}));
  CHECK(product_of_subspaces(e1, sb2, Subspace::zero(Q, 2)).rank() == 0);

  AlgebraPresentation d2 = testutil::d2_algebra(Q);
  Subspace se1 = Subspace::span(Q, 2, {d2.basis_vector(0)});
  Subspace se2 = Subspace::span(Q, 2, {d2.basis_vector(1)});
  CHECK(product_of_subspaces(d2, se1, se2).rank() == 0);
}

TEST_CASE("subspace product contains sampled element products") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    FuzzConfig cfg;
    cfg.field = F3;
    cfg.dim = 3;
    cfg.sparsity = 0.3;
    cfg.seed = rng();
    AlgebraPresentation A = random_algebra(cfg);
    auto rnd = [&]() {
      std::vector<Scalar> cs;
      for (int i = 0; i < 3; ++i)
        cs.push_back(Scalar::from_integer(cfg.field, static_cast<long long>(rng() % 3)));
      return Vector(cfg.field, cs);
    };
    Subspace S = Subspace::span(cfg.field, 3, {rnd(), rnd()});
    Subspace T = Subspace::span(cfg.field, 3, {rnd()});
    Subspace P = product_of_subspaces(A, S, T);
    // u in S, v in T as random row combinations
    auto sample = [&](const Subspace& X) {
      Vector acc(cfg.field, 3);
      for (const Vector& r : X.rows())
        acc += Scalar::from_integer(cfg.field, static_cast<long long>(rng() % 3)) * r;
      return acc;
    };
    for (int k = 0; k < 5; ++k) CHECK(P.contains(A.product(sample(S), sample(T))));
  }
}

TEST_CASE("projection") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);
  Vector b2 = e1.basis_vector(1);
  Vector sq = e1.product(b2, b2);  // b1 + b2
  CHECK(projection(sq, {0}) == vec(Q, {1, 0}));  // coordinate at b1 is 1
  CHECK(projection(e1.zero_vector(), {0, 1}).is_zero());
  CHECK(projection(sq, {0, 1}) == sq);
  CHECK_THROWS_AS(projection(sq, {5}), Error);

  // coordinate decomposition: sum of single-index projections is the identity
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Vector x = vec(Q, {static_cast<long long>(rng() % 9) - 4,
                       static_cast<long long>(rng() % 9) - 4});
    Vector acc(Q, 2);
    for (int i = 0; i < 2; ++i) acc += projection(x, {i});
    CHECK(acc == x);
  }
}

TEST_CASE("change of basis on the worked example") {
  AlgebraPresentation e1 = testutil::e1_algebra(Q);

  // identity change leaves the presentation untouched
  std::vector<Vector> id = {e1.basis_vector(0), e1.basis_vector(1)};
  CHECK(change_of_basis(e1, id) == e1);

  // u1 = b1, u2 = b1 + b2
  std::vector<Vector> m = {vec(Q, {1, 0}), vec(Q, {1, 1})};
  AlgebraPresentation t = change_of_basis(e1, m);
  CHECK(t.basis_product(0, 0) == vec(Q, {1, 0}));  // u1 u1 = u1
  CHECK(t.basis_product(0, 1) == vec(Q, {1, 0}));  // u1 u2 = u1
  CHECK(t.basis_product(1, 0) == vec(Q, {1, 0}));  // u2 u1 = u1
  CHECK(t.basis_product(1, 1) == vec(Q, {1, 1}));  // u2 u2 = u1 + u2

  CHECK_THROWS_AS(change_of_basis(e1, {vec(Q, {1, 1}), vec(Q, {2, 2})}), Error);
}

TEST_CASE("change of basis round trips through the inverse") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    FuzzConfig cfg;
    cfg.field = F3;
    cfg.dim = 2 + static_cast<int>(rng() % 2);
    cfg.sparsity = 0.4;
    cfg.seed = rng();
    AlgebraPresentation A = random_algebra(cfg);
    // random invertible matrix: retry until nonsingular
    std::vector<Vector> M;
    while (true) {
      M.clear();
      for (int i = 0; i < A.dim(); ++i) {
        std::vector<Scalar> cs;
        for (int j = 0; j < A.dim(); ++j)
          cs.push_back(Scalar::from_integer(cfg.field, static_cast<long long>(rng() % 3)));
        M.emplace_back(cfg.field, cs);
      }
      if (Subspace::span(cfg.field, A.dim(), M).rank() == A.dim()) break;
    }
    AlgebraPresentation B = change_of_basis(A, M);
    AlgebraPresentation back = change_of_basis(B, invert_matrix(M));
    CHECK(back == A);
  }
}

TEST_CASE("reduce mod p") {
  AlgebraPresentation e1q = testutil::e1_algebra(Q);
  AlgebraPresentation e1f2 = reduce_mod(e1q, 2);
  CHECK(e1f2.field() == F2);
  CHECK(e1f2 == testutil::e1_algebra(F2));

  // halves reduce via the inverse of 2
  AlgebraPresentation half = testutil::make_algebra(Q, {"a"}, {});
  ProductTable t;
  t[{0, 0}].emplace(0, scalar_parse("1/2", Q));
  AlgebraPresentation h = AlgebraPresentation::make(Q, {"a"}, t);
  AlgebraPresentation h5 = reduce_mod(h, 5);
  CHECK(h5.structure_constant(0, 0, 0) == Scalar::from_integer(FieldDescriptor::prime(5), 3));
  CHECK_THROWS_AS(reduce_mod(h, 2), Error);  // denominator vanishes

  CHECK(reduce_mod(e1f2, 2) == e1f2);
  CHECK_THROWS_AS(reduce_mod(e1f2, 3), Error);
}
