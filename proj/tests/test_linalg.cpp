#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ringlab/linalg.hpp"

using namespace ringlab;

namespace {

const FieldDesc QQ = FieldDesc::rationals();

SMat rand_mat(std::mt19937_64& rng, const FieldDesc& f, std::size_t r,
              std::size_t c) {
  SMat m = smat_zero(f, r, c);
  for (auto& row : m) {
    for (auto& x : row) {
      x = Scalar::from_int(f, static_cast<std::int64_t>(rng() % 11) - 5);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("rref, rank, nullspace") {
  SMat m = {{Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 2)},
            {Scalar::from_int(QQ, 2), Scalar::from_int(QQ, 4)}};
  auto ns = smat_nullspace(m, QQ, 2);
  REQUIRE(ns.size() == 1);
  // canonical RREF form: leading coefficient 1
  CHECK(ns[0][0].str() == "1");
  CHECK(ns[0][1].str() == "-1/2");

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    SMat a = rand_mat(rng, QQ, 4, 6);
    auto basis = smat_nullspace(a, QQ, 6);
    SMat copy = a;
    int rank = smat_rref(copy);
    CHECK(basis.size() == 6 - static_cast<std::size_t>(rank));
    for (const auto& v : basis) {
      for (const auto& val : smat_apply(a, v)) CHECK(val.is_zero());
    }
  }
}

TEST_CASE("solve and det") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    SMat a = rand_mat(rng, QQ, 4, 4);
    SVec x0;
    for (int i = 0; i < 4; ++i) {
      x0.push_back(Scalar::from_int(QQ, static_cast<std::int64_t>(rng() % 7) - 3));
    }
    SVec b = smat_apply(a, x0);
    auto sol = smat_solve(a, b, QQ);
    REQUIRE(sol.has_value());
    CHECK(smat_apply(a, *sol) == b);

    Scalar d = smat_det(a, QQ);
    auto inv = smat_inverse(a, QQ);
    CHECK(inv.has_value() == !d.is_zero());
    if (inv) {
      CHECK(smat_mul(a, *inv) == smat_identity(QQ, 4));
    }
  }
  // inconsistent system
  SMat a = {{Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 1)},
            {Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 1)}};
  SVec b = {Scalar::from_int(QQ, 0), Scalar::from_int(QQ, 1)};
  CHECK(!smat_solve(a, b, QQ).has_value());
}

TEST_CASE("span utilities") {
  SVec e1 = {Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 0), Scalar::from_int(QQ, 1)};
  SVec e2 = {Scalar::from_int(QQ, 0), Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 1)};
  auto rows = canonical_span({e1, e2, e1});
  CHECK(rows.size() == 2);
  SVec target = {Scalar::from_int(QQ, 2), Scalar::from_int(QQ, 3),
                 Scalar::from_int(QQ, 5)};
  auto coords = span_coordinates(rows, target, QQ);
  REQUIRE(coords.has_value());
  SVec probe = {Scalar::from_int(QQ, 1), Scalar::from_int(QQ, 1),
                Scalar::from_int(QQ, 0)};
  CHECK(!span_coordinates(rows, probe, QQ).has_value());
}

TEST_CASE("echelon span tracks certificates") {
  EchelonSpan span(QQ);
  auto vec = [&](std::initializer_list<int> vals) {
    SparseVec v;
    int slot = 0;
    for (int c : vals) {
      if (c != 0) v[SparseKey{Mono{}, slot}] = Scalar::from_int(QQ, c);
      ++slot;
    }
    return v;
  };
  CHECK(span.insert(vec({1, 1, 0}), 0));
  CHECK(span.insert(vec({0, 1, 1}), 1));
  CHECK(!span.insert(vec({1, 2, 1}), 2));
  auto combo = span.express(vec({2, 3, 1}));
  REQUIRE(combo.has_value());
  // 2*(1,1,0) + 1*(0,1,1)
  CHECK((*combo)[0].str() == "2");
  CHECK((*combo)[1].str() == "1");
  CHECK(!span.express(vec({0, 0, 7})).has_value());
}

TEST_CASE("echelon span rejects outside vectors") {
  EchelonSpan span(QQ);
  SparseVec v1;
  v1[SparseKey{Mono{}, 0}] = Scalar::one(QQ);
  span.insert(v1, 0);
  SparseVec w;
  w[SparseKey{Mono{}, 1}] = Scalar::one(QQ);
  CHECK(!span.express(w).has_value());
}

TEST_CASE("bareiss determinant over polynomial entries") {
  PolyRing ring = PolyRing::univariate(QQ, "x");
  auto P = [&](const char* s) { return Poly::parse(ring, s); };
  PMat m = {{P("x"), P("1")}, {P("1"), P("x")}};
  CHECK(pmat_det(m) == P("x^2-1"));

  PMat sing = {{P("x"), P("x")}, {P("x"), P("x")}};
  CHECK(pmat_det(sing).is_zero());
  CHECK(pmat_rank(sing) == 1);

  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 25; ++rep) {
    // compare Bareiss det against scalar det after random evaluation
    PMat a(3, std::vector<Poly>(3, Poly::zero(ring)));
    for (auto& row : a) {
      for (auto& e : row) {
        e = Poly::zero(ring);
        for (int d = 0; d < 2; ++d) {
          e.add_term(Mono{d}, Scalar::from_int(QQ, static_cast<std::int64_t>(rng() % 7) - 3));
        }
      }
    }
    Poly d = pmat_det(a);
    Scalar at = Scalar::from_int(QQ, 2);
    SMat num = smat_zero(QQ, 3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        num[i][j] = a[i][j].eval_partial({{"x", at}}).constant_value();
      }
    }
    Scalar expect = smat_det(num, QQ);
    Scalar got = d.is_zero() ? Scalar::zero(QQ)
                             : d.eval_partial({{"x", at}}).constant_value();
    CHECK(got == expect);
  }
}

TEST_CASE("cramer solve returns exact fractions") {
  PolyRing ring = PolyRing::univariate(QQ, "x");
  auto P = [&](const char* s) { return Poly::parse(ring, s); };
  PMat a = {{P("1"), P("x")}, {P("0"), P("1")}};
  auto [xs, det] = pmat_solve_cramer(a, {P("x^2"), P("x")});
  CHECK(det == P("1"));
  CHECK(xs[0] == P("0"));  // x^2 - x*x
  CHECK(xs[1] == P("x"));
}
