#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ringlab/factor.hpp"

using namespace ringlab;

namespace {

Poly remultiply(const Factorization& fac, const PolyRing& ring) {
  Poly acc = Poly::constant(ring, fac.unit);
  for (const auto& [g, m] : fac.factors) acc *= g.pow(m);
  return acc;
}

Poly random_monic(const PolyRing& ring, std::mt19937_64& rng, int deg) {
  Poly p = Poly::monomial(ring, Mono{deg}, Scalar::one(ring.field));
  for (int i = 0; i < deg; ++i) {
    std::int64_t c = static_cast<std::int64_t>(rng() % 21) - 10;
    p.add_term(Mono{i}, Scalar::from_int(ring.field, c));
  }
  return p;
}

}  // namespace

TEST_CASE("difference of squares over QQ") {
  PolyRing ring = PolyRing::univariate(FieldDesc::rationals(), "x");
  auto fac = factor_univariate(Poly::parse(ring, "x^2-1"));
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.unit.is_one());
  CHECK(fac.factors[0].first == Poly::parse(ring, "x-1"));
  CHECK(fac.factors[1].first == Poly::parse(ring, "x+1"));
  CHECK(fac.factors[0].second == 1);
}

TEST_CASE("Frobenius square over GF(2)") {
  PolyRing ring = PolyRing::univariate(FieldDesc::prime_field(2), "x");
  auto fac = factor_univariate(Poly::parse(ring, "x^2+1"));
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.unit.is_one());
  CHECK(fac.factors[0].first == Poly::parse(ring, "x+1"));
  CHECK(fac.factors[0].second == 2);
}

TEST_CASE("random factorizations re-multiply to the input") {
  std::mt19937_64 rng(99);
  for (const auto& field :
       {FieldDesc::rationals(), FieldDesc::prime_field(2), FieldDesc::prime_field(5),
        FieldDesc::prime_field(13)}) {
    PolyRing ring = PolyRing::univariate(field, "x");
    for (int rep = 0; rep < 100; ++rep) {
      int deg = 1 + static_cast<int>(rng() % 6);
      Poly f = random_monic(ring, rng, deg);
      auto fac = factor_univariate(f, 5 + rep);
      CHECK(remultiply(fac, ring) == f);
      for (const auto& [g, m] : fac.factors) {
        CHECK(m >= 1);
        CHECK(g.leading_coeff().is_one());
      }
    }
  }
}

TEST_CASE("random monic degree-6 over QQ, including products of knowns") {
  PolyRing ring = PolyRing::univariate(FieldDesc::rationals(), "x");
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    Poly f = random_monic(ring, rng, 3) * random_monic(ring, rng, 3);
    auto fac = factor_univariate(f);
    CHECK(remultiply(fac, ring) == f);
  }
  // non-monic input keeps the unit out front
  Poly g = Poly::parse(ring, "6*x^2 - 6");
  auto fac = factor_univariate(g);
  CHECK(fac.unit.str() == "6");
  CHECK(remultiply(fac, ring) == g);
}

TEST_CASE("known irreducibles stay irreducible") {
  PolyRing qq = PolyRing::univariate(FieldDesc::rationals(), "x");
  CHECK(factor_univariate(Poly::parse(qq, "x^2+1")).factors.size() == 1);
  CHECK(factor_univariate(Poly::parse(qq, "x^4+x^3+x^2+x+1")).factors.size() == 1);

  // x^2+1 = (x+2)(x+3) over GF(5)
  PolyRing f5 = PolyRing::univariate(FieldDesc::prime_field(5), "x");
  auto fac = factor_univariate(Poly::parse(f5, "x^2+1"));
  CHECK(fac.factors.size() == 2);
}

TEST_CASE("squarefree part") {
  PolyRing qq = PolyRing::univariate(FieldDesc::rationals(), "x");
  CHECK(squarefree_part(Poly::parse(qq, "x^2")) == Poly::parse(qq, "x"));
  CHECK(squarefree_part(Poly::parse(qq, "x^2*(x-1)^3")) ==
        Poly::parse(qq, "x*(x-1)"));
  CHECK(squarefree_part(Poly::parse(qq, "5*x")) == Poly::parse(qq, "x"));
  CHECK_THROWS_AS(squarefree_part(Poly::zero(qq)), validation_error);

  for (std::int64_t p : {2, 3, 5}) {
    PolyRing fp = PolyRing::univariate(FieldDesc::prime_field(p), "x");
    Poly xp = Poly::monomial(fp, Mono{static_cast<std::int32_t>(p)},
                             Scalar::one(fp.field));
    // p-th power extraction: squarefree part of x^p is x
    CHECK(squarefree_part(xp) == Poly::parse(fp, "x"));
    // and the result is squarefree: gcd with derivative is 1 or recursion ended
    Poly sf = squarefree_part(Poly::parse(fp, "(x+1)^2*x"));
    CHECK(sf == Poly::parse(fp, "x^2+x"));
  }
}

TEST_CASE("squarefree part is squarefree on random products") {
  std::mt19937_64 rng(17);
  for (const auto& field : {FieldDesc::rationals(), FieldDesc::prime_field(3)}) {
    PolyRing ring = PolyRing::univariate(field, "x");
    for (int rep = 0; rep < 40; ++rep) {
      Poly f = random_monic(ring, rng, 1 + static_cast<int>(rng() % 3));
      Poly g = random_monic(ring, rng, 1 + static_cast<int>(rng() % 2));
      Poly prod = f * f * g;
      Poly sf = squarefree_part(prod);
      // squarefree: factorization of sf has all multiplicities 1
      for (const auto& [h, m] : factor_univariate(sf).factors) {
        (void)h;
        CHECK(m == 1);
      }
      // sf divides prod and has the same irreducible support
      auto full = factor_univariate(prod);
      Poly expect = Poly::one(ring);
      for (const auto& [h, m] : full.factors) {
        (void)m;
        expect *= h;
      }
      CHECK(sf == expect);
    }
  }
}

TEST_CASE("roots with multiplicity") {
  PolyRing qq = PolyRing::univariate(FieldDesc::rationals(), "x");
  auto roots = poly_roots(Poly::parse(qq, "x^2*(x-2)*(x^2+1)"));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].first.str() == "0");
  CHECK(roots[0].second == 2);
  CHECK(roots[1].first.str() == "2");
  CHECK(roots[1].second == 1);
}

TEST_CASE("errors: zero and multivariate inputs") {
  PolyRing one = PolyRing::univariate(FieldDesc::rationals(), "x");
  CHECK_THROWS_AS(factor_univariate(Poly::zero(one)), validation_error);
  PolyRing two{FieldDesc::rationals(), {{"x", false}, {"y", false}}};
  CHECK_THROWS_AS(factor_univariate(Poly::parse(two, "x*y")), validation_error);
  PolyRing laur{FieldDesc::rationals(), {{"x", true}}};
  CHECK_THROWS_AS(factor_univariate(Poly::parse(laur, "x^-1")), validation_error);
}
