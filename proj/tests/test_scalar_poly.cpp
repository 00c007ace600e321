#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ringlab/poly.hpp"

using namespace ringlab;

namespace {

Poly random_poly(const PolyRing& ring, std::mt19937_64& rng, int max_deg,
                 int max_terms) {
  Poly p(ring);
  int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    Mono m(ring.nvars());
    for (auto& e : m) e = static_cast<int>(rng() % (max_deg + 1));
    std::int64_t c = static_cast<std::int64_t>(rng() % 19) - 9;
    p.add_term(m, Scalar::from_int(ring.field, c));
  }
  return p;
}

}  // namespace

TEST_CASE("field descriptors") {
  CHECK(FieldDesc::parse("QQ") == FieldDesc::rationals());
  CHECK(FieldDesc::parse("GF(7)").p == 7);
  CHECK_THROWS_AS(FieldDesc::parse("GF(6)"), validation_error);
  CHECK_THROWS_AS(FieldDesc::parse("RR"), parse_error);
  CHECK(FieldDesc::prime_field(5).tag() == "GF(5)");
}

TEST_CASE("scalar arithmetic over QQ and GF(p)") {
  auto qq = FieldDesc::rationals();
  Scalar half = Scalar::parse(qq, "1/2");
  Scalar third = Scalar::parse(qq, "1/3");
  CHECK((half + third).str() == "5/6");
  CHECK((half * third).str() == "1/6");
  CHECK((half - half).is_zero());
  CHECK(half.inverse().str() == "2");

  auto f5 = FieldDesc::prime_field(5);
  Scalar a = Scalar::from_int(f5, 3);
  CHECK((a * a).residue() == 4);
  CHECK(a.inverse().residue() == 2);
  CHECK(a.pow(4).residue() == 1);
  CHECK_THROWS_AS(Scalar::zero(f5).inverse(), validation_error);
  CHECK_THROWS_AS(a + half, validation_error);
}

TEST_CASE("ring axioms on randomized triples") {
  std::mt19937_64 rng(7);
  for (const auto& field : {FieldDesc::rationals(), FieldDesc::prime_field(5)}) {
    PolyRing ring{field, {{"x", false}, {"y", false}}};
    for (int rep = 0; rep < 40; ++rep) {
      Poly a = random_poly(ring, rng, 3, 4);
      Poly b = random_poly(ring, rng, 3, 4);
      Poly c = random_poly(ring, rng, 3, 4);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
    }
  }
}

TEST_CASE("polynomial parsing and printing") {
  PolyRing ring{FieldDesc::rationals(), {{"x", false}, {"y", false}}};
  Poly p = Poly::parse(ring, "3*x^2*y - 1/2");
  CHECK(p.str() == "3*x^2*y - 1/2");
  CHECK(Poly::parse(ring, p.str()) == p);
  CHECK(Poly::parse(ring, "(x+y)^2") ==
        Poly::parse(ring, "x^2 + 2*x*y + y^2"));
  CHECK(Poly::parse(ring, "0").is_zero());
  CHECK_THROWS_AS(Poly::parse(ring, "z + 1"), parse_error);
  CHECK_THROWS_AS(Poly::parse(ring, "x^-1"), parse_error);

  PolyRing laurent{FieldDesc::rationals(), {{"x", true}}};
  Poly l = Poly::parse(laurent, "x^-1 + 2");
  CHECK(l.str() == "2 + x^-1");
  CHECK(Poly::parse(laurent, l.str()) == l);
}

TEST_CASE("evaluation is a partial substitution homomorphism") {
  auto qq = FieldDesc::rationals();
  PolyRing ring{qq, {{"x", false}, {"t", false}}};

  Poly f = Poly::parse(ring, "x^2 + 1");
  Poly g = f.eval_partial({{"x", Scalar::from_int(qq, 2)}});
  CHECK(g.constant_value().str() == "5");

  Poly h = Poly::parse(ring, "x*t + 1").eval_partial({{"x", Scalar::from_int(qq, 3)}});
  CHECK(h.ring().nvars() == 1);
  CHECK(h.str() == "3*t + 1");

  PolyRing laurent{qq, {{"x", true}}};
  CHECK_THROWS_AS(Poly::parse(laurent, "x^-1")
                      .eval_partial({{"x", Scalar::zero(qq)}}),
                  validation_error);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    Poly a = random_poly(ring, rng, 3, 4);
    Poly b = random_poly(ring, rng, 3, 4);
    std::map<std::string, Scalar> at{{"x", Scalar::from_int(qq, static_cast<std::int64_t>(rng() % 13) - 6)},
                                     {"t", Scalar::from_int(qq, static_cast<std::int64_t>(rng() % 13) - 6)}};
    CHECK((a * b).eval_partial(at).constant_value() ==
          a.eval_partial(at).constant_value() * b.eval_partial(at).constant_value());
    CHECK((a + b).eval_partial(at).constant_value() ==
          a.eval_partial(at).constant_value() + b.eval_partial(at).constant_value());
  }
}

TEST_CASE("univariate division and gcd") {
  PolyRing ring = PolyRing::univariate(FieldDesc::rationals(), "x");
  Poly f = Poly::parse(ring, "x^5 - 1");
  Poly g = Poly::parse(ring, "x - 1");
  auto [q, r] = poly_divmod(f, g);
  CHECK(r.is_zero());
  CHECK(q * g == f);
  CHECK(poly_gcd(f, g) == g);
  CHECK(poly_gcd(Poly::parse(ring, "x^2-1"), Poly::parse(ring, "x^2+2*x+1")) ==
        Poly::parse(ring, "x+1"));
  CHECK(poly_exact_div(Poly::parse(ring, "x^2-1"), Poly::parse(ring, "x+1")) ==
        Poly::parse(ring, "x-1"));
  CHECK_THROWS_AS(poly_exact_div(Poly::parse(ring, "x^2+1"), Poly::parse(ring, "x+1")),
                  validation_error);
}

TEST_CASE("laurent monomials multiply with signed exponents") {
  PolyRing ring{FieldDesc::rationals(), {{"x", true}}};
  Poly xinv = Poly::parse(ring, "x^-1");
  Poly x = Poly::parse(ring, "x");
  CHECK(xinv * x == Poly::one(ring));
  CHECK((xinv * xinv).str() == "x^-2");
}

TEST_CASE("ring union lifts by name") {
  auto qq = FieldDesc::rationals();
  PolyRing a{qq, {{"x", false}}};
  PolyRing b{qq, {{"t", false}}};
  PolyRing u = ring_union(a, b);
  CHECK(u.nvars() == 2);
  Poly f = Poly::parse(a, "x^2").lift_to(u);
  Poly g = Poly::parse(b, "t + 1").lift_to(u);
  CHECK(f * g == Poly::parse(u, "x^2*t + x^2"));
}
