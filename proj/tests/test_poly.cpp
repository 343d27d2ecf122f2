#include <random>

#include "doctest.h"
#include "nlca/cochain.hpp"
#include "nlca/poly.hpp"

using namespace nlca;

static Poly P(const std::string& s, int ar = 1) { return parse_poly(s, ar); }

TEST_CASE("arithmetic examples") {
  CHECK(P("del + 2*lam1") + P("-2*lam1") == P("del"));
  CHECK(P("lam1") * P("lam1") == P("lam1^2"));
  CHECK(P("del + 2*lam1") * P("del - 2*lam1") == P("del^2 - 4*lam1^2"));
  CHECK((P("lam1") * Q(1, 2)) == P("1/2*lam1"));
}

TEST_CASE("arity mismatch is a structural error") {
  CHECK_THROWS_AS(P("lam1") + P("lam1", 2), StructuralError);
  CHECK_THROWS_AS(P("lam1") * P("del", 0), StructuralError);
  CHECK_THROWS_AS(poly_equal(P("lam1"), P("lam1", 2)), StructuralError);
}

TEST_CASE("substitution examples") {
  CHECK(P("lam1^3").substitute(1, P("-del - lam1")) == -P("(del + lam1)^3"));
  CHECK(P("del + 2*lam1").substitute(0, P("del + lam1")) == P("del + 3*lam1"));
  CHECK(P("del + 2*lam1").substitute(0, P("-lam1")) == P("lam1"));
  CHECK_THROWS_AS(P("lam1").substitute(3, P("del")), StructuralError);
}

TEST_CASE("equality examples") {
  CHECK(poly_equal(P("lam1 + del"), P("del + lam1")));
  CHECK_FALSE(poly_equal(P("lam1", 2), P("lam2", 2)));
  CHECK(poly_equal(-P("(-del - lam1)^3"), P("(del + lam1)^3")));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    Poly a = random_poly(2, 4, rng), b = random_poly(2, 4, rng), c = random_poly(2, 4, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Poly(2));
  }
}

TEST_CASE("substitutions into disjoint variables commute") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(2, 3, rng), q = random_poly(2, 2, rng), r = random_poly(2, 2, rng);
    // q, r avoid the substituted variables after renaming: use del-free images.
    Poly q1 = q.substitute(1, Poly(2, 0)).substitute(2, Poly(2, 0));
    Poly r1 = r.substitute(1, Poly(2, 0)).substitute(2, Poly(2, 0));
    CHECK(p.substitute(1, q1).substitute(2, r1) == p.substitute(2, r1).substitute(1, q1));
  }
}

TEST_CASE("compose is simultaneous") {
  // lam1 <-> lam2 swap must not chain.
  Poly p = P("lam1 + 2*lam2", 2);
  Poly s = p.compose({Poly::del(2), Poly::lam(2, 2), Poly::lam(1, 2)});
  CHECK(s == P("lam2 + 2*lam1", 2));
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    Poly p = random_poly(3, 4, rng) * Q(it + 1, 7);
    CHECK(parse_poly(to_string(p), 3) == p);
  }
  CHECK(to_string(P("2*lam1 + del")) == "del + 2*lam1");
  CHECK(to_string(Poly(1)) == "0");
  CHECK(to_string(P("-1/2*lam1^3 + 1")) == "-1/2*lam1^3 + 1");
}

TEST_CASE("parse diagnostics carry a column") {
  try {
    parse_poly("del + lam3", 2);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.col == 6);
  }
  CHECK_THROWS_AS(parse_poly("del +", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("x", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0", 1), ParseError);
  CHECK(parse_poly(" ( del ) ^ 2 ", 0) == parse_poly("del^2", 0));
}
