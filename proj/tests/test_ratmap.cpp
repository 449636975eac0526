#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/ratmap.hpp"

using namespace moduli;

namespace {
CycloElement z(int n, long p = 1) { return CycloElement::zeta(n, p); }
CycloElement r(int n, long a, long b = 1) { return CycloElement(n, Rational(a, b)); }
ProjPoint pt(const CycloElement& x) { return ProjPoint(x); }
KPoly poly(int n, std::vector<CycloElement> cs) { return KPoly(n, std::move(cs)); }
RationalMap zsq(int n) {
  Divisor d;
  d.add(pt(r(n, 0)), 2);
  return RationalMap::from_factored(r(n, 1), d);
}
}  // namespace

TEST_CASE("normalize forces a monic numerator") {
  RationalMap R = normalize(poly(1, {r(1, 2), r(1, 0), r(1, 2)}), poly(1, {r(1, 0), r(1, 4)}));
  CHECK(R.numerator() == poly(1, {r(1, 1), r(1, 0), r(1, 1)}));
  CHECK(R.denominator() == poly(1, {r(1, 0), r(1, 2)}));
  RationalMap S = normalize(poly(1, {r(1, -1), r(1, 0), r(1, 1)}), poly(1, {r(1, -1), r(1, 1)}));
  CHECK(S.numerator() == poly(1, {r(1, 1), r(1, 1)}));
  CHECK(S.denominator() == poly(1, {r(1, 1)}));
  RationalMap C = normalize(KPoly::X(1).pow(3), KPoly::X(1).pow(3));
  CHECK(C.is_constant());
  CHECK(C.numerator() == poly(1, {r(1, 1)}));
  CHECK(C.denominator() == poly(1, {r(1, 1)}));
  CHECK_THROWS_AS(normalize(KPoly(1), KPoly::X(1)), Error);
}

TEST_CASE("factored form is recovered from roots") {
  RationalMap R = normalize(poly(1, {r(1, -1), r(1, 0), r(1, 1)}), poly(1, {r(1, 0), r(1, 3)}));
  REQUIRE(R.has_factored());
  CHECK(R.scalar() == r(1, 1, 3));
  CHECK(R.finite_divisor().to_string() == "[-1] - [0] + [1]");
}

TEST_CASE("evaluate_extended") {
  CHECK(zsq(1).evaluate_extended(ProjPoint::infinity(1)).is_infinity());
  RationalMap inv = zsq(1).power(-1);
  CHECK(inv.evaluate_extended(pt(r(1, 0))).is_infinity());
  RationalMap R = normalize(poly(1, {r(1, 1), r(1, 0), r(1, 1)}), poly(1, {r(1, 0), r(1, 2)}));
  CHECK(R.evaluate_extended(pt(r(1, 1))) == pt(r(1, 1)));
}

TEST_CASE("composition") {
  RationalMap S = normalize(poly(1, {r(1, 1), r(1, 1)}), poly(1, {r(1, 1)}));
  CHECK(compose(zsq(1), S) == normalize(poly(1, {r(1, 1), r(1, 2), r(1, 1)}), poly(1, {r(1, 1)})));
  RationalMap inv = normalize(poly(1, {r(1, 1)}), KPoly::X(1));
  CHECK(compose(zsq(1), inv) == zsq(1).power(-1));
  // conjugate of z^2 + zeta3 by zeta3^2 z
  RationalMap R = normalize(poly(3, {z(3), r(3, 0), r(3, 1)}), poly(3, {r(3, 1)}));
  RationalMap T = normalize(poly(3, {r(3, 0), z(3, 2)}), poly(3, {r(3, 1)}));
  RationalMap Tinv = normalize(poly(3, {r(3, 0), z(3, 1)}), poly(3, {r(3, 1)}));
  RationalMap conj = compose(Tinv, compose(R, T));
  CHECK(conj == normalize(poly(3, {z(3, 2), r(3, 0), z(3, 2)}), poly(3, {r(3, 1)})));
  for (long x : {2, 3, -5, 7, 11}) {
    CycloElement v = r(3, x);
    CHECK(conj.eval(v) == z(3) * (R.eval(z(3, 2) * v)));
  }
  CHECK(compose(zsq(1), zsq(1)).degree() == 4);
}

TEST_CASE("derivative") {
  auto d1 = derivative(zsq(1));
  REQUIRE(d1.has_value());
  CHECK(*d1 == normalize(poly(1, {r(1, 0), r(1, 2)}), poly(1, {r(1, 1)})));
  auto d3 = derivative(normalize(poly(1, {r(1, 1)}), KPoly::X(1)));
  REQUIRE(d3.has_value());
  CHECK(*d3 == normalize(poly(1, {r(1, -1)}), KPoly::X(1).pow(2)));
  CHECK_FALSE(derivative(RationalMap::constant(r(1, 5))).has_value());
  // (z-1)(z+4)(z^2-4 zeta3)/(zeta12^5 z^3)
  const int n = 12;
  Divisor D;
  D.add(pt(r(n, 1)), 1);
  D.add(pt(r(n, -4)), 1);
  RootResult s = root_extract(r(n, 4) * z(n, 4), 2);
  REQUIRE(s.in_field);
  D.add(pt(s.root), 1);
  D.add(pt(-s.root), 1);
  D.add(pt(r(n, 0)), -3);
  RationalMap R = RationalMap::from_factored(z(n, 5).inv(), D);
  auto dR = derivative(R);
  REQUIRE(dR.has_value());
  // logarithmic-derivative route: at the simple zero z=1 the derivative is the
  // product of the remaining factors
  CycloElement other = z(n, 5).inv() * r(n, 5) * (r(n, 1) - r(n, 4) * z(n, 4));
  CHECK(dR->eval(r(n, 1)) == other);
  const KPoly& P = R.numerator();
  const KPoly& Q = R.denominator();
  CycloElement q1 = Q.eval(r(n, 1));
  CHECK(dR->eval(r(n, 1)) ==
        (P.derivative().eval(r(n, 1)) * q1 - P.eval(r(n, 1)) * Q.derivative().eval(r(n, 1))) / (q1 * q1));
}

TEST_CASE("k-form divisors") {
  Divisor d = kform_divisor(KForm{zsq(1), 1});
  CHECK(d.to_string() == "2[0] - 4[inf]");
  CHECK(d.degree() == -2);
  RationalMap inv = RationalMap::identity(1).power(-1);
  CHECK(kform_divisor(KForm{inv, 1}).to_string() == "-[0] - [inf]");
  CHECK(kform_divisor(KForm{RationalMap::constant(r(1, 1)), 0}).empty());
}

TEST_CASE("theta involution") {
  KForm w{zsq(1), 1};
  KForm t = theta_involution(w);
  CHECK(t.k == -1);
  CHECK(t.R == zsq(1).power(-1));
  Divisor dt = kform_divisor(t);
  CHECK(dt == kform_divisor(w).negated());
  CHECK(dt.degree() == 2);
  Divisor one;
  one.add(pt(r(1, -1)), 1);
  KForm w3{RationalMap::from_factored(r(1, 1), one), 3};
  KForm back = theta_involution(theta_involution(w3));
  CHECK(back.k == 3);
  CHECK(back.R == w3.R);
}

TEST_CASE("fixed and critical data of z^2") {
  MarkedSet M = fixed_marked_set(zsq(1));
  REQUIRE(M.size() == 3);
  CHECK(M[0].p == pt(r(1, 0)));
  CHECK(M[0].fixed_multiplicity == 1);
  CHECK(*M[0].multiplier == r(1, 0));
  CHECK(M[0].local_degree == 2);
  CHECK(M[1].p == pt(r(1, 1)));
  CHECK(*M[1].multiplier == r(1, 2));
  CHECK(M[1].role() == "fixed");
  CHECK(M[2].p.is_infinity());
  CHECK(*M[2].multiplier == r(1, 0));
  CHECK(M[2].role() == "both");
}

TEST_CASE("translation has a parabolic fixed point at infinity") {
  RationalMap T = normalize(poly(1, {r(1, 1), r(1, 1)}), poly(1, {r(1, 1)}));
  MarkedSet M = fixed_marked_set(T);
  REQUIRE(M.size() == 1);
  CHECK(M[0].p.is_infinity());
  CHECK(M[0].fixed_multiplicity == 2);
  CHECK(*M[0].multiplier == r(1, 1));
}

TEST_CASE("fixed points outside the field") {
  RationalMap R = normalize(poly(3, {z(3), r(3, 0), r(3, 1)}), poly(3, {r(3, 1)}));
  CHECK_THROWS_AS(fixed_marked_set(R), Error);
  try {
    fixed_marked_set(R);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RootsNotInField);
  }
}
