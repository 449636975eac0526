#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/exactnum.hpp"
#include "moduli/quadext.hpp"

using namespace moduli;

namespace {
CycloElement z(int n, long p = 1) { return CycloElement::zeta(n, p); }
CycloElement r(int n, long a, long b = 1) { return CycloElement(n, Rational(a, b)); }
QPoly qp(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return QPoly(v);
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == qp({-1, 1}));
  CHECK(cyclotomic_polynomial(4) == qp({1, 0, 1}));
  CHECK(cyclotomic_polynomial(12) == qp({1, 0, -1, 0, 1}));
  CHECK(euler_phi(36) == 12);
  CHECK(units_mod(8) == std::vector<int>{1, 3, 5, 7});
}

TEST_CASE("i squared is -1") {
  CHECK(cyclo_arith(z(4), z(4), CycloOp::mul) == r(4, -1));
}

TEST_CASE("conjugation of zeta12^5") {
  CycloElement c = cyclo_arith(z(12, 5), z(12, 5), CycloOp::conj);
  CHECK(c == z(12, 7));
  CHECK(c == -z(12));
}

TEST_CASE("inverse of 1 + zeta3") {
  CycloElement x = r(3, 1) + z(3);
  CycloElement y = cyclo_arith(x, x, CycloOp::inv);
  CHECK(x * y == r(3, 1));
  CHECK(y == -z(3));
  CHECK_THROWS_AS(CycloElement::zero(5).inv(), Error);
}

TEST_CASE("conductor mismatch is an error") {
  CHECK_THROWS_AS(z(3) + z(4), Error);
  CHECK(z(3) + CycloElement(1, Rational(2)) == z(3) + r(3, 2));
}

TEST_CASE("embed_conductor") {
  CHECK(embed_conductor(z(3), 12) == z(12, 4));
  CHECK(embed_conductor(r(1, 1, 2), 8) == r(8, 1, 2));
  CycloElement x = z(4) + r(4, 1);
  CycloElement e = embed_conductor(x, 12);
  CHECK(e == z(12, 3) + r(12, 1));
  CHECK(minimal_polynomial(e) == minimal_polynomial(x));
  CHECK_THROWS_AS(embed_conductor(z(3), 8), Error);
}

TEST_CASE("minimal polynomials") {
  CHECK(minimal_polynomial(z(4)) == qp({1, 0, 1}));
  CycloElement s = z(8) + z(8, -1);
  QPoly m = minimal_polynomial(s);
  CHECK(m == qp({-2, 0, 1}));
  // substitution check
  CHECK((s * s - r(8, 2)).is_zero());
  CHECK(minimal_polynomial(r(5, 3, 2)) == QPoly({Rational(-3, 2), Rational(1)}));
  CHECK(minimal_polynomial(z(4) + r(4, 1)) == qp({2, -2, 1}));
}

TEST_CASE("sign of real elements") {
  CHECK(sign_of_real(CycloElement::zero(7)) == Sign::zero);
  CHECK(sign_of_real(z(8) + z(8, -1)) == Sign::positive);
  CHECK(sign_of_real(z(3) + z(3, 2)) == Sign::negative);
  CHECK(sign_of_real(z(12) + z(12, -1) - r(12, 2)) == Sign::negative);
  // 2cos(2pi/7) + 2cos(4pi/7) + 2cos(6pi/7) = -1, shifted by tiny rational
  CycloElement s = z(7) + z(7, 6) + z(7, 2) + z(7, 5) + z(7, 3) + z(7, 4);
  CHECK(sign_of_real(s + r(7, 1)) == Sign::zero);
  CHECK(sign_of_real(s + r(7, 1) + r(7, 1, 1000000000)) == Sign::positive);
  CHECK_THROWS_AS(sign_of_real(z(5)), Error);
}

TEST_CASE("root extraction") {
  RootResult a = root_extract(r(1, 4), 2);
  REQUIRE(a.in_field);
  CHECK(a.root * a.root == r(1, 4));
  RootResult b = root_extract(z(9, 3), 3);
  REQUIRE(b.in_field);
  CHECK(b.root.pow(3) == z(9, 3));
  RootResult c = root_extract(r(3, 1) + z(3), 2);
  CHECK_FALSE(c.in_field);
  CHECK(c.describe() == "Extension(t^2 - (1 + q))");
  CHECK_THROWS_AS(root_extract(CycloElement::zero(3), 2), Error);
  RootResult d = root_extract_lifting(-z(9), 2);
  REQUIRE(d.in_field);
  CHECK(d.root.conductor() == 36);
  CHECK(d.root * d.root == embed_conductor(-z(9), 36));
}

TEST_CASE("rational roots") {
  CHECK(*rational_root(Rational(27, 8), 3) == Rational(3, 2));
  CHECK(*rational_root(Rational(-8), 3) == Rational(-2));
  CHECK_FALSE(rational_root(Rational(-4), 2).has_value());
  CHECK_FALSE(rational_root(Rational(2), 2).has_value());
}

TEST_CASE("element printing") {
  CHECK((r(12, 1, 2) * z(12, 3) - r(12, 2)).to_string() == "-2 + (1/2)*q^3");
  CHECK(CycloElement::zero(5).to_string() == "0");
}

TEST_CASE("quadratic extension") {
  QuadExt K(r(3, 2));
  CHECK(K.certificate_prime() > 0);
  auto x = K.make(r(3, 1), r(3, 1));
  auto y = K.make(r(3, 1), -r(3, 1));
  CHECK(K.mul(x, y).a == r(3, -1));
  CHECK(K.mul(x, y).b.is_zero());
  CHECK(K.norm(x) == r(3, -1));
  auto xi = K.inv(x);
  auto one = K.mul(x, xi);
  CHECK(one.a == r(3, 1));
  CHECK(one.b.is_zero());
  CHECK_THROWS_AS(QuadExt(r(1, 4)), Error);
  CHECK_THROWS_AS(QuadExt(z(8, 2)), Error);  // i = zeta8^2 is a square in Q(zeta8)
  CHECK_THROWS_AS(QuadExt(z(3)), Error);  // zeta3 = (zeta3^2)^2
  CHECK_NOTHROW(QuadExt(r(8, 3)));
}
