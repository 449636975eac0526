#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/projline.hpp"

using namespace moduli;

namespace {
CycloElement z(int n, long p = 1) { return CycloElement::zeta(n, p); }
CycloElement r(int n, long a, long b = 1) { return CycloElement(n, Rational(a, b)); }
ProjPoint pt(const CycloElement& x) { return ProjPoint(x); }
ProjPoint inf(int n) { return ProjPoint::infinity(n); }
}  // namespace

TEST_CASE("canonical points") {
  ProjPoint p(r(5, 6), r(5, 3));
  CHECK(p == pt(r(5, 2)));
  CHECK(ProjPoint(r(5, 7), r(5, 0)).is_infinity());
  CHECK_THROWS_AS(ProjPoint(r(5, 0), r(5, 0)), Error);
  CHECK(pt(r(5, 100)) < inf(5));
}

TEST_CASE("moebius group operations") {
  MoebiusMap inv = MoebiusMap::inversion(r(1, 1));
  CHECK(inv.compose(inv).is_identity());
  MoebiusMap T = MoebiusMap::inversion(r(1, -4));
  CHECK(T.apply(pt(r(1, 1))) == pt(r(1, -4)));
  CHECK(T.apply(pt(r(1, 0))).is_infinity());
  CHECK(T.apply(inf(1)) == pt(r(1, 0)));
  MoebiusMap S(r(1, 1), r(1, 1), r(1, 1), r(1, -1));
  CHECK(S.inverse().proj_equal(S));
  CHECK_FALSE(S.inverse().compare(S) != 0);
  CHECK_THROWS_AS(MoebiusMap(r(1, 1), r(1, 2), r(1, 2), r(1, 4)), Error);
}

TEST_CASE("cross ratio normalization") {
  CycloElement l = z(7) + r(7, 2);
  CHECK(cross_ratio(inf(7), pt(r(7, 0)), pt(r(7, 1)), pt(l)) == pt(l));
  CHECK(cross_ratio(pt(r(7, 0)), inf(7), pt(r(7, 1)), pt(l)) == pt(l.inv()));
  CHECK(cross_ratio(inf(7), pt(r(7, 0)), pt(r(7, 1)), pt(r(7, 1))) == pt(r(7, 1)));
  CHECK_THROWS_AS(cross_ratio(pt(r(7, 0)), pt(r(7, 0)), pt(r(7, 1)), pt(l)), Error);
}

TEST_CASE("three point maps") {
  std::vector<ProjPoint> std3{inf(12), pt(r(12, 0)), pt(r(12, 1))};
  CHECK(three_point_map(std3, std3).is_identity());
  std::vector<ProjPoint> swapped{pt(r(12, 0)), inf(12), pt(r(12, 1))};
  MoebiusMap T = three_point_map(swapped, std3);
  for (int i = 0; i < 3; ++i) CHECK(T.apply(swapped[i]) == std3[i]);
  CHECK(T.proj_equal(MoebiusMap::inversion(r(12, 1))));
  std::vector<ProjPoint> dst{pt(r(12, 0)), inf(12), pt(r(12, -4))};
  MoebiusMap U = three_point_map(std3, dst);
  for (int i = 0; i < 3; ++i) CHECK(U.apply(std3[i]) == dst[i]);
  CHECK(U.proj_equal(MoebiusMap::inversion(r(12, -4))));
  CHECK(three_point_map(dst, std3).compose(U).is_identity());
}

TEST_CASE("divisor pullback") {
  Divisor D;
  D.add(pt(r(1, 0)), 2);
  D.add(inf(1), -4);
  CHECK(D.degree() == -2);
  CHECK(pullback_divisor(MoebiusMap::identity(1), D) == D);
  Divisor E = pullback_divisor(MoebiusMap::inversion(r(1, -4)), D);
  Divisor expect;
  expect.add(inf(1), 2);
  expect.add(pt(r(1, 0)), -4);
  CHECK(E == expect);
  CHECK(E.to_string() == "-4[0] + 2[inf]");
  Divisor F;
  F.add(pt(r(1, 1)), 1);
  F.add(pt(r(1, -1)), 1);
  Divisor G = pullback_divisor(MoebiusMap::translation(r(1, 1)), F);
  Divisor expect2;
  expect2.add(pt(r(1, 0)), 1);
  expect2.add(pt(r(1, -2)), 1);
  CHECK(G == expect2);
}

TEST_CASE("divisor bookkeeping") {
  Divisor D;
  D.add(pt(r(3, 1)), 2);
  D.add(pt(r(3, 1)), -2);
  CHECK(D.empty());
  D.add(pt(z(3)), 1);
  D.add(pt(r(3, 0)), 1);
  CHECK(D.terms().front().first == pt(r(3, 0)));
  CHECK(D.order_at(pt(z(3))) == 1);
  CHECK(D.galois(2).order_at(pt(z(3, 2))) == 1);
}
