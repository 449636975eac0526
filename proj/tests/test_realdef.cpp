#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moduli/galois.hpp"
#include "moduli/realdef.hpp"

using namespace moduli;

namespace {
CycloElement z(int n, long p = 1) { return CycloElement::zeta(n, p); }
CycloElement r(int n, long a, long b = 1) { return CycloElement(n, Rational(a, b)); }
// z dz / ((z - 1)(z - zeta6)) over Q(zeta12)
KForm rotated_pair() {
  const int n = 12;
  Divisor D;
  D.add(ProjPoint(r(n, 0)), 1);
  D.add(ProjPoint(r(n, 1)), -1);
  D.add(ProjPoint(z(n, 2)), -1);
  return KForm{RationalMap::from_factored(r(n, 1), D), 1};
}
}  // namespace

TEST_CASE("reflections") {
  CHECK(is_reflection({MoebiusMap::identity(1)}));
  CHECK_FALSE(is_reflection({MoebiusMap(r(1, 0), r(1, -1), r(1, 1), r(1, 0))}));
  CHECK(is_reflection({MoebiusMap::scaling(z(3))}));
  CHECK(is_reflection({MoebiusMap::inversion(r(1, 1))}));
  CHECK(is_reflection({MoebiusMap::scaling(z(5))}));
  CHECK_FALSE(is_reflection({MoebiusMap::scaling(r(1, 2))}));  // not an involution
  AntiMoebius U{MoebiusMap::scaling(z(3))};
  CHECK(U.compose(U).is_identity());
}

TEST_CASE("rotated pair of poles") {
  KForm w = rotated_pair();
  CHECK(real_moduli_check(w));
  auto auts = antiholo_auts(w);
  REQUIRE_FALSE(auts.empty());
  RealVerdict v = real_definability_check(w);
  REQUIRE(v.kind == RealVerdict::DefinableOverR);
  CHECK(is_reflection(*v.witness));
  // descended model over the reals
  const int n = 12;
  RationalMap S = apply_action(ActionTag::chi_k(1), MoebiusMap::scaling(z(n)), w.R);
  RationalMap expect = normalize(KPoly(n, {r(n, 0), r(n, 1)}), KPoly(n, {r(n, 1), -(z(n) + z(n, 11)), r(n, 1)}));
  CHECK(S == expect);
  CHECK(S == S.conj());
}

TEST_CASE("rational forms") {
  Divisor D;
  D.add(ProjPoint(r(1, 2)), 1);
  D.add(ProjPoint(r(1, -1)), -3);
  KForm w{RationalMap::from_factored(r(1, 3), D), 1};
  CHECK(real_moduli_check(w));
  RealVerdict v = real_definability_check(w);
  CHECK(v.kind == RealVerdict::DefinableOverR);
  CHECK(v.witness->M.is_identity());
}

TEST_CASE("moduli not real") {
  const int n = 5;
  RationalMap R = normalize(KPoly(n, {z(n), r(n, 0), r(n, 1)}), KPoly(n, {r(n, 1)}));
  KForm w{R, 1};
  CHECK_FALSE(real_moduli_check(w));
  CHECK(real_definability_check(w).kind == RealVerdict::ModuliNotReal);
}

TEST_CASE("four concyclic subsets") {
  CycloElement e = z(12, 2), lambda = z(12, 5);
  CircleCheck c = circle_preconditions(Rational(2), e, lambda);
  CHECK(c.ok);
  CHECK(c.classes.size() == 3);
  CHECK_FALSE(circle_preconditions(Rational(2), z(4), z(4)).ok);               // e^2 = -1
  CHECK_FALSE(circle_preconditions(Rational(2), e, e).ok);  // lambda = conj(lambda) e^2
  CHECK_FALSE(circle_preconditions(Rational(1), e, lambda).ok);
  for (int k : {1, 2}) {
    KForm w{circle_family_map(Rational(2), e, lambda, k), k};
    CHECK(real_moduli_check(w));
    auto auts = antiholo_auts(w);
    REQUIRE(auts.size() >= 1);
    bool has = false;
    for (const auto& U : auts) has = has || U.M.proj_equal(MoebiusMap::inversion(r(12, -4)));
    CHECK(has);
    CHECK(real_definability_check(w).kind == RealVerdict::NotDefinable);
  }
}
