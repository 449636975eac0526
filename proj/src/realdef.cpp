#include "moduli/realdef.hpp"

#include <array>

#include "moduli/flatmod.hpp"
#include "moduli/galois.hpp"

namespace moduli {

MoebiusMap AntiMoebius::compose(const AntiMoebius& inner) const {
  int m = common_conductor(M.conductor(), inner.M.conductor());
  return M.embed(m).compose(inner.M.embed(m).conj());
}

std::string AntiMoebius::to_string() const { return "z -> M(conj z), M = " + M.to_string(); }

namespace {

KForm factored(const KForm& w) {
  if (w.R.has_factored()) return w;
  if (auto R = split_over_lift(w.R)) return KForm{*R, w.k};
  throw Error(ErrorKind::RootsNotInField, "zeros and poles do not split over small cyclotomic lifts");
}

bool real_coefficients(const RationalMap& R) { return R == R.conj(); }

}  // namespace

std::vector<AntiMoebius> antiholo_auts(const KForm& w_in) {
  KForm w = factored(w_in);
  KForm wc{w.R.conj(), w.k};
  auto e = equiv_chi_k(w, wc);
  if (!e) return {};
  if (!e->T) throw Error(ErrorKind::UnsupportedConfiguration, "anti-holomorphic automorphism needs a non-cyclotomic root");
  AutGroup A = aut_group(ActionTag::chi_k(w.k), w.R);
  if (A.kind == AutGroup::OneParameter)
    throw Error(ErrorKind::InfiniteAutomorphismGroup, "coset of anti-holomorphic automorphisms is infinite");
  std::vector<AntiMoebius> out;
  for (const auto& h : A.elements) {
    int m = common_conductor(h.conductor(), e->T->conductor());
    MoebiusMap M = h.embed(m).compose(e->T->embed(m)).normalized();
    RationalMap R = w.R.conductor() == m ? w.R : w.R.embed(m);
    if (apply_action(ActionTag::chi_k(w.k), M, R) != R.conj())
      throw Error(ErrorKind::InvariantViolation, "anti-holomorphic automorphism failed re-verification");
    out.push_back({M});
  }
  return out;
}

bool is_reflection(const AntiMoebius& U) {
  const MoebiusMap& M = U.M;
  MoebiusMap P = M.compose(M.conj());
  if (!P.b().is_zero() || !P.c().is_zero() || P.a() != P.d()) return false;
  // M conj(M) = s I with s real; the fixed set of an anti-holomorphic involution
  // is a circle exactly when s > 0
  return sign_of_real(P.a()) == Sign::positive;
}

bool real_moduli_check(const KForm& w_in) {
  KForm w = factored(w_in);
  return equiv_chi_k(w, KForm{w.R.conj(), w.k}).has_value();
}

std::string RealVerdict::to_string() const {
  switch (kind) {
    case DefinableOverR: return "DefinableOverR(" + witness->to_string() + ")";
    case NotDefinable: return "NotDefinable";
    case ModuliNotReal: break;
  }
  return "ModuliNotReal";
}

RealVerdict real_definability_check(const KForm& w_in) {
  KForm w = factored(w_in);
  RealVerdict v;
  if (real_coefficients(w.R)) {
    v.kind = RealVerdict::DefinableOverR;
    v.witness = AntiMoebius{MoebiusMap::identity(w.R.conductor())};
    return v;
  }
  auto e = equiv_chi_k(w, KForm{w.R.conj(), w.k});
  if (!e) return v;
  if (e->T && is_reflection({*e->T})) {
    v.kind = RealVerdict::DefinableOverR;
    v.witness = AntiMoebius{*e->T};
    return v;
  }
  for (const auto& U : antiholo_auts(w))
    if (is_reflection(U)) {
      v.kind = RealVerdict::DefinableOverR;
      v.witness = U;
      return v;
    }
  v.kind = RealVerdict::NotDefinable;
  return v;
}

CircleCheck circle_preconditions(const Rational& r, const CycloElement& e_in, const CycloElement& lambda_in) {
  CircleCheck out;
  const int n = common_conductor(e_in.conductor(), lambda_in.conductor());
  CycloElement e = embed_conductor(e_in, n), lambda = embed_conductor(lambda_in, n);
  if (r <= 1) {
    out.violation = "r > 1";
    return out;
  }
  CycloElement e2 = e * e;
  if (e2 == CycloElement(n, Rational(-1))) {
    out.violation = "exp(2 i theta) != -1";
    return out;
  }
  if (e2.conj() == e2) {
    out.violation = "exp(-2 i theta) != exp(2 i theta)";
    return out;
  }
  if (lambda != -lambda.conj() * e2) {
    out.violation = "lambda = -conj(lambda) exp(2 i theta)";
    return out;
  }
  CycloElement rr(n, r);
  auto P = [&](const CycloElement& x) { return ProjPoint(x); };
  ProjPoint inf = ProjPoint::infinity(n), zero = P(CycloElement::zero(n)), one = P(CycloElement::one(n));
  ProjPoint mr2 = P(-rr * rr), pre = P(rr * e), mre = P(-rr * e);
  std::vector<std::array<ProjPoint, 4>> sets = {{mr2, zero, one, inf}, {mre, zero, pre, inf}, {one, pre, mr2, mre}};
  for (const auto& s : sets) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (s[i] == s[j]) {
          out.violation = "points of a 4-subset coincide";
          return out;
        }
    out.classes.push_back(j_invariant(cross_ratio(s[0], s[1], s[2], s[3]).value()));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (out.classes[i] == out.classes[j]) {
        out.violation = "cross-ratio classes are pairwise distinct";
        return out;
      }
  out.ok = true;
  return out;
}

RationalMap circle_family_map(const Rational& r, const CycloElement& e_in, const CycloElement& lambda_in, int k) {
  const int n = common_conductor(e_in.conductor(), lambda_in.conductor());
  CycloElement e = embed_conductor(e_in, n), lambda = embed_conductor(lambda_in, n);
  CycloElement rr(n, r);
  Divisor D;
  D.add(ProjPoint(CycloElement::one(n)), k);
  D.add(ProjPoint(-rr * rr), k);
  D.add(ProjPoint(rr * e), k);
  D.add(ProjPoint(-rr * e), k);
  D.add(ProjPoint(CycloElement::zero(n)), -3 * k);
  return RationalMap::from_factored(lambda.inv().pow(k), D);
}

}  // namespace moduli
