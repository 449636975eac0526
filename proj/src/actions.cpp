#include "moduli/actions.hpp"

#include <atomic>
#include <map>
#include <sstream>

namespace moduli {

namespace {
std::atomic<long> g_emitted{0};
std::atomic<long> g_verified{0};
}  // namespace

WitnessAudit witness_audit() { return {g_emitted.load(), g_verified.load()}; }

std::string ActionTag::to_string() const {
  switch (kind) {
    case ChiInf: return "chi_inf";
    case ChiK: return "chi_" + std::to_string(k);
    case ProjChiK: return "Pchi_" + std::to_string(k);
  }
  return "?";
}

MoebiusMap require_nondegenerate(const MoebiusMap& T) {
  if (T.det().is_zero()) throw Error(ErrorKind::SingularMatrix, "degenerate Moebius map");
  return T;
}

RationalMap as_map(const MoebiusMap& T) {
  const int n = T.conductor();
  KPoly num(n, {T.b(), T.a()});
  KPoly den(n, {T.d(), T.c()});
  std::vector<CycloElement> roots;
  if (!T.a().is_zero()) roots.push_back(-T.b() / T.a());
  if (!T.c().is_zero()) roots.push_back(-T.d() / T.c());
  return normalize(num, den, &roots, false);
}

namespace {

// Bring T and R to a common conductor.
void unify(MoebiusMap& T, RationalMap& R) {
  int a = T.conductor(), b = R.conductor();
  if (a == b) return;
  int m = common_conductor(a, b);
  if (a != m) T = T.embed(m);
  if (b != m) R = R.embed(m);
}

RationalMap chi_k_factored(const MoebiusMap& T, const RationalMap& R, int k) {
  const int n = R.conductor();
  Divisor D = kform_divisor(KForm{R, k});
  Divisor Dp = pullback_divisor(T, D);
  Divisor finite;
  for (const auto& [p, m] : Dp.terms())
    if (!p.is_infinity()) finite.add(p, m);
  // smallest sample from 0, 1, -1, 2, -2, ... avoiding supports and the pole of T
  for (long i = 0;; ++i) {
    long v = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
    CycloElement z0(n, Rational(v));
    CycloElement den = T.c() * z0 + T.d();
    if (den.is_zero() || finite.order_at(ProjPoint(z0)) != 0) continue;
    CycloElement w = (T.a() * z0 + T.b()) / den;
    if (R.finite_divisor().order_at(ProjPoint(w)) != 0) continue;
    CycloElement value = R.eval(w) * (T.det() / (den * den)).pow(k);
    CycloElement prod = CycloElement::one(n);
    for (const auto& [p, m] : finite.terms()) prod *= (z0 - p.value()).pow(m);
    return RationalMap::from_factored(value / prod, finite);
  }
}

}  // namespace

RationalMap apply_chi_k_coefficients(const MoebiusMap& T_in, const RationalMap& R_in, int k) {
  MoebiusMap T = require_nondegenerate(T_in);
  RationalMap R = R_in;
  unify(T, R);
  const int n = R.conductor();
  RationalMap RT = compose(R, as_map(T));
  KPoly cz_d(n, {T.d(), T.c()});
  KPoly num = KPoly::constant(T.det()), den = cz_d * cz_d;
  RationalMap Tp = normalize(num, den, nullptr, false);
  RationalMap Tpk = normalize(KPoly::constant(CycloElement::one(n)), KPoly::constant(CycloElement::one(n)),
                              nullptr, false);
  RationalMap base = k >= 0 ? Tp : normalize(den, num, nullptr, false);
  for (int i = 0; i < (k >= 0 ? k : -k); ++i)
    Tpk = normalize(Tpk.numerator() * base.numerator(), Tpk.denominator() * base.denominator(), nullptr,
                    false);
  return normalize(RT.numerator() * Tpk.numerator(), RT.denominator() * Tpk.denominator(), nullptr,
                   false);
}

RationalMap apply_action(const ActionTag& chi, const MoebiusMap& T_in, const RationalMap& R_in) {
  MoebiusMap T = require_nondegenerate(T_in);
  RationalMap R = R_in;
  unify(T, R);
  if (chi.kind == ActionTag::ChiInf) return compose(as_map(T.inverse()), compose(R, as_map(T)));
  if (!R.has_factored()) return apply_chi_k_coefficients(T, R, chi.k);
  return chi_k_factored(T, R, chi.k);
}

std::string EquivWitness::to_string() const {
  std::ostringstream os;
  if (T) os << "T = " << T->to_string();
  else os << "T = lambda*z with " << extension.value_or("?");
  os << ", scalar = " << scalar.to_string();
  return os.str();
}

bool verify_witness(const ActionTag& chi, const RationalMap& R_in, const RationalMap& S_in,
                    const EquivWitness& w) {
  if (!w.T) return false;  // only an extension was reported; nothing to count
  ++g_emitted;
  MoebiusMap T = *w.T;
  RationalMap R = R_in, S = S_in;
  unify(T, R);
  unify(T, S);
  unify(T, R);
  RationalMap image = apply_action(chi, T, R);
  if (chi.kind == ActionTag::ProjChiK) image = image.scaled(w.scalar);
  else if (!w.scalar.is_one()) return false;
  bool ok = image == S;
  if (ok) ++g_verified;
  return ok;
}

std::optional<EquivWitness> equivalent(const ActionTag& chi, const RationalMap& R,
                                       const RationalMap& S) {
  switch (chi.kind) {
    case ActionTag::ChiInf: return equiv_chi_inf(R, S);
    case ActionTag::ChiK: return equiv_chi_k(KForm{R, chi.k}, KForm{S, chi.k});
    case ActionTag::ProjChiK: return equiv_proj_chi_k(KForm{R, chi.k}, KForm{S, chi.k});
  }
  return std::nullopt;
}

int moebius_order(const MoebiusMap& T, int max_order) {
  MoebiusMap P = T;
  for (int m = 1; m <= max_order; ++m) {
    if (P.is_identity()) return m;
    P = P.compose(T).normalized();
  }
  return 0;
}

std::string GroupType::to_string() const {
  switch (kind) {
    case Zn: return "Z" + std::to_string(n);
    case Dn: return "D" + std::to_string(n);
    case A4: return "A4";
    case S4: return "S4";
    case A5: return "A5";
    case OneParameter: return "OneParameter";
  }
  return "?";
}

GroupType identify_group_type(const AutGroup& G) {
  if (G.kind == AutGroup::OneParameter) return {GroupType::OneParameter, 0};
  const auto& el = G.elements;
  auto contains = [&](const MoebiusMap& m) {
    for (const auto& e : el)
      if (e.proj_equal(m)) return true;
    return false;
  };
  if (el.empty() || !contains(MoebiusMap::identity(el.front().conductor())))
    throw Error(ErrorKind::NotAGroup, "identity missing");
  for (const auto& a : el) {
    if (!contains(a.inverse())) throw Error(ErrorKind::NotAGroup, "not closed under inverse");
    for (const auto& b : el)
      if (!contains(a.compose(b))) throw Error(ErrorKind::NotAGroup, "not closed under composition");
  }
  const int N = static_cast<int>(el.size());
  std::map<int, int> orders;
  for (const auto& e : el) ++orders[moebius_order(e)];
  if (orders.count(N)) return {GroupType::Zn, N};
  if (N % 2 == 0 && orders.count(N / 2) && N >= 4) {
    // dihedral: the non-rotation half consists of involutions
    int half = N / 2;
    int involutions = orders.count(2) ? orders[2] : 0;
    int expected = half + (half % 2 == 0 ? 1 : 0);
    if (half == 2) expected = 3;
    if (involutions == expected) return {GroupType::Dn, half};
  }
  auto match = [&](std::map<int, int> want) { return orders == want; };
  if (N == 12 && match({{1, 1}, {2, 3}, {3, 8}})) return {GroupType::A4, 12};
  if (N == 24 && match({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return {GroupType::S4, 24};
  if (N == 60 && match({{1, 1}, {2, 15}, {3, 20}, {5, 24}})) return {GroupType::A5, 60};
  throw Error(ErrorKind::UnclassifiedOrder, "order statistics match no characteristic-zero group");
}

}  // namespace moduli
