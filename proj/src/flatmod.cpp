#include "moduli/flatmod.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace moduli {

CycloElement j_invariant(const CycloElement& mu) {
  const int n = mu.conductor();
  CycloElement one = CycloElement::one(n);
  if (mu.is_zero() || mu == one) throw Error(ErrorKind::DegenerateMu, "mu must avoid 0 and 1");
  CycloElement u = one - mu + mu * mu;
  return u.pow(3) / (mu * mu * (one - mu) * (one - mu));
}

std::string FlatSignature::to_string() const {
  std::ostringstream os;
  os << "support " << support_size << ", orders {";
  for (size_t i = 0; i < orders.size(); ++i)
    os << (i ? ", " : "") << orders[i].first.to_string() << ": " << orders[i].second;
  os << "}, integrable " << (integrable ? "yes" : "no");
  return os.str();
}

FlatSignature flat_signature(const KForm& w) {
  if (w.k != 2) throw Error(ErrorKind::PreconditionViolated, "flat signatures are defined for k = 2");
  if (!w.R.has_factored()) throw Error(ErrorKind::FactoredFormRequired, "zeros and poles must be known");
  Divisor D = kform_divisor(w);
  FlatSignature s;
  s.integrable = true;
  for (const auto& p : D.support()) {
    int o = D.order_at(p);
    s.orders.emplace_back(p, o);
    if (o <= -2) s.integrable = false;
  }
  s.support_size = static_cast<int>(s.orders.size());
  if (D.degree() != -4) throw Error(ErrorKind::InvariantViolation, "quadratic form of degree " + std::to_string(D.degree()));
  return s;
}

namespace {

const std::array<const char*, 6> kAnharmonic = {"z", "1/z", "1-z", "1/(1-z)", "z/(z-1)", "(z-1)/z"};

CycloElement anharmonic(int i, const CycloElement& x) {
  CycloElement one = CycloElement::one(x.conductor());
  switch (i) {
    case 0: return x;
    case 1: return one / x;
    case 2: return one - x;
    case 3: return one / (one - x);
    case 4: return x / (x - one);
    default: return (x - one) / x;
  }
}

}  // namespace

std::string FourPointModuli::to_string() const {
  std::ostringstream os;
  os << "compatible {";
  for (size_t i = 0; i < compatible.size(); ++i) os << (i ? ", " : "") << compatible[i];
  os << "}\nlower: " << lower.to_string() << "\nupper: " << upper.to_string()
     << "\nresolved: " << resolved.to_string() << "\nindex in Q(mu): " << index;
  return os.str();
}

FourPointModuli four_point_moduli(int a, int b, int c, const CycloElement& mu) {
  if (a == 0 || b == 0 || c == 0 || a + b + c <= -4)
    throw Error(ErrorKind::DegenerateExponents, "need nonzero a, b, c with a + b + c > -4");
  const int n = mu.conductor();
  FourPointModuli out;
  out.lower = generated_field(j_invariant(mu));
  out.upper = generated_field(mu);

  // exponent-preserving relabellings of (inf, 0, 1, mu), read off on a generic value
  const std::array<int, 4> e = {-4 - a - b - c, a, b, c};
  const CycloElement t(1, Rational(5));
  const std::array<ProjPoint, 4> pts = {ProjPoint::infinity(1), ProjPoint(CycloElement(1, Rational(0))),
                                        ProjPoint(CycloElement(1, Rational(1))), ProjPoint(t)};
  std::set<int> maps;
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    bool ok = true;
    for (int i = 0; i < 4; ++i) ok = ok && e[perm[i]] == e[i];
    if (!ok) continue;
    ProjPoint v = cross_ratio(pts[perm[0]], pts[perm[1]], pts[perm[2]], pts[perm[3]]);
    for (int g = 0; g < 6; ++g)
      if (!v.is_infinity() && v.value() == anharmonic(g, t)) maps.insert(g);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int g : maps) out.compatible.push_back(kAnharmonic[g]);

  std::vector<long> U;
  for (int s : units_mod(n)) {
    CycloElement im = mu.galois(s);
    for (int g : maps)
      if (im == anharmonic(g, mu)) {
        U.push_back(s);
        break;
      }
  }
  out.resolved = reduce_conductor(fixed_field(n, U));
  out.index = out.upper.degree / out.resolved.degree;
  return out;
}

std::pair<int, int> three_point_normal_form(const KForm& w) {
  Divisor D = kform_divisor(w);
  std::vector<ProjPoint> supp = D.support();
  if (supp.size() != 3) throw Error(ErrorKind::SupportSizeMismatch, "support has " + std::to_string(supp.size()) + " points");
  size_t pole = 3;
  for (size_t i = 0; i < 3; ++i)
    if (D.order_at(supp[i]) < 0 && (pole == 3 || D.order_at(supp[i]) < D.order_at(supp[pole]))) pole = i;
  if (pole == 3) throw Error(ErrorKind::PreconditionViolated, "no pole to send to infinity");
  std::vector<ProjPoint> rest;
  for (size_t i = 0; i < 3; ++i)
    if (i != pole) rest.push_back(supp[i]);
  const int n = w.R.conductor();
  MoebiusMap M = three_point_map(std::vector<ProjPoint>{supp[pole], rest[0], rest[1]},
                                 std::vector<ProjPoint>{ProjPoint::infinity(n), ProjPoint(CycloElement::zero(n)),
                                                        ProjPoint(CycloElement::one(n))});
  Divisor E;
  for (const auto& p : supp) E.add(M.apply(p), D.order_at(p));
  return {E.order_at(ProjPoint(CycloElement::zero(n))), E.order_at(ProjPoint(CycloElement::one(n)))};
}

}  // namespace moduli
