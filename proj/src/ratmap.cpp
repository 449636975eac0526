#include "moduli/ratmap.hpp"

#include <algorithm>
#include <sstream>

namespace moduli {

namespace {

KPoly expand_roots(int n, const Divisor& div, int sign) {
  KPoly acc(n, {CycloElement::one(n)});
  for (const auto& [p, m] : div.terms()) {
    if (m * sign <= 0) continue;
    acc = acc * KPoly::linear_root(p.value()).pow(m * sign);
  }
  return acc;
}

int unify_n(int a, int b) {
  if (a == b) return a;
  if (euler_phi(a) == 1) return b;
  if (euler_phi(b) == 1) return a;
  throw Error(ErrorKind::ConductorMismatch,
              "map conductors " + std::to_string(a) + " and " + std::to_string(b));
}

// Strip the supplied roots, then run the restricted finder on the rest.
bool factor_into(const KPoly& poly, const std::vector<CycloElement>* roots, bool find,
                 int sign, Divisor& div) {
  KPoly p = poly;
  if (roots) {
    for (const auto& r : *roots) {
      KPoly lin = KPoly::linear_root(CycloElement::zero(p.conductor()) + r);
      while (p.degree() >= 1) {
        KPoly q, rem;
        divmod(p, lin, q, rem);
        if (!rem.is_zero()) break;
        p = q;
        div.add(ProjPoint(CycloElement::zero(p.conductor()) + r), sign);
      }
    }
  }
  if (p.degree() <= 0) return true;
  if (!find) return false;
  RootSplit s = split_roots(p);
  if (!s.complete()) return false;
  for (const auto& [r, m] : s.roots) div.add(ProjPoint(r), sign * m);
  return true;
}

}  // namespace

RationalMap RationalMap::from_factored(const CycloElement& scalar, const Divisor& div) {
  if (scalar.is_zero()) throw Error(ErrorKind::ZeroMap, "zero scalar");
  int n = scalar.conductor();
  for (const auto& [p, m] : div.terms()) {
    if (p.is_infinity())
      throw Error(ErrorKind::InvariantViolation, "map divisor lists infinity; it is implicit");
    n = unify_n(n, p.conductor());
  }
  Divisor lifted;
  for (const auto& [p, m] : div.terms()) lifted.add(ProjPoint(CycloElement::zero(n) + p.value()), m);
  RationalMap R;
  R.n_ = n;
  R.P_ = expand_roots(n, lifted, 1);
  R.Q_ = KPoly::constant(CycloElement::zero(n) + scalar.inv()) * expand_roots(n, div, -1);
  R.factored_ = true;
  R.c_ = CycloElement::zero(n) + scalar;
  R.div_ = lifted;
  return R;
}

RationalMap RationalMap::constant(const CycloElement& c) { return from_factored(c, Divisor()); }

RationalMap RationalMap::identity(int n) {
  Divisor d;
  d.add(ProjPoint(CycloElement::zero(n)), 1);
  return from_factored(CycloElement::one(n), d);
}

const CycloElement& RationalMap::scalar() const {
  if (!factored_) throw Error(ErrorKind::FactoredFormRequired, "map has coefficient form only");
  return c_;
}

const Divisor& RationalMap::finite_divisor() const {
  if (!factored_) throw Error(ErrorKind::FactoredFormRequired, "map has coefficient form only");
  return div_;
}

int RationalMap::coefficient_conductor() const {
  std::vector<CycloElement> cs = P_.coeffs();
  cs.insert(cs.end(), Q_.coeffs().begin(), Q_.coeffs().end());
  for (int m = 1; m <= n_; ++m) {
    if (n_ % m != 0) continue;
    bool ok = true;
    for (int a : units_mod(n_)) {
      if (a % m != 1 % m) continue;
      for (const auto& c : cs)
        if (c.galois(a) != c) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return m;
  }
  return n_;
}

RationalMap normalize(const KPoly& P_raw, const KPoly& Q_raw, const std::vector<CycloElement>* roots,
                      bool find_roots) {
  if (P_raw.is_zero()) throw Error(ErrorKind::ZeroMap, "numerator is zero");
  if (Q_raw.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator is zero");
  int n = unify_n(P_raw.conductor(), Q_raw.conductor());
  KPoly P = P_raw, Q = Q_raw;
  KPoly g = gcd(P, Q);
  if (g.degree() > 0) {
    P = exact_div(P, g);
    Q = exact_div(Q, g);
  }
  CycloElement li = P.lead().inv();
  RationalMap R;
  R.n_ = n;
  R.P_ = KPoly(n, P.scaled(li).coeffs());
  R.Q_ = KPoly(n, Q.scaled(li).coeffs());
  Divisor div;
  if (factor_into(R.P_, roots, find_roots, 1, div) && factor_into(R.Q_, roots, find_roots, -1, div)) {
    R.factored_ = true;
    R.c_ = R.Q_.lead().inv();
    R.div_ = div;
  }
  return R;
}

CycloElement RationalMap::eval(const CycloElement& z) const {
  CycloElement q = Q_.eval(z);
  if (q.is_zero()) throw Error(ErrorKind::DivisionByZero, "evaluation at a pole");
  return P_.eval(z) / q;
}

ProjPoint RationalMap::evaluate_extended(const ProjPoint& p) const {
  int d = degree();
  CycloElement x = p.hx(), y = p.hy();
  return ProjPoint(eval_homogeneous(P_, d, x, y), eval_homogeneous(Q_, d, x, y));
}

RationalMap RationalMap::galois(long a) const {
  RationalMap R = *this;
  R.P_ = P_.galois(a);
  R.Q_ = Q_.galois(a);
  if (factored_) {
    R.c_ = c_.galois(a);
    R.div_ = div_.galois(a);
  }
  return R;
}

RationalMap RationalMap::conj() const { return galois(n_ - 1); }

RationalMap RationalMap::embed(int m) const {
  RationalMap R = *this;
  R.n_ = m;
  R.P_ = P_.embed(m);
  R.Q_ = Q_.embed(m);
  if (factored_) {
    R.c_ = embed_conductor(c_, m);
    R.div_ = div_.embed(m);
  }
  return R;
}

RationalMap RationalMap::reciprocal() const {
  if (factored_) return from_factored(c_.inv(), div_.negated());
  return normalize(Q_, P_, nullptr, false);
}

RationalMap RationalMap::scaled(const CycloElement& s) const {
  if (factored_) return from_factored(c_ * s, div_);
  return normalize(P_.scaled(s), Q_, nullptr, false);
}

RationalMap RationalMap::times(const RationalMap& o) const {
  if (factored_ && o.factored_) {
    Divisor d = div_;
    for (const auto& [p, m] : o.div_.terms()) d.add(p, m);
    return from_factored(c_ * o.c_, d);
  }
  return normalize(P_ * o.P_, Q_ * o.Q_, nullptr, false);
}

RationalMap RationalMap::power(int e) const {
  if (e < 0) return reciprocal().power(-e);
  RationalMap r = constant(CycloElement::one(n_));
  for (int i = 0; i < e; ++i) r = r.times(*this);
  return r;
}

bool operator==(const RationalMap& a, const RationalMap& b) { return a.P_ == b.P_ && a.Q_ == b.Q_; }

std::string RationalMap::to_string() const {
  if (Q_.degree() == 0 && Q_.lead().is_one()) return P_.to_string();
  return "(" + P_.to_string() + ")/(" + Q_.to_string() + ")";
}

std::string RationalMap::factored_string() const {
  if (!factored_) return to_string();
  std::ostringstream os;
  os << "(" << c_.to_string() << ")";
  for (const auto& [p, m] : div_.terms()) {
    os << " * (z";
    if (!p.value().is_zero()) os << " - (" << p.value().to_string() << ")";
    os << ")^" << m;
  }
  return os.str();
}

RationalMap compose(const RationalMap& R, const RationalMap& S) {
  const int d = R.degree();
  int n = unify_n(R.conductor(), S.conductor());
  const KPoly& A = S.numerator();
  const KPoly& B = S.denominator();
  std::vector<KPoly> Apow{KPoly(n, {CycloElement::one(n)})}, Bpow{KPoly(n, {CycloElement::one(n)})};
  for (int i = 1; i <= d; ++i) {
    Apow.push_back(Apow.back() * A);
    Bpow.push_back(Bpow.back() * B);
  }
  KPoly num(n), den(n);
  for (int i = 0; i <= d; ++i) {
    KPoly mono = Apow[i] * Bpow[d - i];
    num = num + mono.scaled(R.numerator().coeff(i));
    den = den + mono.scaled(R.denominator().coeff(i));
  }
  return normalize(num, den, nullptr, false);
}

std::optional<RationalMap> derivative(const RationalMap& R) {
  if (R.is_constant()) return std::nullopt;
  const KPoly& P = R.numerator();
  const KPoly& Q = R.denominator();
  KPoly W = P.derivative() * Q - P * Q.derivative();
  return normalize(W, Q * Q, nullptr, false);
}

Divisor kform_divisor(const KForm& w) {
  Divisor d = w.R.finite_divisor();
  int n = w.R.conductor();
  int ord_inf = (w.R.denominator().degree() - w.R.numerator().degree()) - 2 * w.k;
  d.add(ProjPoint::infinity(n), ord_inf);
  return d;
}

KForm theta_involution(const KForm& w) { return KForm{w.R.reciprocal(), -w.k}; }

std::string MarkedPoint::role() const {
  if (is_fixed() && is_critical()) return "both";
  return is_fixed() ? "fixed" : "critical";
}

FixedCriticalPolys fixed_critical_polys(const RationalMap& R) {
  const int d = R.degree();
  const KPoly& P = R.numerator();
  const KPoly& Q = R.denominator();
  FixedCriticalPolys out{P - KPoly::X(R.conductor()) * Q, d + 1,
                         P.derivative() * Q - P * Q.derivative(), 2 * d - 2};
  return out;
}

CycloElement multiplier_at(const RationalMap& R, const ProjPoint& p) {
  const KPoly& P = R.numerator();
  const KPoly& Q = R.denominator();
  int n = R.conductor();
  if (p.is_infinity()) {
    int dp = P.degree(), dq = Q.degree();
    if (dp >= dq + 2) return CycloElement::zero(n);
    if (dp == dq + 1) return Q.lead() / P.lead();
    throw Error(ErrorKind::InvariantViolation, "infinity is not a fixed point");
  }
  CycloElement z = p.value();
  CycloElement q = Q.eval(z);
  if (q.is_zero() || P.eval(z) != z * q)
    throw Error(ErrorKind::InvariantViolation, p.to_string() + " is not a fixed point");
  return (P.derivative().eval(z) * q - P.eval(z) * Q.derivative().eval(z)) / (q * q);
}

MarkedSet fixed_marked_set(const RationalMap& R) {
  if (R.degree() < 1) throw Error(ErrorKind::InvariantViolation, "fixed points of a constant map");
  FixedCriticalPolys fc = fixed_critical_polys(R);
  if (fc.fixed.is_zero()) throw Error(ErrorKind::UnsupportedConfiguration, "identity map");
  const int n = R.conductor();
  std::vector<MarkedPoint> pts;
  auto slot = [&](const ProjPoint& p) -> MarkedPoint& {
    for (auto& m : pts)
      if (m.p == p) return m;
    pts.push_back(MarkedPoint{p, 0, std::nullopt, 1});
    return pts.back();
  };
  RootSplit fs = split_roots(fc.fixed);
  if (!fs.complete())
    throw Error(ErrorKind::RootsNotInField, "fixed-point factor " + fs.leftover.to_string());
  for (const auto& [r, m] : fs.roots) slot(ProjPoint(r)).fixed_multiplicity = m;
  int inf_fixed = fc.fixed_degree - fc.fixed.degree();
  if (inf_fixed > 0) slot(ProjPoint::infinity(n)).fixed_multiplicity = inf_fixed;
  if (!fc.wronskian.is_zero()) {
    RootSplit cs = split_roots(fc.wronskian);
    if (!cs.complete())
      throw Error(ErrorKind::RootsNotInField, "critical factor " + cs.leftover.to_string());
    for (const auto& [r, m] : cs.roots) slot(ProjPoint(r)).local_degree = m + 1;
    int inf_crit = fc.wronskian_degree - fc.wronskian.degree();
    if (inf_crit > 0) slot(ProjPoint::infinity(n)).local_degree = inf_crit + 1;
  }
  for (auto& m : pts)
    if (m.is_fixed()) m.multiplier = multiplier_at(R, m.p);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  return pts;
}

}  // namespace moduli
