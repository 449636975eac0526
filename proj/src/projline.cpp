#include "moduli/projline.hpp"

#include <algorithm>
#include <sstream>

namespace moduli {

namespace {

int unify_all(std::initializer_list<const CycloElement*> xs) {
  int n = 1;
  for (const auto* x : xs) {
    if (x->degree() == 1 && x->is_rational()) continue;
    if (n == 1) n = x->conductor();
    else if (n != x->conductor())
      throw Error(ErrorKind::ConductorMismatch,
                  "conductors " + std::to_string(n) + " and " + std::to_string(x->conductor()));
  }
  if (n == 1)
    for (const auto* x : xs) n = std::max(n, x->conductor());
  return n;
}

CycloElement to_n(const CycloElement& x, int n) {
  return x.conductor() == n ? x : CycloElement::zero(n) + x;
}

}  // namespace

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(const CycloElement& value) : x_(value), inf_(false) {}

ProjPoint::ProjPoint(const CycloElement& x, const CycloElement& y) {
  int n = unify_all({&x, &y});
  if (y.is_zero()) {
    if (x.is_zero()) throw Error(ErrorKind::InvariantViolation, "(0:0) is not a point");
    inf_ = true;
    x_ = CycloElement::zero(n);
  } else {
    x_ = to_n(x, n) / y;
  }
}

ProjPoint ProjPoint::infinity(int n) {
  ProjPoint p(CycloElement::zero(n));
  p.inf_ = true;
  return p;
}

const CycloElement& ProjPoint::value() const {
  if (inf_) throw Error(ErrorKind::InvariantViolation, "value of the point at infinity");
  return x_;
}

CycloElement ProjPoint::hx() const { return inf_ ? CycloElement::one(x_.conductor()) : x_; }
CycloElement ProjPoint::hy() const {
  return inf_ ? CycloElement::zero(x_.conductor()) : CycloElement::one(x_.conductor());
}

ProjPoint ProjPoint::galois(long a) const {
  return inf_ ? *this : ProjPoint(x_.galois(a));
}
ProjPoint ProjPoint::conj() const { return inf_ ? *this : ProjPoint(x_.conj()); }
ProjPoint ProjPoint::embed(int m) const {
  return inf_ ? infinity(m) : ProjPoint(embed_conductor(x_, m));
}

int ProjPoint::compare(const ProjPoint& o) const {
  if (inf_ || o.inf_) return (inf_ ? 1 : 0) - (o.inf_ ? 1 : 0);
  if (x_.conductor() != o.x_.conductor()) {
    CycloElement diff = x_ - o.x_;  // handles rational promotion or throws
    if (diff.is_zero()) return 0;
    int n = std::max(x_.conductor(), o.x_.conductor());
    return to_n(x_, n).compare(to_n(o.x_, n));
  }
  return x_.compare(o.x_);
}

std::string ProjPoint::to_string() const { return inf_ ? "inf" : x_.to_string(); }

// ---------------------------------------------------------------- MoebiusMap

MoebiusMap::MoebiusMap() : MoebiusMap(identity(1)) {}

MoebiusMap::MoebiusMap(CycloElement a, CycloElement b, CycloElement c, CycloElement d) {
  int n = unify_all({&a, &b, &c, &d});
  a_ = to_n(a, n);
  b_ = to_n(b, n);
  c_ = to_n(c, n);
  d_ = to_n(d, n);
  if (det().is_zero()) throw Error(ErrorKind::SingularMatrix, "ad - bc = 0");
}

MoebiusMap MoebiusMap::identity(int n) {
  return MoebiusMap(CycloElement::one(n), CycloElement::zero(n), CycloElement::zero(n),
                    CycloElement::one(n));
}

MoebiusMap MoebiusMap::scaling(const CycloElement& l) {
  int n = l.conductor();
  return MoebiusMap(l, CycloElement::zero(n), CycloElement::zero(n), CycloElement::one(n));
}

MoebiusMap MoebiusMap::inversion(const CycloElement& l) {
  int n = l.conductor();
  return MoebiusMap(CycloElement::zero(n), l, CycloElement::one(n), CycloElement::zero(n));
}

MoebiusMap MoebiusMap::translation(const CycloElement& t) {
  int n = t.conductor();
  return MoebiusMap(CycloElement::one(n), t, CycloElement::zero(n), CycloElement::one(n));
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
  return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                    c_ * o.b_ + d_ * o.d_);
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

ProjPoint MoebiusMap::apply(const ProjPoint& p) const {
  CycloElement x = p.hx(), y = p.hy();
  return ProjPoint(a_ * x + b_ * y, c_ * x + d_ * y);
}

MoebiusMap MoebiusMap::galois(long a) const {
  return MoebiusMap(a_.galois(a), b_.galois(a), c_.galois(a), d_.galois(a));
}

MoebiusMap MoebiusMap::conj() const { return MoebiusMap(a_.conj(), b_.conj(), c_.conj(), d_.conj()); }

MoebiusMap MoebiusMap::embed(int m) const {
  return MoebiusMap(embed_conductor(a_, m), embed_conductor(b_, m), embed_conductor(c_, m),
                    embed_conductor(d_, m));
}

MoebiusMap MoebiusMap::scaled(const CycloElement& s) const {
  return MoebiusMap(a_ * s, b_ * s, c_ * s, d_ * s);
}

MoebiusMap MoebiusMap::normalized() const {
  for (const CycloElement* e : {&a_, &b_, &c_, &d_})
    if (!e->is_zero()) return scaled(e->inv());
  return *this;
}

bool MoebiusMap::proj_equal(const MoebiusMap& o) const {
  // all 2x2 minors of the 2x4 matrix of entries vanish
  const CycloElement* u[4] = {&a_, &b_, &c_, &d_};
  const CycloElement* v[4] = {&o.a_, &o.b_, &o.c_, &o.d_};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(*u[i] * *v[j] - *u[j] * *v[i]).is_zero()) return false;
  return true;
}

bool MoebiusMap::is_identity() const { return proj_equal(identity(conductor())); }

int MoebiusMap::compare(const MoebiusMap& o) const {
  MoebiusMap x = normalized(), y = o.normalized();
  const CycloElement* u[4] = {&x.a_, &x.b_, &x.c_, &x.d_};
  const CycloElement* v[4] = {&y.a_, &y.b_, &y.c_, &y.d_};
  for (int i = 0; i < 4; ++i) {
    int s = u[i]->compare(*v[i]);
    if (s != 0) return s;
  }
  return 0;
}

std::string MoebiusMap::to_string() const {
  MoebiusMap m = normalized();
  return "[[" + m.a_.to_string() + ", " + m.b_.to_string() + "], [" + m.c_.to_string() + ", " +
         m.d_.to_string() + "]]";
}

// ---------------------------------------------------------------- three points

namespace {

// Matrix sending inf, 0, 1 to p1, p2, p3.
MoebiusMap from_standard(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
  if (p1 == p2 || p1 == p3 || p2 == p3) throw Error(ErrorKind::DegenerateTriple, "points not distinct");
  CycloElement x1 = p1.hx(), y1 = p1.hy(), x2 = p2.hx(), y2 = p2.hy(), x3 = p3.hx(), y3 = p3.hy();
  // alpha v1 + beta v2 = v3
  CycloElement det = x1 * y2 - x2 * y1;
  CycloElement alpha = (x3 * y2 - x2 * y3) / det;
  CycloElement beta = (x1 * y3 - x3 * y1) / det;
  return MoebiusMap(alpha * x1, beta * x2, alpha * y1, beta * y2);
}

}  // namespace

MoebiusMap three_point_map(const ProjPoint (&src)[3], const ProjPoint (&dst)[3]) {
  MoebiusMap s = from_standard(src[0], src[1], src[2]);
  MoebiusMap d = from_standard(dst[0], dst[1], dst[2]);
  return d.compose(s.inverse());
}

MoebiusMap three_point_map(const std::vector<ProjPoint>& src, const std::vector<ProjPoint>& dst) {
  if (src.size() != 3 || dst.size() != 3)
    throw Error(ErrorKind::DegenerateTriple, "three points required");
  const ProjPoint s[3] = {src[0], src[1], src[2]};
  const ProjPoint d[3] = {dst[0], dst[1], dst[2]};
  return three_point_map(s, d);
}

ProjPoint cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                      const ProjPoint& p4) {
  int n = std::max({p1.conductor(), p2.conductor(), p3.conductor(), p4.conductor()});
  const ProjPoint s[3] = {p1, p2, p3};
  const ProjPoint d[3] = {ProjPoint::infinity(n), ProjPoint(CycloElement::zero(n)),
                          ProjPoint(CycloElement::one(n))};
  return three_point_map(s, d).apply(p4);
}

// ---------------------------------------------------------------- Divisor

void Divisor::add(const ProjPoint& p, int mult) {
  if (mult == 0) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), p,
                             [](const auto& e, const ProjPoint& q) { return e.first < q; });
  if (it != t_.end() && it->first == p) {
    it->second += mult;
    if (it->second == 0) t_.erase(it);
    return;
  }
  t_.insert(it, {p, mult});
}

int Divisor::degree() const {
  int s = 0;
  for (const auto& e : t_) s += e.second;
  return s;
}

int Divisor::order_at(const ProjPoint& p) const {
  for (const auto& e : t_)
    if (e.first == p) return e.second;
  return 0;
}

std::vector<ProjPoint> Divisor::support() const {
  std::vector<ProjPoint> s;
  for (const auto& e : t_) s.push_back(e.first);
  return s;
}

Divisor Divisor::negated() const {
  Divisor d;
  for (const auto& e : t_) d.add(e.first, -e.second);
  return d;
}

Divisor Divisor::galois(long a) const {
  Divisor d;
  for (const auto& e : t_) d.add(e.first.galois(a), e.second);
  return d;
}

Divisor Divisor::embed(int m) const {
  Divisor d;
  for (const auto& e : t_) d.add(e.first.embed(m), e.second);
  return d;
}

bool operator==(const Divisor& a, const Divisor& b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].first != b.t_[i].first || a.t_[i].second != b.t_[i].second) return false;
  return true;
}

std::string Divisor::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : t_) {
    int a = m < 0 ? -m : m;
    if (first) os << (m < 0 ? "-" : "");
    else os << (m < 0 ? " - " : " + ");
    first = false;
    if (a != 1) os << a;
    os << "[" << p.to_string() << "]";
  }
  return os.str();
}

Divisor pullback_divisor(const MoebiusMap& T, const Divisor& D) {
  MoebiusMap inv = T.inverse();
  Divisor out;
  for (const auto& [p, m] : D.terms()) out.add(inv.apply(p), m);
  return out;
}

}  // namespace moduli
