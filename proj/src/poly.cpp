#include "moduli/poly.hpp"

#include <algorithm>
#include <sstream>

namespace moduli {

namespace {

int unify(int a, int b) {
  if (a == b) return a;
  if (a <= 2 && euler_phi(a) == 1) return b;
  if (b <= 2 && euler_phi(b) == 1) return a;
  throw Error(ErrorKind::ConductorMismatch,
              "polynomial conductors " + std::to_string(a) + " and " + std::to_string(b));
}

CycloElement lift(const CycloElement& x, int n) {
  if (x.conductor() == n) return x;
  return CycloElement::zero(n) + x;
}

}  // namespace

KPoly::KPoly(int n) : n_(n) {}

KPoly::KPoly(int n, std::vector<CycloElement> coeffs) : n_(n), c_(std::move(coeffs)) {
  for (auto& x : c_) x = lift(x, n_);
  trim();
}

KPoly KPoly::constant(const CycloElement& c) { return KPoly(c.conductor(), {c}); }

KPoly KPoly::X(int n) { return KPoly(n, {CycloElement::zero(n), CycloElement::one(n)}); }

KPoly KPoly::linear_root(const CycloElement& r) {
  return KPoly(r.conductor(), {-r, CycloElement::one(r.conductor())});
}

void KPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycloElement KPoly::coeff(int i) const {
  return (i >= 0 && i <= degree()) ? c_[i] : CycloElement::zero(n_);
}

CycloElement KPoly::lead() const { return c_.empty() ? CycloElement::zero(n_) : c_.back(); }

CycloElement KPoly::eval(const CycloElement& x) const {
  CycloElement acc = CycloElement::zero(unify(n_, x.conductor()));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

KPoly KPoly::derivative() const {
  std::vector<CycloElement> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * CycloElement(n_, Rational(i)));
  return KPoly(n_, std::move(v));
}

KPoly KPoly::compose(const KPoly& inner) const {
  int n = unify(n_, inner.n_);
  KPoly acc(n);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + KPoly(n, {*it});
  return acc;
}

KPoly KPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(lead().inv());
}

KPoly KPoly::scaled(const CycloElement& s) const {
  int n = unify(n_, s.conductor());
  std::vector<CycloElement> v;
  for (const auto& x : c_) v.push_back(x * s);
  return KPoly(n, std::move(v));
}

KPoly KPoly::galois(long a) const {
  std::vector<CycloElement> v;
  for (const auto& x : c_) v.push_back(x.galois(a));
  return KPoly(n_, std::move(v));
}

KPoly KPoly::pow(int e) const {
  KPoly r(n_, {CycloElement::one(n_)});
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

KPoly KPoly::embed(int m) const {
  std::vector<CycloElement> v;
  for (const auto& x : c_) v.push_back(embed_conductor(x, m));
  return KPoly(m, std::move(v));
}

KPoly operator+(const KPoly& a, const KPoly& b) {
  int n = unify(a.n_, b.n_);
  std::vector<CycloElement> v(std::max(a.c_.size(), b.c_.size()), CycloElement::zero(n));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return KPoly(n, std::move(v));
}

KPoly operator-(const KPoly& a, const KPoly& b) {
  int n = unify(a.n_, b.n_);
  std::vector<CycloElement> v(std::max(a.c_.size(), b.c_.size()), CycloElement::zero(n));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return KPoly(n, std::move(v));
}

KPoly operator*(const KPoly& a, const KPoly& b) {
  int n = unify(a.n_, b.n_);
  if (a.is_zero() || b.is_zero()) return KPoly(n);
  std::vector<CycloElement> v(a.c_.size() + b.c_.size() - 1, CycloElement::zero(n));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return KPoly(n, std::move(v));
}

bool operator==(const KPoly& a, const KPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string KPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    CycloElement c = c_[i];
    const bool simple = c.is_rational();
    if (!first) {
      // rational negative coefficients print as a subtraction
      const bool negative = simple && c.coeffs()[0] < 0;
      os << (negative ? " - " : " + ");
      if (negative) c = -c;
    }
    first = false;
    std::string cs = c.to_string();
    if (i == 0) {
      os << (simple ? cs : "(" + cs + ")");
      continue;
    }
    if (!c.is_one()) {
      if (c == CycloElement(n_, Rational(-1))) os << "-";
      else os << (simple && c.coeffs()[0].get_den() == 1 ? cs : "(" + cs + ")") << "*";
    }
    os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

void divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  const int n = unify(a.conductor(), b.conductor());
  std::vector<CycloElement> rem = a.coeffs();
  int db = b.degree(), da = a.degree();
  std::vector<CycloElement> quo(std::max(0, da - db + 1), CycloElement::zero(n));
  CycloElement lbi = b.lead().inv();
  for (int i = da; i >= db; --i) {
    if (rem[i].is_zero()) continue;
    CycloElement f = rem[i] * lbi;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeffs()[j];
  }
  q = KPoly(n, std::move(quo));
  r = KPoly(n, std::move(rem));
}

KPoly exact_div(const KPoly& a, const KPoly& b) {
  KPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw Error(ErrorKind::InvariantViolation, "inexact polynomial division");
  return q;
}

KPoly gcd(const KPoly& a, const KPoly& b) {
  KPoly x = a, y = b;
  while (!y.is_zero()) {
    KPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

CycloElement eval_homogeneous(const KPoly& p, int d, const CycloElement& x, const CycloElement& y) {
  int n = unify(unify(p.conductor(), x.conductor()), y.conductor());
  CycloElement acc = CycloElement::zero(n);
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeffs()[i].is_zero()) continue;
    acc += p.coeffs()[i] * x.pow(i) * y.pow(d - i);
  }
  return acc;
}

namespace {

void strip_root(KPoly& p, const CycloElement& r, RootSplit& out) {
  int mult = 0;
  KPoly lin = KPoly::linear_root(r);
  while (p.degree() >= 1 && p.eval(r).is_zero()) {
    p = exact_div(p, lin);
    ++mult;
  }
  if (mult > 0) {
    for (auto& e : out.roots)
      if (e.first == r) {
        e.second += mult;
        return;
      }
    out.roots.emplace_back(r, mult);
  }
}

std::vector<CycloElement> small_candidates(int n) {
  static const int nums[] = {1, 2, 3, 4};
  std::vector<Rational> mags;
  for (int a : nums)
    for (int b : nums) {
      Rational q(a, b);
      q.canonicalize();
      if (std::find(mags.begin(), mags.end(), q) == mags.end()) mags.push_back(q);
    }
  std::vector<CycloElement> out;
  for (int j = 0; j < n; ++j) {
    CycloElement z = CycloElement::zeta(n, j);
    for (const auto& q : mags) {
      out.push_back(CycloElement(n, q) * z);
      if (n % 2 == 1) out.push_back(CycloElement(n, -q) * z);
    }
  }
  return out;
}

}  // namespace

RootSplit split_roots(const KPoly& p_in) {
  RootSplit out;
  if (p_in.is_zero()) throw Error(ErrorKind::ZeroMap, "roots of the zero polynomial");
  KPoly p = p_in.monic();
  const int n = p.conductor();
  strip_root(p, CycloElement::zero(n), out);
  bool progress = true;
  while (p.degree() >= 1 && progress) {
    progress = false;
    int d = p.degree();
    if (d == 1) {
      strip_root(p, -p.coeff(0), out);
      progress = true;
      continue;
    }
    if (d == 2) {
      CycloElement b = p.coeff(1), c = p.coeff(0);
      CycloElement disc = b * b - CycloElement(n, Rational(4)) * c;
      CycloElement half(n, Rational(1, 2));
      if (disc.is_zero()) {
        strip_root(p, -b * half, out);
        progress = true;
        continue;
      }
      RootResult s = root_extract(disc, 2);
      if (s.in_field) {
        strip_root(p, (-b + s.root) * half, out);
        strip_root(p, (-b - s.root) * half, out);
        progress = true;
        continue;
      }
    }
    // binomial z^d + c
    bool binomial = true;
    for (int i = 1; i < d; ++i)
      if (!p.coeff(i).is_zero()) binomial = false;
    if (d > 2 && binomial && n % d == 0) {
      RootResult s = root_extract(-p.coeff(0), d);
      if (s.in_field) {
        for (int j = 0; j < d; ++j) strip_root(p, s.root * CycloElement::zeta(n, (n / d) * j), out);
        progress = true;
        continue;
      }
    }
    // repeated factors: the squarefree part has the same roots in lower degree
    if (d >= 2) {
      KPoly sqf = exact_div(p, gcd(p, p.derivative()));
      if (sqf.degree() < d) {
        for (const auto& [r, m] : split_roots(sqf).roots) strip_root(p, r, out);
        if (p.degree() < d) {
          progress = true;
          continue;
        }
      }
    }
    for (const auto& cand : small_candidates(n)) {
      if (p.degree() < 1) break;
      if (p.eval(cand).is_zero()) {
        strip_root(p, cand, out);
        progress = true;
      }
    }
  }
  out.leftover = p;
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first.compare(b.first) < 0; });
  return out;
}

}  // namespace moduli
