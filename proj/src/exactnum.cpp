#include "moduli/exactnum.hpp"

#include "radical.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace moduli {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ConductorMismatch: return "ConductorMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::ZeroRadicand: return "ZeroRadicand";
    case ErrorKind::NotSquareFreeCertified: return "NotSquareFreeCertified";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::ZeroMap: return "ZeroMap";
    case ErrorKind::FactoredFormRequired: return "FactoredFormRequired";
    case ErrorKind::RootsNotInField: return "RootsNotInField";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::UnclassifiedOrder: return "UnclassifiedOrder";
    case ErrorKind::InfiniteAutomorphismGroup: return "InfiniteAutomorphismGroup";
    case ErrorKind::DescentVerificationFailed: return "DescentVerificationFailed";
    case ErrorKind::Obstructed: return "Obstructed";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateMu: return "DegenerateMu";
    case ErrorKind::DegenerateExponents: return "DegenerateExponents";
    case ErrorKind::SupportSizeMismatch: return "SupportSizeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }
long mod_long(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

int euler_phi(int n) {
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<int> units_mod(int n) {
  if (n <= 2) return {1};
  std::vector<int> u;
  for (int a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) u.push_back(a);
  return u;
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rational& c, int deg) {
  std::vector<Rational> v(deg + 1, Rational(0));
  v[deg] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
  return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rational> v = c_;
  Rational l = c_.back();
  for (auto& x : v) x /= l;
  return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(v));
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (!unit || i == 0) {
      if (a.get_den() == 1) os << a.get_str();
      else os << "(" << a.get_str() << ")";
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  std::vector<Rational> quo(std::max(0, da - db + 1), Rational(0));
  Rational lb = b.lead();
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    Rational f = rem[i] / lb;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeffs()[j];
  }
  q = QPoly(std::move(quo));
  r = QPoly(std::move(rem));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& u) {
  QPoly r0 = a, r1 = b;
  QPoly s0({Rational(1)}), s1;
  QPoly u0, u1({Rational(1)});
  while (!r1.is_zero()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    r0 = r1;
    r1 = r;
    QPoly s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    QPoly u2 = u0 - q * u1;
    u0 = u1;
    u1 = u2;
  }
  Rational l = r0.lead();
  QPoly inv_l({Rational(1) / l});
  s = s0 * inv_l;
  u = u0 * inv_l;
  return r0 * inv_l;
}

namespace {

QPoly compute_cyclotomic(int n) {
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<Rational> v(n + 1, Rational(0));
  v[0] = -1;
  v[n] = 1;
  QPoly num(std::move(v));
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    QPoly q, r;
    divmod(num, cyclotomic_polynomial(d), q, r);
    num = q;
  }
  return num;
}

}  // namespace

const QPoly& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QPoly>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  QPoly p = compute_cyclotomic(n);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QPoly>(std::move(p));
  return *slot;
}

// ---------------------------------------------------------------- CycloField

struct CycloField {
  int n = 1;
  int phi = 1;
  QPoly modulus;
  // reduced[e] = t^e mod Phi_n for 0 <= e < n
  std::vector<std::vector<Rational>> reduced;
};

namespace {

std::shared_ptr<const CycloField> build_field(int n) {
  auto f = std::make_shared<CycloField>();
  f->n = n;
  f->phi = euler_phi(n);
  f->modulus = cyclotomic_polynomial(n);
  f->reduced.resize(n);
  for (int e = 0; e < n; ++e) {
    QPoly q, r;
    divmod(QPoly::monomial(Rational(1), e), f->modulus, q, r);
    std::vector<Rational> v(f->phi, Rational(0));
    for (int i = 0; i <= r.degree(); ++i) v[i] = r.coeffs()[i];
    f->reduced[e] = std::move(v);
  }
  return f;
}

std::shared_ptr<const CycloField> field_for(int n) {
  if (n < 1) throw Error(ErrorKind::InvariantViolation, "conductor must be positive");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloField>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto f = build_field(n);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = f;
  return slot;
}

}  // namespace

CycloElement::CycloElement() : CycloElement(1, Rational(0)) {}

CycloElement::CycloElement(int n, const Rational& r) : f_(field_for(n)) {
  c_.assign(f_->phi, Rational(0));
  c_[0] = r;
}

CycloElement::CycloElement(int n, std::vector<Rational> coeffs) : f_(field_for(n)) {
  if (static_cast<int>(coeffs.size()) == f_->phi) {
    c_ = std::move(coeffs);
    return;
  }
  // Longer vectors are interpreted as polynomials in zeta and reduced.
  c_.assign(f_->phi, Rational(0));
  for (size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == 0) continue;
    const auto& red = f_->reduced[e % f_->n];
    for (int i = 0; i < f_->phi; ++i)
      if (red[i] != 0) c_[i] += coeffs[e] * red[i];
  }
}

CycloElement CycloElement::zeta(int n, long power) {
  auto f = field_for(n);
  CycloElement x(n, Rational(0));
  x.c_ = f->reduced[mod_long(power, n)];
  return x;
}

int CycloElement::conductor() const { return f_->n; }
int CycloElement::degree() const { return f_->phi; }

bool CycloElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool CycloElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycloElement::is_one() const { return is_rational() && c_[0] == 1; }

std::optional<Rational> CycloElement::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

void CycloElement::align(const CycloElement& o) {
  if (o.f_->n == f_->n) return;
  if (o.f_->phi == 1 && o.is_rational()) return;  // rational operand, handled by callers
  if (f_->phi == 1) {
    Rational r = c_[0];
    *this = CycloElement(o.f_->n, r);
    return;
  }
  throw Error(ErrorKind::ConductorMismatch,
              "conductors " + std::to_string(f_->n) + " and " + std::to_string(o.f_->n));
}

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  align(o);
  if (o.f_->n != f_->n) {
    c_[0] += o.c_[0];
    return *this;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
  align(o);
  if (o.f_->n != f_->n) {
    c_[0] -= o.c_[0];
    return *this;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElement& CycloElement::operator*=(const CycloElement& o) {
  align(o);
  if (o.f_->n != f_->n) {
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  const int phi = f_->phi;
  std::vector<Rational> prod(2 * phi - 1, Rational(0));
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  std::vector<Rational> out(phi, Rational(0));
  for (int e = 0; e < 2 * phi - 1; ++e) {
    if (prod[e] == 0) continue;
    if (e < phi) {
      out[e] += prod[e];
      continue;
    }
    const auto& red = f_->reduced[e % f_->n];
    for (int i = 0; i < phi; ++i)
      if (red[i] != 0) out[i] += prod[e] * red[i];
  }
  c_ = std::move(out);
  return *this;
}

CycloElement& CycloElement::operator/=(const CycloElement& o) {
  align(o);
  if (o.f_->n != f_->n) {
    if (o.c_[0] == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
    for (auto& x : c_) x /= o.c_[0];
    return *this;
  }
  return *this *= o.inv();
}

bool operator==(const CycloElement& a, const CycloElement& b) {
  if (a.f_->n == b.f_->n) return a.c_ == b.c_;
  if (a.f_->phi == 1 || b.f_->phi == 1) {
    // Compare rational against rational
    auto ra = a.as_rational(), rb = b.as_rational();
    return ra && rb && *ra == *rb;
  }
  throw Error(ErrorKind::ConductorMismatch,
              "comparing conductors " + std::to_string(a.f_->n) + " and " + std::to_string(b.f_->n));
}

CycloElement CycloElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_rational()) return CycloElement(f_->n, Rational(1) / c_[0]);
  QPoly s, u;
  QPoly g = xgcd(QPoly(c_), f_->modulus, s, u);
  if (g.degree() != 0) throw Error(ErrorKind::DivisionByZero, "element not invertible");
  std::vector<Rational> v(f_->phi, Rational(0));
  for (int i = 0; i <= s.degree(); ++i) v[i] = s.coeffs()[i];
  return CycloElement(f_->n, std::move(v));
}

CycloElement CycloElement::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycloElement result = CycloElement::one(f_->n);
  CycloElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycloElement CycloElement::galois(long a) const {
  const int n = f_->n;
  if (std::gcd(mod_long(a, n), static_cast<long>(n)) != 1 && n > 1)
    throw Error(ErrorKind::InvariantViolation, "Galois exponent not a unit");
  std::vector<Rational> out(f_->phi, Rational(0));
  for (int i = 0; i < f_->phi; ++i) {
    if (c_[i] == 0) continue;
    const auto& red = f_->reduced[mod_long(a * i, n)];
    for (int j = 0; j < f_->phi; ++j)
      if (red[j] != 0) out[j] += c_[i] * red[j];
  }
  return CycloElement(n, std::move(out));
}

CycloElement CycloElement::conj() const { return galois(f_->n - 1); }

int CycloElement::compare(const CycloElement& o) const {
  if (f_->n != o.f_->n) return f_->n < o.f_->n ? -1 : 1;
  for (size_t i = 0; i < c_.size(); ++i) {
    int s = cmp(c_[i], o.c_[i]);
    if (s != 0) return s < 0 ? -1 : 1;
  }
  return 0;
}

std::string CycloElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < f_->phi; ++i) {
    Rational c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (!unit || i == 0) {
      if (a.get_den() == 1) os << a.get_str();
      else os << "(" << a.get_str() << ")";
      if (i > 0) os << "*";
    }
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

CycloElement cyclo_arith(const CycloElement& x, const CycloElement& y, CycloOp op) {
  switch (op) {
    case CycloOp::add: return x + y;
    case CycloOp::mul: return x * y;
    case CycloOp::inv: return x.inv();
    case CycloOp::conj: return x.conj();
  }
  return x;
}

int common_conductor(int a, int b) { return static_cast<int>(std::lcm(a, b)); }

CycloElement embed_conductor(const CycloElement& x, int m) {
  const int n = x.conductor();
  if (m % n != 0)
    throw Error(ErrorKind::NotDivisible,
                "conductor " + std::to_string(n) + " does not divide " + std::to_string(m));
  const int s = m / n;
  CycloElement out = CycloElement::zero(m);
  for (int i = 0; i < x.degree(); ++i) {
    const Rational& c = x.coeffs()[i];
    if (c != 0) out += CycloElement::zeta(m, static_cast<long>(i) * s) * CycloElement(m, c);
  }
  return out;
}

QPoly minimal_polynomial(const CycloElement& x) {
  // Product over the distinct Galois conjugates of x; coefficients land in Q.
  const int n = x.conductor();
  std::vector<CycloElement> orbit;
  for (int a : units_mod(n)) {
    CycloElement y = x.galois(a);
    bool seen = false;
    for (const auto& z : orbit)
      if (z == y) {
        seen = true;
        break;
      }
    if (!seen) orbit.push_back(y);
  }
  std::vector<CycloElement> poly{CycloElement::one(n)};
  for (const auto& r : orbit) {
    std::vector<CycloElement> next(poly.size() + 1, CycloElement::zero(n));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * r;
    }
    poly = std::move(next);
  }
  std::vector<Rational> c;
  for (const auto& e : poly) {
    auto r = e.as_rational();
    if (!r) throw Error(ErrorKind::InvariantViolation, "minimal polynomial not rational");
    c.push_back(*r);
  }
  return QPoly(std::move(c));
}

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

Sign sign_of_real(const CycloElement& x) {
  if (x.conj() != x) throw Error(ErrorKind::NotReal, x.to_string() + " is not real");
  if (x.is_zero()) return Sign::zero;
  if (auto r = x.as_rational()) return *r > 0 ? Sign::positive : Sign::negative;

  // x = sum c_j cos(2 pi j / n). Each term is evaluated in MPFR at precision p
  // and the accumulated error is bounded by 64 (phi + 1) * 2^-p * sum |c_j|,
  // which dominates argument, cosine, conversion and summation rounding.
  const int n = x.conductor();
  const auto& c = x.coeffs();
  Rational abs_sum = 0;
  for (const auto& v : c) abs_sum += abs(v);
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    mpfr_t acc, term, ang, coef, bound;
    mpfr_inits2(prec, acc, term, ang, coef, bound, (mpfr_ptr)0);
    mpfr_set_zero(acc, 1);
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      mpfr_const_pi(ang, MPFR_RNDN);
      mpfr_mul_ui(ang, ang, 2 * j, MPFR_RNDN);
      mpfr_div_ui(ang, ang, n, MPFR_RNDN);
      mpfr_cos(term, ang, MPFR_RNDN);
      mpfr_set_q(coef, c[j].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(term, term, coef, MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    mpfr_set_q(bound, abs_sum.get_mpq_t(), MPFR_RNDU);
    mpfr_mul_ui(bound, bound, 64 * (c.size() + 1), MPFR_RNDU);
    mpfr_div_2si(bound, bound, prec, MPFR_RNDU);
    int decided = 0;
    mpfr_abs(term, acc, MPFR_RNDN);
    if (mpfr_cmp(term, bound) > 0) decided = mpfr_sgn(acc) > 0 ? 1 : -1;
    mpfr_clears(acc, term, ang, coef, bound, (mpfr_ptr)0);
    if (decided != 0) return decided > 0 ? Sign::positive : Sign::negative;
  }
}

std::optional<Rational> rational_root(const Rational& q, int m) {
  if (m <= 0) return std::nullopt;
  if (q == 0) return Rational(0);
  bool neg = q < 0;
  if (neg && m % 2 == 0) return std::nullopt;
  Integer num = abs(q.get_num()), den = q.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), m)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), m)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string RootResult::describe() const {
  if (in_field) return "InField(" + root.to_string() + ")";
  return "Extension(t^" + std::to_string(m) + " - (" + radicand.to_string() + "))";
}

namespace {

// Square roots of rational integers available in Q(zeta_n): pairs (d, sqrt d)
// built from i, sqrt 2 and the quadratic Gauss sums of odd primes dividing n.
std::vector<std::pair<long, CycloElement>> rational_square_roots(int n) {
  std::vector<std::pair<long, CycloElement>> basic;
  if (n % 4 == 0) basic.emplace_back(-1, CycloElement::zeta(n, n / 4));
  if (n % 8 == 0) basic.emplace_back(2, CycloElement::zeta(n, n / 8) + CycloElement::zeta(n, 7 * n / 8));
  for (int p = 3; p <= n; p += 2) {
    if (n % p != 0) continue;
    bool prime = true;
    for (int q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
    if (!prime) continue;
    CycloElement g = CycloElement::zero(n);
    for (int a = 1; a < p; ++a) {
      long leg = 1;
      for (int e = 0; e < (p - 1) / 2; ++e) leg = leg * a % p;
      g += CycloElement::zeta(n, static_cast<long>(a) * (n / p)) * CycloElement(n, Rational(leg == 1 ? 1 : -1));
    }
    basic.emplace_back(p % 4 == 1 ? p : -p, g);
  }
  std::vector<std::pair<long, CycloElement>> all{{1, CycloElement::one(n)}};
  for (const auto& [d, s] : basic) {
    size_t k = all.size();
    for (size_t i = 0; i < k; ++i) all.emplace_back(all[i].first * d, all[i].second * s);
  }
  return all;
}

RootResult root_extract_monomial(const CycloElement& c, int m);

}  // namespace

RootResult root_extract(const CycloElement& c, int m) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroRadicand, "root of zero requested");
  RootResult res = root_extract_monomial(c, m);
  if (res.in_field) return res;
  const int n = c.conductor();
  auto general = [&] {
    if (auto x = embedding_root(c, m)) {
      res.in_field = true;
      res.root = *x;
    }
    return res;
  };
  if (m != 2) return general();
  for (const auto& [d, s] : rational_square_roots(n)) {
    if (d == 1) continue;
    RootResult r = root_extract_monomial(c / CycloElement(n, Rational(d)), 2);
    if (!r.in_field) continue;
    CycloElement x = r.root * s;
    if (x * x == c) {
      res.in_field = true;
      res.root = x;
      return res;
    }
  }
  return general();
}

namespace {

RootResult root_extract_monomial(const CycloElement& c, int m) {
  RootResult res;
  res.m = m;
  res.radicand = c;
  const int n = c.conductor();
  for (int j = 0; j < n; ++j) {
    auto q = (c * CycloElement::zeta(n, -j)).as_rational();
    if (!q) continue;
    // c = q * zeta^j; try x = s * zeta^e with s^m = +-q
    for (int e = 0; e < n; ++e) {
      long d = mod_long(static_cast<long>(j) - static_cast<long>(e) * m, n);
      Rational target;
      if (d == 0) target = *q;
      else if (n % 2 == 0 && d == n / 2) target = -*q;
      else continue;
      auto s = rational_root(target, m);
      if (!s) continue;
      CycloElement x = CycloElement(n, *s) * CycloElement::zeta(n, e);
      if (x.pow(m) == c) {
        res.in_field = true;
        res.root = x;
        return res;
      }
    }
  }
  return res;
}

}  // namespace

RootResult root_extract_lifting(const CycloElement& c, int m) {
  RootResult r = root_extract(c, m);
  if (r.in_field) return r;
  const int n = c.conductor();
  for (int N : {n * m, 2 * n * m}) {
    RootResult s = root_extract(embed_conductor(c, N), m);
    if (s.in_field) return s;
  }
  return r;
}

namespace {

long powmod_long(long b, long e, long p) {
  long r = 1;
  b = mod_long(b, p);
  while (e > 0) {
    if (e & 1) r = static_cast<long>((__int128)r * b % p);
    b = static_cast<long>((__int128)b * b % p);
    e >>= 1;
  }
  return r;
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

long nonsquare_certificate(const CycloElement& d) {
  if (d.is_zero()) return 0;
  const int n = d.conductor();
  int tried = 0;
  for (long p = n + 1; tried < 60; p += n) {
    if (p < 3 || !is_prime_long(p)) continue;
    // primitive n-th root of unity mod p
    long g = 0;
    for (long cand = 2; cand < p && g == 0; ++cand) {
      long r = powmod_long(cand, (p - 1) / n, p);
      bool primitive = true;
      for (long q = 2; q <= n; ++q)
        if (n % q == 0 && is_prime_long(q) && powmod_long(r, n / q, p) == 1) primitive = false;
      if (primitive) g = r;
    }
    if (g == 0) continue;
    bool ok = true;
    long val = 0;
    for (int i = 0; i < d.degree() && ok; ++i) {
      const Rational& c = d.coeffs()[i];
      if (c == 0) continue;
      Integer num = c.get_num(), den = c.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
        ok = false;
        break;
      }
      long nm = mpz_fdiv_ui(num.get_mpz_t(), p);
      long dn = mpz_fdiv_ui(den.get_mpz_t(), p);
      long term = static_cast<long>((__int128)nm * powmod_long(dn, p - 2, p) % p);
      term = static_cast<long>((__int128)term * powmod_long(g, i, p) % p);
      val = (val + term) % p;
    }
    if (!ok || val == 0) continue;
    ++tried;
    if (powmod_long(val, (p - 1) / 2, p) == p - 1) return p;
  }
  return 0;
}

}  // namespace moduli
