#pragma once

// Exact arithmetic: rationals (GMP), dense polynomials over Q, and elements of
// cyclotomic fields Q(zeta_n) stored in the power basis modulo Phi_n.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moduli/error.hpp"

namespace moduli {

using Integer = mpz_class;
using Rational = mpq_class;

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long mod_long(long a, long n);  // representative in [0, n)
int euler_phi(int n);
std::vector<int> units_mod(int n);  // (Z/n)^x in increasing order

// Dense univariate polynomial over Q; coeffs[i] multiplies t^i, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly monomial(const Rational& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  QPoly monic() const;
  Rational eval(const Rational& x) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // Variable printed as `t`.
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic
// s*a + u*b = gcd(a,b) (monic)
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& u);

const QPoly& cyclotomic_polynomial(int n);

struct CycloField;  // immutable per-conductor tables, shared

class CycloElement {
 public:
  CycloElement();  // zero of Q = Q(zeta_1)
  CycloElement(int n, const Rational& r);
  CycloElement(int n, std::vector<Rational> coeffs);

  static CycloElement zero(int n) { return CycloElement(n, Rational(0)); }
  static CycloElement one(int n) { return CycloElement(n, Rational(1)); }
  static CycloElement zeta(int n, long power = 1);

  int conductor() const;
  int degree() const;  // phi(n)
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  CycloElement operator-() const;
  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const CycloElement& o);
  CycloElement& operator/=(const CycloElement& o);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const CycloElement& b) { return a *= b; }
  friend CycloElement operator/(CycloElement a, const CycloElement& b) { return a /= b; }
  friend bool operator==(const CycloElement& a, const CycloElement& b);
  friend bool operator!=(const CycloElement& a, const CycloElement& b) { return !(a == b); }

  CycloElement inv() const;
  CycloElement pow(long e) const;
  CycloElement conj() const;
  // zeta -> zeta^a, gcd(a, n) = 1
  CycloElement galois(long a) const;

  // Lexicographic on the coefficient vector; conductors compared first.
  int compare(const CycloElement& o) const;

  // Expression in the generator `q`, e.g. "(1/2)*q^5 - 2".
  std::string to_string() const;

 private:
  std::shared_ptr<const CycloField> f_;
  std::vector<Rational> c_;
  void align(const CycloElement& o);
};

enum class CycloOp { add, mul, inv, conj };
CycloElement cyclo_arith(const CycloElement& x, const CycloElement& y, CycloOp op);

CycloElement embed_conductor(const CycloElement& x, int m);
// Re-express x and y over their common conductor lcm.
int common_conductor(int a, int b);

QPoly minimal_polynomial(const CycloElement& x);

enum class Sign { negative = -1, zero = 0, positive = 1 };
Sign sign_of_real(const CycloElement& x);
const char* sign_name(Sign s);

struct RootResult {
  bool in_field = false;
  CycloElement root;      // valid when in_field; root^m == radicand
  int m = 0;
  CycloElement radicand;  // extension t^m - radicand otherwise
  std::string describe() const;
};
RootResult root_extract(const CycloElement& c, int m);
// As root_extract, but may re-express c in a larger conductor (n*m or 2*n*m).
RootResult root_extract_lifting(const CycloElement& c, int m);

// Rational m-th root, when it exists.
std::optional<Rational> rational_root(const Rational& q, int m);

// Exact certificate that d is not a square in Q(zeta_n): a prime p = 1 mod n
// where the image of d is a quadratic non-residue. Returns the prime or 0.
long nonsquare_certificate(const CycloElement& d);

}  // namespace moduli
