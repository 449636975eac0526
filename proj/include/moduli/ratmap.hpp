#pragma once

// Rational maps R = P/Q over Q(zeta_n) with P monic and gcd(P, Q) = 1, optionally
// carrying the factored form c * prod (z - a_i)^(m_i).

#include <optional>
#include <string>
#include <vector>

#include "moduli/poly.hpp"
#include "moduli/projline.hpp"

namespace moduli {

class RationalMap {
 public:
  // Factored input: finite zeros (m > 0) and poles (m < 0); infinity is implicit.
  static RationalMap from_factored(const CycloElement& scalar, const Divisor& finite_divisor);
  static RationalMap constant(const CycloElement& c);
  static RationalMap identity(int n);

  int conductor() const { return n_; }
  const KPoly& numerator() const { return P_; }
  const KPoly& denominator() const { return Q_; }
  int degree() const { return std::max(P_.degree(), Q_.degree()); }
  bool is_constant() const { return P_.degree() <= 0 && Q_.degree() <= 0; }
  bool is_polynomial() const { return Q_.degree() == 0; }

  bool has_factored() const { return factored_; }
  const CycloElement& scalar() const;       // factored form only
  const Divisor& finite_divisor() const;    // factored form only
  // Smallest conductor dividing n_ that contains every coefficient.
  int coefficient_conductor() const;

  CycloElement eval(const CycloElement& z) const;  // throws at poles
  ProjPoint evaluate_extended(const ProjPoint& p) const;

  RationalMap galois(long a) const;
  RationalMap conj() const;
  RationalMap embed(int m) const;
  RationalMap reciprocal() const;                       // 1/R
  RationalMap times(const RationalMap& o) const;        // pointwise product
  RationalMap scaled(const CycloElement& s) const;
  RationalMap power(int e) const;

  friend bool operator==(const RationalMap& a, const RationalMap& b);
  friend bool operator!=(const RationalMap& a, const RationalMap& b) { return !(a == b); }

  std::string to_string() const;           // "(P)/(Q)" in the variable z
  std::string factored_string() const;     // "c * (z - a)^m ..." when available

 private:
  friend RationalMap normalize(const KPoly&, const KPoly&, const std::vector<CycloElement>*, bool);
  int n_ = 1;
  KPoly P_, Q_;
  bool factored_ = false;
  CycloElement c_;
  Divisor div_;
};

// Cancels gcd(P, Q), makes P monic, and recovers the factored form from the
// supplied roots (verified by exact division) or the restricted root finder.
// With find_roots = false the result carries coefficient form only (unless roots
// are supplied).
RationalMap normalize(const KPoly& P_raw, const KPoly& Q_raw,
                      const std::vector<CycloElement>* roots = nullptr, bool find_roots = true);

RationalMap compose(const RationalMap& R, const RationalMap& S);  // R o S
// nullopt stands for the zero derivative of a constant map
std::optional<RationalMap> derivative(const RationalMap& R);

struct KForm {
  RationalMap R;
  int k = 0;
};

Divisor kform_divisor(const KForm& w);
KForm theta_involution(const KForm& w);

struct MarkedPoint {
  ProjPoint p;
  int fixed_multiplicity = 0;               // 0 when not fixed
  std::optional<CycloElement> multiplier;   // fixed points only
  int local_degree = 1;                     // > 1 at critical points
  bool is_fixed() const { return fixed_multiplicity > 0; }
  bool is_critical() const { return local_degree > 1; }
  std::string role() const;                 // "fixed", "critical" or "both"
};

using MarkedSet = std::vector<MarkedPoint>;

// Homogeneous fixed polynomial y F - x G (degree d+1) and Wronskian (degree 2d-2),
// each dehomogenized at y = 1 together with its formal degree.
struct FixedCriticalPolys {
  KPoly fixed;
  int fixed_degree;
  KPoly wronskian;
  int wronskian_degree;
};
FixedCriticalPolys fixed_critical_polys(const RationalMap& R);

CycloElement multiplier_at(const RationalMap& R, const ProjPoint& fixed_point);

MarkedSet fixed_marked_set(const RationalMap& R);

}  // namespace moduli
