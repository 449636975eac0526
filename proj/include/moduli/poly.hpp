#pragma once

// Dense univariate polynomials with coefficients in Q(zeta_n).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moduli/exactnum.hpp"

namespace moduli {

class KPoly {
 public:
  explicit KPoly(int n = 1);
  KPoly(int n, std::vector<CycloElement> coeffs);
  static KPoly constant(const CycloElement& c);
  static KPoly X(int n);
  static KPoly linear_root(const CycloElement& r);  // z - r

  int conductor() const { return n_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<CycloElement>& coeffs() const { return c_; }
  CycloElement coeff(int i) const;
  CycloElement lead() const;

  CycloElement eval(const CycloElement& x) const;
  KPoly derivative() const;
  KPoly compose(const KPoly& inner) const;  // this(inner(z))
  KPoly monic() const;
  KPoly galois(long a) const;
  KPoly pow(int e) const;
  KPoly scaled(const CycloElement& s) const;
  KPoly embed(int m) const;

  friend KPoly operator+(const KPoly& a, const KPoly& b);
  friend KPoly operator-(const KPoly& a, const KPoly& b);
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  friend bool operator==(const KPoly& a, const KPoly& b);
  friend bool operator!=(const KPoly& a, const KPoly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  int n_;
  std::vector<CycloElement> c_;
};

void divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
KPoly exact_div(const KPoly& a, const KPoly& b);  // throws unless b | a
KPoly gcd(const KPoly& a, const KPoly& b);        // monic, or zero

// Homogeneous evaluation data: a polynomial of formal degree d read as
// F(x, y) = sum c_i x^i y^(d-i).
CycloElement eval_homogeneous(const KPoly& p, int formal_degree, const CycloElement& x,
                              const CycloElement& y);

struct RootSplit {
  std::vector<std::pair<CycloElement, int>> roots;  // distinct roots with multiplicity
  KPoly leftover;                                   // constant when fully split
  bool complete() const { return leftover.degree() <= 0; }
};

// Root finder restricted to linear factors, quadratics with detectable discriminant
// roots, binomials, factors repeated in the squarefree decomposition
// and roots of the shape (small rational) * zeta^j.
RootSplit split_roots(const KPoly& p);

}  // namespace moduli
