#pragma once

// Quadratic extension K(sqrt d) of a cyclotomic field, elements a + b*sqrt(d).

#include "moduli/exactnum.hpp"

namespace moduli {

class QuadExt {
 public:
  // Throws NotSquareFreeCertified unless d is certified non-square.
  explicit QuadExt(CycloElement d);

  const CycloElement& d() const { return d_; }
  int conductor() const { return d_.conductor(); }
  long certificate_prime() const { return cert_; }

  struct Elem {
    CycloElement a, b;
  };

  Elem make(const CycloElement& a, const CycloElement& b = CycloElement()) const;
  Elem sqrt_d() const { return make(CycloElement::zero(conductor()), CycloElement::one(conductor())); }
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;
  Elem neg(const Elem& x) const;
  Elem conj(const Elem& x) const;  // a - b*sqrt(d)
  // zeta -> zeta^a on the base, sqrt(d) fixed; requires d fixed by the automorphism
  Elem galois(const Elem& x, long a) const;
  CycloElement norm(const Elem& x) const;  // a^2 - d b^2
  bool is_zero(const Elem& x) const { return x.a.is_zero() && x.b.is_zero(); }
  bool equal(const Elem& x, const Elem& y) const;
  std::string to_string(const Elem& x) const;

 private:
  CycloElement d_;
  long cert_ = 0;
};

}  // namespace moduli
