#include "moduli/quadext.hpp"

namespace moduli {

QuadExt::QuadExt(CycloElement d) : d_(std::move(d)) {
  cert_ = nonsquare_certificate(d_);
  if (cert_ == 0)
    throw Error(ErrorKind::NotSquareFreeCertified, d_.to_string() + " not certified non-square");
}

QuadExt::Elem QuadExt::make(const CycloElement& a, const CycloElement& b) const {
  const int n = conductor();
  return Elem{CycloElement::zero(n) + a, CycloElement::zero(n) + b};
}

QuadExt::Elem QuadExt::add(const Elem& x, const Elem& y) const { return {x.a + y.a, x.b + y.b}; }
QuadExt::Elem QuadExt::sub(const Elem& x, const Elem& y) const { return {x.a - y.a, x.b - y.b}; }
QuadExt::Elem QuadExt::neg(const Elem& x) const { return {-x.a, -x.b}; }
QuadExt::Elem QuadExt::conj(const Elem& x) const { return {x.a, -x.b}; }

QuadExt::Elem QuadExt::mul(const Elem& x, const Elem& y) const {
  return {x.a * y.a + d_ * x.b * y.b, x.a * y.b + x.b * y.a};
}

CycloElement QuadExt::norm(const Elem& x) const { return x.a * x.a - d_ * x.b * x.b; }

QuadExt::Elem QuadExt::inv(const Elem& x) const {
  CycloElement nrm = norm(x);
  if (nrm.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in quadratic extension");
  CycloElement ni = nrm.inv();
  return {x.a * ni, -x.b * ni};
}

QuadExt::Elem QuadExt::galois(const Elem& x, long a) const {
  if (d_.galois(a) != d_)
    throw Error(ErrorKind::InvariantViolation, "automorphism does not fix the discriminant");
  return {x.a.galois(a), x.b.galois(a)};
}

bool QuadExt::equal(const Elem& x, const Elem& y) const { return x.a == y.a && x.b == y.b; }

std::string QuadExt::to_string(const Elem& x) const {
  if (x.b.is_zero()) return x.a.to_string();
  return "(" + x.a.to_string() + ") + (" + x.b.to_string() + ")*sqrt(" + d_.to_string() + ")";
}

}  // namespace moduli
