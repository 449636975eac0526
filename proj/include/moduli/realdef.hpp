#pragma once

// Real fields of moduli and real definability of k-forms with cyclotomic
// coefficients, read through the complex embedding zeta_n = exp(2 pi i / n).

#include <optional>
#include <string>
#include <vector>

#include "moduli/actions.hpp"

namespace moduli {

// z -> M(conj z)
struct AntiMoebius {
  MoebiusMap M;
  MoebiusMap compose(const AntiMoebius& inner) const;  // holomorphic: M o conj(inner.M)
  std::string to_string() const;
};

// Anti-holomorphic automorphisms of w: the coset Aut(w) o U0.
std::vector<AntiMoebius> antiholo_auts(const KForm& w);
bool is_reflection(const AntiMoebius& U);
bool real_moduli_check(const KForm& w);

struct RealVerdict {
  enum Kind { DefinableOverR, NotDefinable, ModuliNotReal };
  Kind kind = ModuliNotReal;
  std::optional<AntiMoebius> witness;
  std::string to_string() const;
};

RealVerdict real_definability_check(const KForm& w);

struct CircleCheck {
  bool ok = false;
  std::string violation;
  std::vector<CycloElement> classes;  // j-invariants of the three concyclic 4-subsets
};

// r > 1, e = exp(i theta) with exp(-2 i theta) != exp(2 i theta) != -1,
// lambda = -conj(lambda) exp(2 i theta), and pairwise distinct cross-ratio classes.
CircleCheck circle_preconditions(const Rational& r, const CycloElement& e, const CycloElement& lambda);

// (z - 1)(z + r^2)(z^2 - r^2 e^2) / (lambda z^3), raised to the k-th power (k >= 1).
RationalMap circle_family_map(const Rational& r, const CycloElement& e, const CycloElement& lambda, int k = 1);

}  // namespace moduli
