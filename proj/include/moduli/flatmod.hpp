#pragma once

// Quadratic differentials up to scalars: support signatures, the j-invariant,
// and moduli fields of forms supported on three or four points.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moduli/galois.hpp"

namespace moduli {

// (1 - mu + mu^2)^3 / (mu^2 (1 - mu)^2)
CycloElement j_invariant(const CycloElement& mu);

struct FlatSignature {
  int support_size = 0;
  std::vector<std::pair<ProjPoint, int>> orders;  // point order, infinity last
  bool integrable = false;                        // no pole of order >= 2
  std::string to_string() const;
};

FlatSignature flat_signature(const KForm& w);

struct FourPointModuli {
  SubfieldDescriptor lower;               // Q(j(mu))
  SubfieldDescriptor upper;               // Q(mu)
  std::vector<std::string> compatible;    // anharmonic maps preserving the exponents
  SubfieldDescriptor resolved;
  int index = 1;                          // [Q(mu) : resolved]
  std::string to_string() const;
};

// Moduli field of z^a (z - 1)^b (z - mu)^c dz^2 up to scalars.
FourPointModuli four_point_moduli(int a, int b, int c, const CycloElement& mu);

// Exponents (a, b) of z^a (z - 1)^b after moving the support to {0, 1, inf}
// with a pole at infinity.
std::pair<int, int> three_point_normal_form(const KForm& w);

}  // namespace moduli
