#pragma once

#include <optional>

#include "moduli/exactnum.hpp"

namespace moduli {

// An m-th root of c inside Q(zeta_n), or nullopt if none exists (or the search
// over root choices exceeds its budget). With D the common denominator of c,
// y = D x has integer coordinates; the coordinates are recovered from
// high-precision complex embeddings, one root choice per conjugate pair, and
// the candidate is accepted only after the exact check x^m = c.
std::optional<CycloElement> embedding_root(const CycloElement& c, int m);

}  // namespace moduli
