#pragma once

// Text input for the command-line tool.
//
//   cyclotomic_order = 12
//   map { R = (z^2 + q)/(z - 1) }
//   map { num = "z^2 - 2*z + 1"; den = "z"; roots = [1] }
//   map { scalar = q^5; zeros = [(1, 2), (-q, 1)]; poles = [(0, 3)] }
//   form { k = 1; scalar = 1/q; zero = 1; zero = -4 : 1; pole = 0 : 3; pole = inf : 1 }
//   moebius { a = 1; b = 0; c = 0; d = q }
//
// Expressions use q for zeta_n, z for the variable, rationals, + - * / ^ and
// parentheses; num/den may be quoted. `inf` names the point at infinity; it may
// appear only as an optional check of the order at infinity. Entries are
// separated by newlines, semicolons or whitespace; `#` starts a comment.
// A map block may carry either a coefficient form (R, or num/den with an
// optional root certificate) or a factored form, never both.

#include <optional>
#include <string>
#include <vector>

#include "moduli/actions.hpp"

namespace moduli {

struct InputFile {
  int conductor = 1;
  std::optional<RationalMap> map;
  std::optional<KForm> form;
  std::optional<MoebiusMap> moebius;
};

InputFile parse_input(const std::string& text);

// Single expressions over Q(zeta_n).
CycloElement parse_scalar(const std::string& text, int n);
RationalMap parse_rational_function(const std::string& text, int n);
// "[[a, b], [c, d]]"
MoebiusMap parse_matrix(const std::string& text, int n);

}  // namespace moduli
