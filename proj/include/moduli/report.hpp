#pragma once

// Structured text reports for the command-line tool. Each command returns its
// text together with an exit status: 0 success or positive verdict, 1 negative
// verdict. Library errors propagate as exceptions (status 2 in the tool).
//
// Output is a sequence of "[section]" headers followed by "key = value" lines in
// a fixed order. Matrices print as [[a, b], [c, d]] and maps as expressions in
// z and q, both accepted back by the parser at the printed conductor.

#include <cstdint>
#include <string>
#include <vector>

#include "moduli/galois.hpp"

namespace moduli {

struct CommandOutput {
  int status = 0;
  std::string text;
};

struct ReportOptions {
  std::uint64_t seed = 1;
  std::vector<CycloElement> quadratic_candidates;
};

// For chi_k and P chi_k, R is the coefficient of the form R dz^k.
CommandOutput cmd_act(const ActionTag& chi, const RationalMap& R, const MoebiusMap& T);
CommandOutput cmd_equiv(const ActionTag& chi, const RationalMap& R, const RationalMap& S);
CommandOutput cmd_aut(const ActionTag& chi, const RationalMap& R);
CommandOutput cmd_fom(const ActionTag& chi, const RationalMap& R, const ReportOptions& opt);
// [FOM], [FOD], [parameter] and [witnesses]; chi_k adds a [real] section.
CommandOutput cmd_report(const ActionTag& chi, const RationalMap& R, const ReportOptions& opt);
CommandOutput cmd_real_check(const KForm& w);
CommandOutput cmd_cocycle_verify(const ActionTag& chi, const RationalMap& R);
CommandOutput cmd_flat(const KForm& w);
CommandOutput cmd_jinv(const CycloElement& mu);

}  // namespace moduli
