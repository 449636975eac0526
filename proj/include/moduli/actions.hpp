#pragma once

// The actions chi_inf (conjugation), chi_k (pull-back of k-forms) and P chi_k
// (pull-back up to a scalar): application, equivalence deciders with explicit
// witnesses, automorphism groups and their abstract types.

#include <optional>
#include <string>
#include <vector>

#include "moduli/ratmap.hpp"

namespace moduli {

struct ActionTag {
  enum Kind { ChiInf, ChiK, ProjChiK };
  Kind kind = ChiInf;
  int k = 0;

  static ActionTag chi_inf() { return {ChiInf, 0}; }
  static ActionTag chi_k(int k) { return {ChiK, k}; }
  static ActionTag proj_chi_k(int k) { return {ProjChiK, k}; }
  std::string to_string() const;
};

MoebiusMap require_nondegenerate(const MoebiusMap& T);
RationalMap as_map(const MoebiusMap& T);

RationalMap apply_action(const ActionTag& chi, const MoebiusMap& T, const RationalMap& R);
// R(T(z)) T'(z)^k computed through coefficient arithmetic only.
RationalMap apply_chi_k_coefficients(const MoebiusMap& T, const RationalMap& R, int k);

struct EquivWitness {
  std::optional<MoebiusMap> T;     // absent only when it needs a non-cyclotomic root
  CycloElement scalar;             // 1 for chi_inf and chi_k
  std::optional<std::string> extension;  // defining polynomial of a non-cyclotomic root
  std::string to_string() const;
};

std::optional<EquivWitness> equiv_chi_inf(const RationalMap& R, const RationalMap& S);
std::optional<EquivWitness> equiv_chi_k(const KForm& wR, const KForm& wS);
std::optional<EquivWitness> equiv_proj_chi_k(const KForm& wR, const KForm& wS);
// Dispatch on the tag.
std::optional<EquivWitness> equivalent(const ActionTag& chi, const RationalMap& R,
                                       const RationalMap& S);

// Exact re-verification: chi(T)(R) = S (times the scalar for P chi_k).
bool verify_witness(const ActionTag& chi, const RationalMap& R, const RationalMap& S,
                    const EquivWitness& w);

struct AutGroup {
  enum Kind { Finite, OneParameter };
  Kind kind = Finite;
  std::vector<MoebiusMap> elements;  // Finite, canonical order, identity first
  std::string description;           // OneParameter orbit data
};

AutGroup aut_group(const ActionTag& chi, const RationalMap& R);

struct GroupType {
  enum Kind { Zn, Dn, A4, S4, A5, OneParameter };
  Kind kind;
  int n = 0;
  std::string to_string() const;
};

GroupType identify_group_type(const AutGroup& G);
int moebius_order(const MoebiusMap& T, int max_order = 120);

// Counters for witness re-verification; read by the acceptance audit.
struct WitnessAudit {
  long emitted = 0;
  long verified = 0;
};
WitnessAudit witness_audit();

}  // namespace moduli
