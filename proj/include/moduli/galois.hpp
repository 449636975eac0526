#pragma once

// Galois action of Gal(Q(zeta_n)/Q) on maps, the stabilizer group U of a map
// under an action, fields of moduli, Weil cocycles and descent.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moduli/actions.hpp"
#include "moduli/quadext.hpp"

namespace moduli {

struct GaloisAut {
  int n = 1;
  long a = 1;  // zeta -> zeta^a

  GaloisAut(int n, long a);
  GaloisAut compose(const GaloisAut& o) const;  // this after o
  bool is_conjugation() const { return mod_long(a, n) == mod_long(-1, n); }
};

// Smallest a' = a (mod n) that is a unit modulo N (n divides N).
long lift_unit(long a, int n, int N);

// Coefficientwise image. R is re-expressed at level sigma.n (or sigma is lifted
// to R's conductor when that is a multiple of sigma.n).
RationalMap galois_apply(const GaloisAut& sigma, const RationalMap& R);

bool is_subgroup(int n, const std::vector<long>& H);
// All a in (Z/N)^x whose residue mod n lies in H.
std::vector<long> preimage_subgroup(int n, const std::vector<long>& H, int N);

struct SubfieldDescriptor {
  int n = 1;
  std::vector<long> H;  // stabilizer in (Z/n)^x, sorted
  CycloElement theta;   // primitive element of Fix(H)
  QPoly minpoly;        // minimal polynomial of theta over Q
  int degree = 1;       // [Fix(H) : Q] = phi(n) / |H|

  bool contains(const CycloElement& x) const;
  // Fix(H) = Q(x)
  bool generated_by(const CycloElement& x) const;
  std::string to_string() const;
};

SubfieldDescriptor fixed_field(int n, std::vector<long> H);
// Q(x), described at the smallest conductor containing it.
SubfieldDescriptor generated_field(const CycloElement& x);
// Smallest conductor m | N with H the full preimage of its image mod m.
SubfieldDescriptor reduce_conductor(const SubfieldDescriptor& F);

// U at the level of R's coefficient conductor, with a witness for each member.
struct UResult {
  int n = 1;
  std::vector<long> U;
  std::map<long, EquivWitness> witnesses;
  int working_conductor = 1;  // conductor the deciders ran in
};

UResult compute_U(const ActionTag& chi, const RationalMap& R);
SubfieldDescriptor field_of_moduli(const ActionTag& chi, const RationalMap& R);

// Re-expresses R at the first conductor (among small multiples of its own) in
// which its zeros and poles split; nullopt when none does.
std::optional<RationalMap> split_over_lift(const RationalMap& R);

struct Cocycle {
  ActionTag chi;
  RationalMap R;                   // at conductor n
  int n = 1;
  std::vector<long> group;         // subgroup of (Z/n)^x
  std::map<long, MoebiusMap> T;    // sigma -> T_sigma
};

struct CocycleCheck {
  bool ok = true;
  long sigma = 0, tau = 0;
  std::string condition;  // "i" (R^sigma = chi(T_sigma)(R)) or "ii" (T_{sigma tau} = T_sigma o T_tau^sigma)
  std::string to_string() const;
};

// Corrects the witnesses by automorphisms of R until condition (ii) holds.
std::optional<Cocycle> build_cocycle(const ActionTag& chi, const RationalMap& R,
                                     const std::map<long, MoebiusMap>& witnesses);
CocycleCheck verify_cocycle(const Cocycle& c);
// Restriction to a subgroup of c.group.
Cocycle restrict_cocycle(const Cocycle& c, const std::vector<long>& subgroup);

// Witnesses for every lift of U to a conductor containing all of them,
// corrected into a cocycle; nullopt when no correction satisfies (ii).
std::optional<Cocycle> stabilizer_cocycle(const ActionTag& chi, const RationalMap& R, const UResult& u);

struct TrivializeOptions {
  std::uint64_t seed = 1;
  int random_trials = 32;
  std::vector<CycloElement> quadratic_candidates;  // tried after the built-in ones
};

struct Trivialization {
  enum Kind { Coboundary, QuadraticCoboundary, Obstructed };
  Kind kind = Obstructed;
  std::optional<MoebiusMap> T;                  // Coboundary
  std::optional<QuadExt> ext;                   // QuadraticCoboundary
  std::array<QuadExt::Elem, 4> Tq{};            // entries a, b, c, d over ext
  std::string lift;                             // how the matrix lift was obtained
  std::string to_string() const;
};

Trivialization trivialize_cocycle(const Cocycle& c, const TrivializeOptions& opt = {});

// S = chi(T^-1)(R), checked to have coefficients fixed by the field's stabilizer.
RationalMap descend(const ActionTag& chi, const RationalMap& R, const MoebiusMap& T,
                    const SubfieldDescriptor& field);

struct FomReport {
  SubfieldDescriptor fom;
  std::optional<SubfieldDescriptor> fod;  // a subfield of a cyclotomic field
  std::optional<CycloElement> quad_d;     // else FOD = FOM(sqrt d)
  int parameter = 1;
  std::optional<CycloElement> generator;  // closed-form generator (degree <= 1)
  std::optional<MoebiusMap> T;
  std::optional<RationalMap> S;
  std::string quad_T;
  std::optional<Cocycle> cocycle;         // absent on the degree <= 1 route
  bool polynomial_shortcut = false;
  bool odd_pole_shortcut = false;
  std::string route;
};

FomReport degree_le1_fom(const ActionTag& chi, const RationalMap& R);
FomReport fod_fom_report(const ActionTag& chi, const RationalMap& R,
                         const TrivializeOptions& opt = {});

struct SoundnessAudit {
  long coboundaries_returned = 0;
  long coboundaries_verified = 0;
  long descents_returned = 0;
  long descents_verified = 0;
};
SoundnessAudit soundness_audit();

}  // namespace moduli
