#pragma once

// Marked points used by the conjugation decider: fixed points, critical points,
// forward images of critical points and iterated preimages, grouped by kind.

#include <string>
#include <vector>

#include "moduli/ratmap.hpp"

namespace moduli::detail {

struct LocalData {
  int fixed_multiplicity = 0;
  std::optional<CycloElement> multiplier;
  int local_degree = 1;
};

// Local data of p, R(p), R(R(p)); conjugation invariant.
struct PointSignature {
  std::vector<LocalData> levels;
};
bool same_signature(const PointSignature& a, const PointSignature& b);

struct MarkedClass {
  std::string kind;
  bool complete = false;
  std::vector<ProjPoint> points;  // in-field points, distinct, canonical order
};

class MarkedData {
 public:
  explicit MarkedData(const RationalMap& R);
  // Adds preimage classes up to the given round (0..3).
  void augment(int rounds);
  const std::vector<MarkedClass>& classes() const { return classes_; }
  const MarkedClass* find(const std::string& kind) const;
  PointSignature signature(const ProjPoint& p) const;
  LocalData local(const ProjPoint& p) const;
  bool any_incomplete() const;

 private:
  MarkedClass preimages(const MarkedClass& base, const std::string& kind) const;
  RationalMap R_;
  FixedCriticalPolys fc_;
  std::vector<MarkedClass> classes_;
  int rounds_ = 0;
};

}  // namespace moduli::detail
