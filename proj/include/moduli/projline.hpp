#pragma once

// The projective line over Q(zeta_n): points, Moebius maps, cross-ratio, divisors.

#include <string>
#include <utility>
#include <vector>

#include "moduli/exactnum.hpp"

namespace moduli {

// Canonical homogeneous pair: (x : 1) for finite points, (1 : 0) for infinity.
class ProjPoint {
 public:
  ProjPoint() : ProjPoint(CycloElement()) {}
  explicit ProjPoint(const CycloElement& value);
  ProjPoint(const CycloElement& x, const CycloElement& y);  // normalizes
  static ProjPoint infinity(int n = 1);

  bool is_infinity() const { return inf_; }
  const CycloElement& value() const;  // finite points only
  CycloElement hx() const;            // homogeneous coordinates of the canonical form
  CycloElement hy() const;
  int conductor() const { return x_.conductor(); }

  ProjPoint galois(long a) const;
  ProjPoint conj() const;
  ProjPoint embed(int m) const;

  // finite points by coefficient order, infinity last
  int compare(const ProjPoint& o) const;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.compare(b) == 0; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return a.compare(b) != 0; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.compare(b) < 0; }

  std::string to_string() const;

 private:
  CycloElement x_;
  bool inf_ = false;
};

// z -> (a z + b) / (c z + d)
class MoebiusMap {
 public:
  MoebiusMap();  // identity over Q
  MoebiusMap(CycloElement a, CycloElement b, CycloElement c, CycloElement d);
  static MoebiusMap identity(int n);
  static MoebiusMap scaling(const CycloElement& lambda);   // lambda z
  static MoebiusMap inversion(const CycloElement& lambda); // lambda / z
  static MoebiusMap translation(const CycloElement& t);    // z + t

  const CycloElement& a() const { return a_; }
  const CycloElement& b() const { return b_; }
  const CycloElement& c() const { return c_; }
  const CycloElement& d() const { return d_; }
  int conductor() const { return a_.conductor(); }
  CycloElement det() const { return a_ * d_ - b_ * c_; }

  MoebiusMap compose(const MoebiusMap& inner) const;  // this o inner
  MoebiusMap inverse() const;
  ProjPoint apply(const ProjPoint& p) const;
  MoebiusMap galois(long a) const;
  MoebiusMap conj() const;
  MoebiusMap embed(int m) const;
  MoebiusMap scaled(const CycloElement& s) const;

  // Representative with the first nonzero entry (a, b, c, d order) equal to 1.
  MoebiusMap normalized() const;
  bool proj_equal(const MoebiusMap& o) const;
  bool is_identity() const;
  // lexicographic on the normalized entries
  int compare(const MoebiusMap& o) const;

  std::string to_string() const;

 private:
  CycloElement a_, b_, c_, d_;
};

enum class MoebiusOp { compose, invert, act_on_point };

MoebiusMap three_point_map(const ProjPoint (&src)[3], const ProjPoint (&dst)[3]);
MoebiusMap three_point_map(const std::vector<ProjPoint>& src, const std::vector<ProjPoint>& dst);

// Value of the map sending (p1, p2, p3) to (inf, 0, 1), evaluated at p4.
ProjPoint cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                      const ProjPoint& p4);

class Divisor {
 public:
  Divisor() = default;
  void add(const ProjPoint& p, int mult);
  const std::vector<std::pair<ProjPoint, int>>& terms() const { return t_; }
  int degree() const;
  int order_at(const ProjPoint& p) const;
  std::vector<ProjPoint> support() const;
  bool empty() const { return t_.empty(); }
  Divisor negated() const;
  Divisor galois(long a) const;
  Divisor embed(int m) const;
  friend bool operator==(const Divisor& a, const Divisor& b);
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  std::string to_string() const;  // "2[0] - 4[inf]"

 private:
  std::vector<std::pair<ProjPoint, int>> t_;  // sorted by point, nonzero mults
};

Divisor pullback_divisor(const MoebiusMap& T, const Divisor& D);

}  // namespace moduli
