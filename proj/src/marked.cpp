#include "marked.hpp"

#include <algorithm>

namespace moduli::detail {

namespace {

int vanishing_order(KPoly p, const ProjPoint& pt, int formal_degree) {
  if (p.is_zero()) return formal_degree;
  if (pt.is_infinity()) return formal_degree - p.degree();
  int ord = 0;
  KPoly lin = KPoly::linear_root(pt.value());
  while (p.degree() >= 1 && p.eval(pt.value()).is_zero()) {
    p = exact_div(p, lin);
    ++ord;
  }
  return ord;
}

void insert_point(std::vector<ProjPoint>& v, const ProjPoint& p) {
  auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) v.insert(it, p);
}

MarkedClass roots_class(const std::string& kind, const KPoly& poly, int formal_degree, int n) {
  MarkedClass c;
  c.kind = kind;
  c.complete = true;
  if (formal_degree - poly.degree() > 0) insert_point(c.points, ProjPoint::infinity(n));
  if (poly.degree() >= 1) {
    RootSplit s = split_roots(poly);
    c.complete = s.complete();
    for (const auto& r : s.roots) insert_point(c.points, ProjPoint(r.first));
  }
  return c;
}

}  // namespace

bool same_signature(const PointSignature& a, const PointSignature& b) {
  if (a.levels.size() != b.levels.size()) return false;
  for (size_t i = 0; i < a.levels.size(); ++i) {
    const auto &x = a.levels[i], &y = b.levels[i];
    if (x.fixed_multiplicity != y.fixed_multiplicity || x.local_degree != y.local_degree) return false;
    if (x.multiplier.has_value() != y.multiplier.has_value()) return false;
    if (x.multiplier && *x.multiplier != *y.multiplier) return false;
  }
  return true;
}

MarkedData::MarkedData(const RationalMap& R) : R_(R), fc_(fixed_critical_polys(R)) {
  const int n = R.conductor();
  classes_.push_back(roots_class("fixed", fc_.fixed, fc_.fixed_degree, n));
  MarkedClass crit = roots_class("critical", fc_.wronskian, fc_.wronskian_degree, n);
  classes_.push_back(crit);
  MarkedClass prev = crit;
  for (int j = 1; j <= 3; ++j) {
    MarkedClass img;
    img.kind = "image" + std::to_string(j);
    img.complete = prev.complete;
    for (const auto& p : prev.points) insert_point(img.points, R_.evaluate_extended(p));
    classes_.push_back(img);
    prev = img;
  }
}

MarkedClass MarkedData::preimages(const MarkedClass& base, const std::string& kind) const {
  MarkedClass out;
  out.kind = kind;
  out.complete = base.complete;
  const int n = R_.conductor();
  const int d = R_.degree();
  for (const auto& p : base.points) {
    KPoly eq = p.is_infinity() ? R_.denominator()
                               : R_.numerator() - R_.denominator().scaled(p.value());
    MarkedClass c = roots_class(kind, eq, d, n);
    out.complete = out.complete && c.complete;
    for (const auto& q : c.points) insert_point(out.points, q);
  }
  return out;
}

void MarkedData::augment(int rounds) {
  while (rounds_ < rounds) {
    ++rounds_;
    MarkedClass base;
    if (rounds_ == 1) {
      base.complete = classes_[0].complete && classes_[1].complete;
      base.points = classes_[0].points;
      for (const auto& p : classes_[1].points) insert_point(base.points, p);
    } else {
      base = classes_.back();
    }
    classes_.push_back(preimages(base, "preimage" + std::to_string(rounds_)));
  }
}

const MarkedClass* MarkedData::find(const std::string& kind) const {
  for (const auto& c : classes_)
    if (c.kind == kind) return &c;
  return nullptr;
}

bool MarkedData::any_incomplete() const {
  return std::any_of(classes_.begin(), classes_.end(), [](const auto& c) { return !c.complete; });
}

LocalData MarkedData::local(const ProjPoint& p) const {
  LocalData ld;
  ld.fixed_multiplicity = vanishing_order(fc_.fixed, p, fc_.fixed_degree);
  ld.local_degree = 1 + vanishing_order(fc_.wronskian, p, fc_.wronskian_degree);
  if (ld.fixed_multiplicity > 0) ld.multiplier = multiplier_at(R_, p);
  return ld;
}

PointSignature MarkedData::signature(const ProjPoint& p) const {
  PointSignature s;
  ProjPoint q = p;
  for (int i = 0; i < 3; ++i) {
    s.levels.push_back(local(q));
    q = R_.evaluate_extended(q);
  }
  return s;
}

}  // namespace moduli::detail
