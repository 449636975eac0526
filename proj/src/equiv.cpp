#include <algorithm>
#include <functional>
#include <map>

#include "marked.hpp"
#include "moduli/actions.hpp"

namespace moduli {

namespace {

void sort_unique(std::vector<MoebiusMap>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.compare(b) < 0; });
  std::vector<MoebiusMap> out;
  for (const auto& m : v)
    if (out.empty() || !out.back().proj_equal(m)) out.push_back(m);
  v = std::move(out);
}

int unify_maps(RationalMap& R, RationalMap& S) {
  int m = common_conductor(R.conductor(), S.conductor());
  if (R.conductor() != m) R = R.embed(m);
  if (S.conductor() != m) S = S.embed(m);
  return m;
}

// ------------------------------------------------------------------ chi_inf

// All T with T^-1 o R o T = S.
std::vector<MoebiusMap> conjugators(const RationalMap& R_in, const RationalMap& S_in, bool first_only) {
  RationalMap R = R_in, S = S_in;
  unify_maps(R, S);
  if (R.degree() != S.degree()) return {};
  if (R.degree() < 2)
    throw Error(ErrorKind::UnsupportedConfiguration, "conjugation decider needs degree >= 2");
  detail::MarkedData MR(R), MS(S);
  for (int rounds = 0; rounds <= 3; ++rounds) {
    MR.augment(rounds);
    MS.augment(rounds);
    // complete classes must agree in size
    for (const auto& cr : MR.classes()) {
      const detail::MarkedClass* cs = MS.find(cr.kind);
      if (cs && cr.complete && cs->complete && cr.points.size() != cs->points.size()) return {};
    }
    // S-points whose class is completely known for R, most constrained first
    struct Cand {
      ProjPoint s;
      const detail::MarkedClass* rclass;
    };
    std::vector<Cand> pool;
    for (const auto& cr : MR.classes()) {
      if (!cr.complete) continue;
      const detail::MarkedClass* cs = MS.find(cr.kind);
      if (!cs) continue;
      for (const auto& p : cs->points) pool.push_back({p, &cr});
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) {
      return a.rclass->points.size() < b.rclass->points.size();
    });
    std::vector<Cand> triple;
    for (const auto& c : pool) {
      bool dup = false;
      for (const auto& t : triple) dup = dup || t.s == c.s;
      if (!dup) triple.push_back(c);
      if (triple.size() == 3) break;
    }
    if (triple.size() < 3) continue;

    std::vector<detail::PointSignature> sig_s;
    std::vector<std::vector<ProjPoint>> options;
    for (const auto& t : triple) {
      detail::PointSignature ss = MS.signature(t.s);
      std::vector<ProjPoint> opts;
      for (const auto& r : t.rclass->points)
        if (detail::same_signature(ss, MR.signature(r))) opts.push_back(r);
      options.push_back(opts);
    }
    std::vector<MoebiusMap> found;
    const RationalMap* Sp = &S;
    for (const auto& r0 : options[0])
      for (const auto& r1 : options[1]) {
        if (r1 == r0) continue;
        for (const auto& r2 : options[2]) {
          if (r2 == r0 || r2 == r1) continue;
          MoebiusMap T = three_point_map({triple[0].s, triple[1].s, triple[2].s}, {r0, r1, r2});
          if (apply_action(ActionTag::chi_inf(), T, R) == *Sp) found.push_back(T.normalized());
        }
      }
    sort_unique(found);
    if (first_only && found.size() > 1) found.resize(1);
    return found;
  }
  if (MR.any_incomplete() || MS.any_incomplete())
    throw Error(ErrorKind::RootsNotInField, "marked points needed for the decider are not in the field");
  throw Error(ErrorKind::UnsupportedConfiguration, "fewer than three marked points after augmentation");
}

// ------------------------------------------------------------------ chi_k

struct Normal {
  MoebiusMap M;     // maps normal position onto the support
  RationalMap R;    // chi_k(M)(R), support in normal position
  int support = 0;  // 0, 1 or 2
  int a = 0;        // order at 0 when support = 2
};

Normal normal_position(const KForm& w) {
  Divisor D = kform_divisor(w);
  const int n = w.R.conductor();
  std::vector<ProjPoint> s = D.support();
  MoebiusMap M = MoebiusMap::identity(n);
  CycloElement one = CycloElement::one(n), zero = CycloElement::zero(n);
  if (s.size() == 1 && !s[0].is_infinity()) M = MoebiusMap(s[0].value(), one, one, zero);
  if (s.size() == 2) {
    CycloElement p = s[0].value();
    if (s[1].is_infinity()) M = MoebiusMap(one, p, zero, one);
    else M = MoebiusMap(s[1].value(), p, one, one);
  }
  Normal out{M, apply_action(ActionTag::chi_k(w.k), M, w.R), static_cast<int>(s.size()), 0};
  if (out.support == 2) out.a = out.R.finite_divisor().order_at(ProjPoint(zero));
  return out;
}

// Solutions of lambda^m = t, over a cyclotomic lift when needed.
struct RootSolve {
  std::vector<CycloElement> roots;  // all m-th roots found (empty if none cyclotomic)
  std::optional<std::string> extension;
};

RootSolve all_roots(const CycloElement& t, int m) {
  RootSolve out;
  if (m < 0) return all_roots(t.inv(), -m);
  RootResult r = root_extract_lifting(t, m);
  if (!r.in_field) {
    out.extension = r.describe();
    return out;
  }
  int N = common_conductor(r.root.conductor(), m);
  CycloElement base = embed_conductor(r.root, N);
  for (int j = 0; j < m; ++j) out.roots.push_back(base * CycloElement::zeta(N, (N / m) * j));
  return out;
}

MoebiusMap lift(const MoebiusMap& T, int N) { return T.conductor() == N ? T : T.embed(N); }

MoebiusMap conjugate_back(const MoebiusMap& MR, const MoebiusMap& Tp, const MoebiusMap& MS) {
  int N = common_conductor(common_conductor(MR.conductor(), Tp.conductor()), MS.conductor());
  return lift(MR, N).compose(lift(Tp, N)).compose(lift(MS, N).inverse()).normalized();
}

struct KSearch {
  std::vector<EquivWitness> witnesses;
  bool one_parameter = false;
  std::string family;
};

// Support of size >= 3: order-preserving bijections fixed on an S-triple.
KSearch search_support(const KForm& wR, const KForm& wS, bool proj, bool first_only) {
  KSearch out;
  Divisor DR = kform_divisor(wR), DS = kform_divisor(wS);
  std::map<int, int> cr, cs;
  for (const auto& [p, m] : DR.terms()) ++cr[m];
  for (const auto& [p, m] : DS.terms()) ++cs[m];
  if (cr != cs) return out;
  std::vector<std::pair<ProjPoint, int>> sterms = DS.terms();
  std::stable_sort(sterms.begin(), sterms.end(),
                   [&](const auto& a, const auto& b) { return cr[a.second] < cr[b.second]; });
  std::vector<ProjPoint> s = {sterms[0].first, sterms[1].first, sterms[2].first};
  std::vector<std::vector<ProjPoint>> opts(3);
  for (int i = 0; i < 3; ++i)
    for (const auto& [p, m] : DR.terms())
      if (m == sterms[i].second) opts[i].push_back(p);
  std::vector<MoebiusMap> found;
  std::map<std::string, CycloElement> scalar_of;
  for (const auto& r0 : opts[0])
    for (const auto& r1 : opts[1]) {
      if (r1 == r0) continue;
      for (const auto& r2 : opts[2]) {
        if (r2 == r0 || r2 == r1) continue;
        MoebiusMap T = three_point_map(s, {r0, r1, r2}).normalized();
        if (pullback_divisor(T, DR) != DS) continue;
        RationalMap img = apply_action(ActionTag::chi_k(wR.k), T, wR.R);
        CycloElement lambda = wS.R.scalar() / img.scalar();
        if (!proj && !lambda.is_one()) continue;
        found.push_back(T);
        scalar_of[T.to_string()] = lambda;
      }
    }
  sort_unique(found);
  for (const auto& T : found) {
    out.witnesses.push_back(EquivWitness{T, scalar_of.at(T.to_string()), std::nullopt});
    if (first_only) break;
  }
  return out;
}

// Support of size <= 2: the families lambda z and lambda / z in normal position.
KSearch search_parametric(const KForm& wR, const KForm& wS, bool proj, bool all) {
  KSearch out;
  Normal nr = normal_position(wR), ns = normal_position(wS);
  if (nr.support != ns.support) return out;
  const int n = wR.R.conductor();
  const int k = wR.k;
  CycloElement cR = nr.R.scalar(), cS = ns.R.scalar();
  auto emit = [&](const MoebiusMap& Tp, const CycloElement& scalar) {
    out.witnesses.push_back(EquivWitness{conjugate_back(nr.M, Tp, ns.M), scalar, std::nullopt});
  };
  auto family = [&](bool inversion, int m, const CycloElement& t) {
    // lambda^m = t, with T' = lambda z or lambda / z
    auto make = [&](const CycloElement& l) {
      return inversion ? MoebiusMap::inversion(l) : MoebiusMap::scaling(l);
    };
    if (proj) {
      if (!all) {
        CycloElement l = CycloElement::one(n);
        RationalMap img = apply_action(ActionTag::chi_k(k), make(l), nr.R);
        emit(make(l), ns.R.scalar() / img.scalar());
      }
      out.one_parameter = true;
      out.family = inversion ? "lambda/z" : "lambda*z";
      return;
    }
    if (m == 0) {
      if (t.is_one()) {
        if (!all) emit(make(CycloElement::one(n)), CycloElement::one(n));
        out.one_parameter = true;
        out.family = inversion ? "lambda/z" : "lambda*z";
      }
      return;
    }
    RootSolve rs = all_roots(t, m);
    if (rs.roots.empty()) {
      if (rs.extension)
        out.witnesses.push_back(EquivWitness{std::nullopt, CycloElement::one(n),
                                             (inversion ? "T' = lambda/z, " : "T' = lambda*z, ") +
                                                 *rs.extension});
      return;
    }
    for (const auto& l : rs.roots) {
      emit(make(l), CycloElement::one(n));
      if (!all) return;
    }
  };
  if (nr.support == 0) {
    // k = 0 constants
    if (proj || cR == cS) {
      emit(MoebiusMap::identity(n), proj ? cS / cR : CycloElement::one(n));
      out.one_parameter = true;
      out.family = "PGL2";
    }
    return out;
  }
  if (nr.support == 1) {
    // constants c dz^k with the pole at infinity; T' = alpha z + beta
    family(false, k, cS / cR);
    if (!out.witnesses.empty() || out.one_parameter) {
      out.one_parameter = true;
      out.family = "alpha*z + beta";
    }
    return out;
  }
  const int a = nr.a, b = ns.a;
  if (a == b) family(false, a + k, cS / cR);
  if (!all && !out.witnesses.empty()) return out;
  if (b == -a - 2 * k) {
    CycloElement t = cS / cR;
    if (k % 2 != 0) t = -t;
    family(true, a + k, t);
  }
  return out;
}

KSearch search_k(const KForm& wR_in, const KForm& wS_in, bool proj, bool all) {
  if (wR_in.k != wS_in.k) throw Error(ErrorKind::WeightMismatch, "forms of different weight");
  KForm wR = wR_in, wS = wS_in;
  unify_maps(wR.R, wS.R);
  if (!wR.R.has_factored() || !wS.R.has_factored())
    throw Error(ErrorKind::FactoredFormRequired, "pull-back decider needs factored forms");
  Divisor DR = kform_divisor(wR), DS = kform_divisor(wS);
  if (DR.terms().size() != DS.terms().size()) return {};
  if (DR.terms().size() >= 3) return search_support(wR, wS, proj, !all);
  return search_parametric(wR, wS, proj, all);
}

std::optional<EquivWitness> first_verified(const ActionTag& chi, const RationalMap& R,
                                           const RationalMap& S, const std::vector<EquivWitness>& ws) {
  for (const auto& w : ws) {
    if (!w.T) return w;  // non-cyclotomic root: certified by the family equation
    if (!verify_witness(chi, R, S, w))
      throw Error(ErrorKind::InvariantViolation, "witness failed re-verification");
    return w;
  }
  return std::nullopt;
}

}  // namespace

std::optional<EquivWitness> equiv_chi_inf(const RationalMap& R, const RationalMap& S) {
  std::vector<MoebiusMap> Ts = conjugators(R, S, false);
  if (Ts.empty()) return std::nullopt;
  // Report the simplest conjugator: identity, then affine maps, then the rest.
  auto rank = [](const MoebiusMap& T) {
    MoebiusMap u = T.normalized();
    return u.is_identity() ? 0 : (u.c().is_zero() ? 1 : 2);
  };
  std::stable_sort(Ts.begin(), Ts.end(), [&](const MoebiusMap& a, const MoebiusMap& b) {
    int ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a.compare(b) < 0;
  });
  EquivWitness w{Ts.front(), CycloElement::one(Ts.front().conductor()), std::nullopt};
  return first_verified(ActionTag::chi_inf(), R, S, {w});
}

std::optional<EquivWitness> equiv_chi_k(const KForm& wR, const KForm& wS) {
  KSearch s = search_k(wR, wS, false, false);
  return first_verified(ActionTag::chi_k(wR.k), wR.R, wS.R, s.witnesses);
}

std::optional<EquivWitness> equiv_proj_chi_k(const KForm& wR, const KForm& wS) {
  KSearch s = search_k(wR, wS, true, false);
  return first_verified(ActionTag::proj_chi_k(wR.k), wR.R, wS.R, s.witnesses);
}

AutGroup aut_group(const ActionTag& chi, const RationalMap& R) {
  AutGroup G;
  if (chi.kind == ActionTag::ChiInf) {
    G.elements = conjugators(R, R, false);
  } else {
    bool proj = chi.kind == ActionTag::ProjChiK;
    KForm w{R, chi.k};
    KSearch s = search_k(w, w, proj, true);
    if (s.one_parameter) {
      G.kind = AutGroup::OneParameter;
      Normal nr = normal_position(w);
      G.description = "{ M o (" + s.family + ") o M^-1 : M = " + nr.M.to_string() + " }";
      return G;
    }
    for (const auto& e : s.witnesses) {
      if (!e.T) throw Error(ErrorKind::RootsNotInField, "automorphism needs " + *e.extension);
      G.elements.push_back(*e.T);
    }
  }
  for (const auto& T : G.elements) {
    EquivWitness w{T, CycloElement::one(T.conductor()), std::nullopt};
    ActionTag check = chi.kind == ActionTag::ProjChiK ? ActionTag::chi_k(chi.k) : chi;
    if (chi.kind == ActionTag::ProjChiK) {
      // automorphism up to scalar: recover the scalar before checking
      RationalMap img = apply_action(ActionTag::chi_k(chi.k), T, R);
      w.scalar = (CycloElement::zero(img.conductor()) + R.scalar()) / img.scalar();
      check = chi;
    }
    if (!verify_witness(check, R, R, w))
      throw Error(ErrorKind::InvariantViolation, "automorphism failed re-verification");
  }
  sort_unique(G.elements);
  // identity first
  for (size_t i = 0; i < G.elements.size(); ++i)
    if (G.elements[i].is_identity()) std::rotate(G.elements.begin(), G.elements.begin() + i,
                                                 G.elements.begin() + i + 1);
  return G;
}

}  // namespace moduli
