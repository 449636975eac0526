#include <atomic>
#include <random>
#include <set>
#include <sstream>

#include "moduli/galois.hpp"

namespace moduli {

namespace {

std::atomic<long> g_cob_returned{0}, g_cob_verified{0}, g_desc_returned{0}, g_desc_verified{0};

// chi(T)(R) = S, up to a scalar for the projective action.
bool maps_to(const ActionTag& chi, const MoebiusMap& T, const RationalMap& R, const RationalMap& S) {
  RationalMap X = apply_action(chi, T, R);
  if (X.conductor() != S.conductor()) {
    int m = common_conductor(X.conductor(), S.conductor());
    return maps_to(chi, T.embed(m), R.embed(m), S.embed(m));
  }
  if (chi.kind != ActionTag::ProjChiK) return X == S;
  if (X.numerator() != S.numerator()) return false;
  const KPoly& a = X.denominator();
  const KPoly& b = S.denominator();
  return a.scaled(b.lead()) == b.scaled(a.lead());
}

std::vector<long> generators(int n, const std::vector<long>& G) {
  std::vector<long> gens;
  std::set<long> span{1 % n};
  for (long g : G) {
    if (span.count(g)) continue;
    gens.push_back(g);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<long> cur(span.begin(), span.end());
      for (long x : cur)
        for (long y : gens)
          if (span.insert((x * y) % n).second) changed = true;
    }
  }
  return gens;
}

// 2x2 matrices over a field described by Ops.
template <class E>
struct M2 {
  E a, b, c, d;
};

struct CycOps {
  int n;
  using E = CycloElement;
  E zero() const { return CycloElement::zero(n); }
  E one() const { return CycloElement::one(n); }
  E zeta() const { return CycloElement::zeta(n); }
  E from(const CycloElement& x) const { return x.conductor() == n ? x : embed_conductor(x, n); }
  E add(const E& x, const E& y) const { return x + y; }
  E sub(const E& x, const E& y) const { return x - y; }
  E mul(const E& x, const E& y) const { return x * y; }
  E neg(const E& x) const { return -x; }
  E inv(const E& x) const { return x.inv(); }
  E gal(const E& x, long a) const { return x.galois(a); }
  bool is_zero(const E& x) const { return x.is_zero(); }
  bool eq(const E& x, const E& y) const { return x == y; }
  template <class Gen>
  E random(Gen& g) const { return g(); }
  std::optional<E> sqrt(const E& x) const {
    RootResult r = root_extract(x, 2);
    if (!r.in_field) return std::nullopt;
    return r.root;
  }
};

struct QuadOps {
  const QuadExt* K;
  using E = QuadExt::Elem;
  int n() const { return K->conductor(); }
  E zero() const { return K->make(CycloElement::zero(n())); }
  E one() const { return K->make(CycloElement::one(n())); }
  E zeta() const { return K->make(CycloElement::zeta(n())); }
  E from(const CycloElement& x) const { return K->make(x.conductor() == n() ? x : embed_conductor(x, n())); }
  E add(const E& x, const E& y) const { return K->add(x, y); }
  E sub(const E& x, const E& y) const { return K->sub(x, y); }
  E mul(const E& x, const E& y) const { return K->mul(x, y); }
  E neg(const E& x) const { return K->neg(x); }
  E inv(const E& x) const { return K->inv(x); }
  E gal(const E& x, long a) const { return K->galois(x, a); }
  bool is_zero(const E& x) const { return K->is_zero(x); }
  bool eq(const E& x, const E& y) const { return K->equal(x, y); }
  template <class Gen>
  E random(Gen& g) const {
    CycloElement a = g();
    return K->make(a, g());
  }
  // square roots of base elements: r or r * sqrt(d)
  std::optional<E> sqrt(const E& x) const {
    if (!x.b.is_zero()) return std::nullopt;
    RootResult r = root_extract(x.a, 2);
    if (r.in_field) return K->make(r.root);
    RootResult s = root_extract(x.a / K->d(), 2);
    if (s.in_field) return K->make(CycloElement::zero(n()), s.root);
    return std::nullopt;
  }
};

template <class Ops>
struct MatAlg {
  const Ops& F;
  using E = typename Ops::E;
  using M = M2<E>;

  M ident() const { return {F.one(), F.zero(), F.zero(), F.one()}; }
  M from(const MoebiusMap& T) const { return {F.from(T.a()), F.from(T.b()), F.from(T.c()), F.from(T.d())}; }
  M mul(const M& x, const M& y) const {
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
  }
  M add(const M& x, const M& y) const { return {F.add(x.a, y.a), F.add(x.b, y.b), F.add(x.c, y.c), F.add(x.d, y.d)}; }
  M scale(const M& x, const E& s) const { return {F.mul(x.a, s), F.mul(x.b, s), F.mul(x.c, s), F.mul(x.d, s)}; }
  M gal(const M& x, long g) const { return {F.gal(x.a, g), F.gal(x.b, g), F.gal(x.c, g), F.gal(x.d, g)}; }
  E det(const M& x) const { return F.sub(F.mul(x.a, x.d), F.mul(x.b, x.c)); }
  M inverse(const M& x) const {
    E di = F.inv(det(x));
    return {F.mul(x.d, di), F.neg(F.mul(x.b, di)), F.neg(F.mul(x.c, di)), F.mul(x.a, di)};
  }
  bool eq(const M& x, const M& y) const { return F.eq(x.a, y.a) && F.eq(x.b, y.b) && F.eq(x.c, y.c) && F.eq(x.d, y.d); }
  bool proj_eq(const M& x, const M& y) const {
    const E xs[4] = {x.a, x.b, x.c, x.d};
    const E ys[4] = {y.a, y.b, y.c, y.d};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!F.eq(F.mul(xs[i], ys[j]), F.mul(xs[j], ys[i]))) return false;
    return true;
  }
  E entry(const M& x, int i) const { return i == 0 ? x.a : i == 1 ? x.b : i == 2 ? x.c : x.d; }
};

template <class Ops>
using Lift = std::map<long, M2<typename Ops::E>>;

// Exact matrix identity M_{st} = M_s s(M_t) on all pairs, plus M_s ~ T_s.
template <class Ops>
bool is_matrix_cocycle(const MatAlg<Ops>& A, int n, const std::vector<long>& G, const Lift<Ops>& M,
                       const Lift<Ops>& T) {
  for (long s : G) {
    if (!M.count(s) || !A.proj_eq(M.at(s), T.at(s))) return false;
    for (long t : G)
      if (!A.eq(M.at((s * t) % n), A.mul(M.at(s), A.gal(M.at(t), s)))) return false;
  }
  return true;
}

// Extends values on generators by M_{g s} = M_g g(M_s).
template <class Ops>
std::optional<Lift<Ops>> extend(const MatAlg<Ops>& A, int n, const std::vector<long>& gens,
                                const std::vector<M2<typename Ops::E>>& on_gens) {
  Lift<Ops> M;
  M.emplace(1 % n, A.ident());
  std::vector<long> queue{1 % n};
  for (size_t i = 0; i < queue.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j) {
      long y = (gens[j] * queue[i]) % n;
      auto cand = A.mul(on_gens[j], A.gal(M.at(queue[i]), gens[j]));
      auto it = M.find(y);
      if (it == M.end()) {
        M.emplace(y, cand);
        queue.push_back(y);
      } else if (!A.eq(it->second, cand)) {
        return std::nullopt;
      }
    }
  return M;
}

template <class Ops>
std::optional<Lift<Ops>> matrix_lift(const MatAlg<Ops>& A, int n, const std::vector<long>& G,
                                     const Lift<Ops>& T, std::string& how) {
  const auto& F = A.F;
  // entry normalization: one position nonzero everywhere, scaled to 1
  for (int pos = 0; pos < 4; ++pos) {
    bool usable = true;
    for (long s : G) usable = usable && !F.is_zero(A.entry(T.at(s), pos));
    if (!usable) continue;
    Lift<Ops> M;
    for (long s : G) M.emplace(s, A.scale(T.at(s), F.inv(A.entry(T.at(s), pos))));
    if (is_matrix_cocycle(A, n, G, M, T)) {
      how = "entry normalization";
      return M;
    }
  }
  // determinant one on generators, signs searched
  std::vector<long> gens = generators(n, G);
  std::vector<M2<typename Ops::E>> base;
  for (long g : gens) {
    auto r = F.sqrt(A.det(T.at(g)));
    if (!r) {
      base.clear();
      break;
    }
    base.push_back(A.scale(T.at(g), F.inv(*r)));
  }
  if (base.size() == gens.size() && gens.size() < 16) {
    for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
      std::vector<M2<typename Ops::E>> on = base;
      for (size_t j = 0; j < gens.size(); ++j)
        if ((mask >> j) & 1u) on[j] = A.scale(on[j], F.neg(F.one()));
      auto M = extend(A, n, gens, on);
      if (M && is_matrix_cocycle(A, n, G, *M, T)) {
        how = "determinant one with sign choice";
        return M;
      }
    }
  }
  return std::nullopt;
}

// B = sum_t M_t t(C); M_s = B s(B)^-1, so T = B^-1 satisfies T_s ~ T^-1 s(T).
template <class Ops>
std::optional<M2<typename Ops::E>> hilbert90(const MatAlg<Ops>& A, int n, const std::vector<long>& G,
                                             const Lift<Ops>& M, const Lift<Ops>& T,
                                             const TrivializeOptions& opt) {
  const auto& F = A.F;
  using E = typename Ops::E;
  E z = F.zeta(), o = F.one(), w = F.zero();
  std::vector<M2<E>> schedule = {{o, w, w, o}, {o, z, w, o}, {o, w, z, o}, {z, o, o, w},
                                 {o, o, w, z}, {z, w, o, o}, {o, z, z, w}, {w, o, o, z}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  const int phi = euler_phi(n);
  auto random_base = [&]() {
    std::vector<Rational> cs;
    for (int j = 0; j < phi; ++j) cs.emplace_back(coef(rng));
    return CycloElement(n, cs);
  };
  auto random_entry = [&]() { return F.random(random_base); };
  for (int trial = 0; trial < 8 + opt.random_trials; ++trial) {
    M2<E> C = trial < 8 ? schedule[trial] : M2<E>{random_entry(), random_entry(), random_entry(), random_entry()};
    M2<E> B{w, w, w, w};
    for (long t : G) B = A.add(B, A.mul(M.at(t), A.gal(C, t)));
    if (F.is_zero(A.det(B))) continue;
    M2<E> Tm = A.inverse(B);
    M2<E> Ti = B;
    bool ok = true;
    for (long s : G) ok = ok && A.proj_eq(T.at(s), A.mul(Ti, A.gal(Tm, s)));
    if (ok) return Tm;
  }
  return std::nullopt;
}

}  // namespace

std::string CocycleCheck::to_string() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << "FailingPair(" << sigma << ", " << tau << ") condition (" << condition << ")";
  return os.str();
}

CocycleCheck verify_cocycle(const Cocycle& c) {
  CocycleCheck out;
  const int n = c.n;
  for (long s : c.group) {
    auto it = c.T.find(s);
    if (it == c.T.end() || !maps_to(c.chi, it->second, c.R, c.R.galois(s))) {
      out.ok = false;
      out.sigma = s;
      out.tau = 1 % n;
      out.condition = "i";
      return out;
    }
  }
  for (long s : c.group)
    for (long t : c.group) {
      auto st = c.T.find((s * t) % n);
      if (st == c.T.end() || !st->second.proj_equal(c.T.at(s).compose(c.T.at(t).galois(s)))) {
        out.ok = false;
        out.sigma = s;
        out.tau = t;
        out.condition = "ii";
        return out;
      }
    }
  return out;
}

Cocycle restrict_cocycle(const Cocycle& c, const std::vector<long>& subgroup) {
  Cocycle r = c;
  r.group = subgroup;
  r.T.clear();
  for (long s : subgroup) r.T.emplace(s, c.T.at(s));
  return r;
}

std::optional<Cocycle> build_cocycle(const ActionTag& chi, const RationalMap& R,
                                     const std::map<long, MoebiusMap>& witnesses) {
  const int n = R.conductor();
  Cocycle c{chi, R, n, {}, {}};
  for (const auto& [s, T] : witnesses) {
    c.group.push_back(mod_long(s, n));
    c.T.emplace(mod_long(s, n), T.conductor() == n ? T : T.embed(n));
  }
  if (!is_subgroup(n, c.group)) throw Error(ErrorKind::NotAGroup, "witness keys do not form a group");
  if (verify_cocycle(c).ok) return c;

  AutGroup A = aut_group(chi, R);
  if (A.kind == AutGroup::OneParameter)
    throw Error(ErrorKind::InfiniteAutomorphismGroup, "automorphism corrections range over an infinite group");
  std::vector<MoebiusMap> auts;
  for (const auto& h : A.elements) {
    if (n % h.conductor() != 0)
      throw Error(ErrorKind::UnsupportedConfiguration, "automorphisms need a larger cyclotomic field");
    auts.push_back(h.conductor() == n ? h : h.embed(n));
  }
  std::vector<long> gens = generators(n, c.group);
  double combos = 1;
  for (size_t i = 0; i < gens.size(); ++i) combos *= static_cast<double>(auts.size());
  if (combos > 65536) throw Error(ErrorKind::UnsupportedConfiguration, "too many automorphism corrections");

  std::vector<size_t> idx(gens.size(), 0);
  for (;;) {
    std::map<long, MoebiusMap> T{{1 % n, MoebiusMap::identity(n)}};
    std::vector<long> queue{1 % n};
    bool ok = true;
    for (size_t i = 0; i < queue.size() && ok; ++i)
      for (size_t j = 0; j < gens.size() && ok; ++j) {
        long g = gens[j];
        MoebiusMap Tg = auts[idx[j]].compose(c.T.at(g));
        long y = (g * queue[i]) % n;
        MoebiusMap cand = Tg.compose(T.at(queue[i]).galois(g)).normalized();
        auto it = T.find(y);
        if (it == T.end()) {
          T.emplace(y, cand);
          queue.push_back(y);
        } else if (!it->second.proj_equal(cand)) {
          ok = false;
        }
      }
    if (ok && T.size() == c.group.size()) {
      Cocycle d = c;
      d.T = T;
      if (verify_cocycle(d).ok) return d;
    }
    size_t j = 0;
    while (j < idx.size() && ++idx[j] == auts.size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return std::nullopt;
}

std::string Trivialization::to_string() const {
  switch (kind) {
    case Coboundary:
      return "Coboundary(" + T->to_string() + ")";
    case QuadraticCoboundary: {
      std::ostringstream os;
      os << "QuadraticCoboundary(d = " << ext->d().to_string() << ", [[" << ext->to_string(Tq[0]) << ", "
         << ext->to_string(Tq[1]) << "], [" << ext->to_string(Tq[2]) << ", " << ext->to_string(Tq[3]) << "]])";
      return os.str();
    }
    case Obstructed:
      break;
  }
  return "Obstructed";
}

Trivialization trivialize_cocycle(const Cocycle& c, const TrivializeOptions& opt) {
  const int n = c.n;
  Trivialization out;
  {
    CycOps F{n};
    MatAlg<CycOps> A{F};
    Lift<CycOps> T;
    for (long s : c.group) T.emplace(s, A.from(c.T.at(s)));
    std::string how;
    if (auto M = matrix_lift(A, n, c.group, T, how)) {
      if (auto Tm = hilbert90(A, n, c.group, *M, T, opt)) {
        MoebiusMap X(Tm->a, Tm->b, Tm->c, Tm->d);
        MoebiusMap Xi = X.inverse();
        bool ok = true;
        for (long s : c.group) ok = ok && c.T.at(s).proj_equal(Xi.compose(X.galois(s)));
        if (ok) {
          ++g_cob_verified;
          ++g_cob_returned;
          out.kind = Trivialization::Coboundary;
          out.T = X.normalized();
          out.lift = how;
          return out;
        }
      }
    }
  }

  // quadratic extensions K(sqrt d) with d fixed by the group
  std::vector<CycloElement> cands;
  auto push = [&](const CycloElement& d) {
    if (d.is_zero()) return;
    for (const auto& e : cands)
      if (e == d) return;
    cands.push_back(d);
  };
  std::vector<CycloElement> dets;
  for (long s : c.group) dets.push_back(c.T.at(s).normalized().det());
  for (const auto& d : dets) push(d);
  for (size_t i = 0; i < dets.size(); ++i)
    for (size_t j = i + 1; j < dets.size(); ++j) push(dets[i] * dets[j]);
  for (const auto& d : opt.quadratic_candidates) push(d.conductor() == n ? d : embed_conductor(d, n));

  for (const auto& d : cands) {
    bool fixed = true;
    for (long s : c.group) fixed = fixed && d.galois(s) == d;
    if (!fixed || nonsquare_certificate(d) == 0) continue;
    QuadExt K(d);
    QuadOps F{&K};
    MatAlg<QuadOps> A{F};
    Lift<QuadOps> T;
    for (long s : c.group) T.emplace(s, A.from(c.T.at(s)));
    std::string how;
    auto M = matrix_lift(A, n, c.group, T, how);
    if (!M) continue;
    auto Tm = hilbert90(A, n, c.group, *M, T, opt);
    if (!Tm) continue;
    bool ok = true;
    M2<QuadExt::Elem> Ti = A.inverse(*Tm);
    for (long s : c.group) ok = ok && A.proj_eq(T.at(s), A.mul(Ti, A.gal(*Tm, s)));
    if (!ok) continue;
    ++g_cob_verified;
    ++g_cob_returned;
    out.kind = Trivialization::QuadraticCoboundary;
    out.ext = K;
    out.Tq = {Tm->a, Tm->b, Tm->c, Tm->d};
    out.lift = how;
    return out;
  }
  out.kind = Trivialization::Obstructed;
  return out;
}

RationalMap descend(const ActionTag& chi, const RationalMap& R, const MoebiusMap& T,
                    const SubfieldDescriptor& field) {
  RationalMap S = apply_action(chi, T.inverse(), R);
  if (chi.kind == ActionTag::ProjChiK) S = S.scaled(S.denominator().lead());
  std::vector<CycloElement> cs = S.numerator().coeffs();
  cs.insert(cs.end(), S.denominator().coeffs().begin(), S.denominator().coeffs().end());
  for (const auto& x : cs)
    if (!field.contains(x))
      throw Error(ErrorKind::DescentVerificationFailed, "coefficient " + x.to_string() + " is not in " + field.to_string());
  ++g_desc_verified;
  ++g_desc_returned;
  return S;
}

SoundnessAudit soundness_audit() {
  return {g_cob_returned.load(), g_cob_verified.load(), g_desc_returned.load(), g_desc_verified.load()};
}

}  // namespace moduli
