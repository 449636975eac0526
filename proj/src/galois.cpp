#include "moduli/galois.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace moduli {

GaloisAut::GaloisAut(int n_, long a_) : n(n_), a(mod_long(a_, n_)) {
  if (gcd_long(a, n) != 1) throw Error(ErrorKind::PreconditionViolated, "exponent is not a unit");
}

GaloisAut GaloisAut::compose(const GaloisAut& o) const {
  if (o.n != n) throw Error(ErrorKind::ConductorMismatch, "composing automorphisms of different fields");
  return GaloisAut(n, (a * o.a) % n);
}

long lift_unit(long a, int n, int N) {
  if (N % n != 0) throw Error(ErrorKind::ConductorMismatch, "lift to a non-multiple conductor");
  long r = mod_long(a, n);
  for (long b = r; b < N + n; b += n)
    if (gcd_long(b, N) == 1) return mod_long(b, N);
  throw Error(ErrorKind::InvariantViolation, "no unit lift");
}

RationalMap galois_apply(const GaloisAut& sigma, const RationalMap& R) {
  int m = R.conductor();
  if (sigma.n % m == 0) return R.embed(sigma.n).galois(sigma.a);
  if (m % sigma.n == 0 && m % R.coefficient_conductor() == 0 && sigma.n % R.coefficient_conductor() == 0)
    return R.galois(lift_unit(sigma.a, sigma.n, m));
  throw Error(ErrorKind::ConductorMismatch, "coefficients are not in Q(zeta_" + std::to_string(sigma.n) + ")");
}

bool is_subgroup(int n, const std::vector<long>& H) {
  std::set<long> s;
  for (long h : H) s.insert(mod_long(h, n));
  if (!s.count(1 % n)) return false;
  for (long x : s)
    for (long y : s)
      if (!s.count((x * y) % n)) return false;
  return true;
}

std::vector<long> preimage_subgroup(int n, const std::vector<long>& H, int N) {
  std::set<long> s;
  for (long h : H) s.insert(mod_long(h, n));
  std::vector<long> out;
  for (int a : units_mod(N))
    if (s.count(a % n)) out.push_back(a);
  return out;
}

namespace {

CycloElement orbit_sum(const CycloElement& y, const std::vector<long>& H) {
  CycloElement s = CycloElement::zero(y.conductor());
  for (long h : H) s += y.galois(h);
  return s;
}

CycloElement orbit_product(const CycloElement& y, const std::vector<long>& H) {
  CycloElement s = CycloElement::one(y.conductor());
  for (long h : H) s *= y.galois(h);
  return s;
}

}  // namespace

SubfieldDescriptor fixed_field(int n, std::vector<long> H) {
  for (long& h : H) h = mod_long(h, n);
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  if (!is_subgroup(n, H)) throw Error(ErrorKind::NotAGroup, "stabilizer is not a subgroup");
  SubfieldDescriptor F;
  F.n = n;
  F.H = H;
  F.degree = euler_phi(n) / static_cast<int>(H.size());
  if (F.degree == 1) {
    F.theta = CycloElement::zero(n);
    F.minpoly = QPoly({Rational(0), Rational(1)});
    return F;
  }
  auto accept = [&](const CycloElement& t) {
    QPoly m = minimal_polynomial(t);
    if (m.degree() != F.degree) return false;
    F.theta = t;
    F.minpoly = m;
    return true;
  };
  Rational inv_size(1, static_cast<long>(H.size()));
  // orbit averages of powers of zeta, then orbit norms of shifted zeta
  for (int j = 1; j < n; ++j)
    if (accept(orbit_sum(CycloElement::zeta(n, j), H) * CycloElement(n, inv_size))) return F;
  for (int c = 1; c <= 64; ++c)
    if (accept(orbit_product(CycloElement::zeta(n) + CycloElement(n, Rational(c)), H))) return F;
  CycloElement acc = CycloElement::zero(n);
  for (int j = 1; j < n; ++j) {
    acc += orbit_sum(CycloElement::zeta(n, j), H) * CycloElement(n, Rational(j));
    if (accept(acc)) return F;
  }
  throw Error(ErrorKind::InvariantViolation, "no primitive element found for the fixed field");
}

SubfieldDescriptor reduce_conductor(const SubfieldDescriptor& F) {
  for (int m = 1; m <= F.n; ++m) {
    if (F.n % m != 0) continue;
    std::vector<long> Hm;
    for (long h : F.H) Hm.push_back(h % m);
    std::sort(Hm.begin(), Hm.end());
    Hm.erase(std::unique(Hm.begin(), Hm.end()), Hm.end());
    if (preimage_subgroup(m, Hm, F.n).size() == F.H.size()) return fixed_field(m, Hm);
  }
  return F;
}

bool SubfieldDescriptor::contains(const CycloElement& x) const {
  int M = common_conductor(n, x.conductor());
  CycloElement y = embed_conductor(x, M);
  for (long h : preimage_subgroup(n, H, M))
    if (y.galois(h) != y) return false;
  return true;
}

bool SubfieldDescriptor::generated_by(const CycloElement& x) const {
  return contains(x) && minimal_polynomial(x).degree() == degree;
}

std::string SubfieldDescriptor::to_string() const {
  std::ostringstream os;
  os << "Fix{";
  for (size_t i = 0; i < H.size(); ++i) os << (i ? "," : "") << H[i];
  os << "} mod " << n << " = ";
  if (degree == 1)
    os << "Q";
  else
    os << "Q(theta), theta = " << theta.to_string() << ", minpoly " << minpoly.to_string("t")
       << ", degree " << degree;
  return os.str();
}

namespace {

std::vector<int> lift_candidates(int n) {
  std::set<int> s;
  for (int m = 1; m <= 4; ++m) {
    s.insert(n * m);
    s.insert(2 * n * m);
  }
  return {s.begin(), s.end()};
}

// R re-expressed where the chosen decider can run on it.
RationalMap working_map(const ActionTag& chi, const RationalMap& R) {
  if (chi.kind == ActionTag::ChiInf) {
    for (int N : lift_candidates(R.conductor())) {
      RationalMap X = N == R.conductor() ? R : R.embed(N);
      try {
        equivalent(chi, X, X);
        return X;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RootsNotInField) throw;
      }
    }
    throw Error(ErrorKind::RootsNotInField, "marked points do not split over small cyclotomic lifts");
  }
  if (R.has_factored()) return R;
  if (auto X = split_over_lift(R)) return *X;
  throw Error(ErrorKind::RootsNotInField, "zeros and poles do not split over small cyclotomic lifts");
}

}  // namespace

std::optional<RationalMap> split_over_lift(const RationalMap& R) {
  if (R.has_factored()) return R;
  for (int N : lift_candidates(R.conductor())) {
    RationalMap X = R.embed(N);
    RationalMap Y = normalize(X.numerator(), X.denominator());
    if (Y.has_factored()) return Y;
  }
  return std::nullopt;
}

UResult compute_U(const ActionTag& chi, const RationalMap& R) {
  UResult out;
  out.n = R.coefficient_conductor();
  RationalMap W = working_map(chi, R);
  out.working_conductor = W.conductor();
  for (int a : units_mod(out.n)) {
    long b = lift_unit(a, out.n, W.conductor());
    if (auto w = equivalent(chi, W, W.galois(b))) {
      out.U.push_back(a);
      out.witnesses.emplace(a, *w);
    }
  }
  if (!is_subgroup(out.n, out.U))
    throw Error(ErrorKind::InvariantViolation, "U is not closed under composition");
  return out;
}

SubfieldDescriptor field_of_moduli(const ActionTag& chi, const RationalMap& R) {
  UResult u = compute_U(chi, R);
  return fixed_field(u.n, u.U);
}

SubfieldDescriptor generated_field(const CycloElement& x) {
  int n = x.conductor();
  std::vector<long> H;
  for (int a : units_mod(n))
    if (x.galois(a) == x) H.push_back(a);
  return reduce_conductor(fixed_field(n, H));
}

FomReport degree_le1_fom(const ActionTag& chi, const RationalMap& R) {
  if (chi.kind != ActionTag::ChiK) throw Error(ErrorKind::PreconditionViolated, "closed forms cover chi_k only");
  if (R.degree() > 1) throw Error(ErrorKind::PreconditionViolated, "degree exceeds 1");
  const int n = R.conductor();
  const int k = chi.k;
  FomReport rep;
  rep.route = "degree <= 1 closed form";
  rep.polynomial_shortcut = R.is_polynomial();
  auto finish = [&](const CycloElement& g, int parameter) {
    rep.generator = g;
    rep.fom = generated_field(g);
    rep.parameter = parameter;
    if (parameter == 1) rep.fod = rep.fom;
    return rep;
  };
  if (R.degree() == 0) {
    CycloElement c = R.numerator().coeff(0) / R.denominator().coeff(0);
    return finish(k == 0 ? c : CycloElement::one(n), 1);
  }
  if (k == 0) return finish(CycloElement::one(n), 1);
  CycloElement a0 = R.numerator().coeff(0), a1 = R.numerator().coeff(1);
  CycloElement b0 = R.denominator().coeff(0), b1 = R.denominator().coeff(1);
  CycloElement det = a0 * b1 - a1 * b0;
  if (a0.is_zero()) return finish(CycloElement::one(n), 1);
  // invariants of the SL2-normalized coefficients
  if (!b0.is_zero()) return finish(a0.pow(k + 1) * b0.pow(k - 1) / det.pow(k), 1);
  CycloElement x = a0 * a0 / det;
  if (k >= 2) return finish(x.pow(k), 1);
  bool sign_flip = false;
  for (int a : units_mod(n)) sign_flip = sign_flip || x.galois(a) == -x;
  if (!sign_flip) return finish(x, 1);
  finish(x * x, 2);
  rep.fod = generated_field(x);
  return rep;
}

namespace {

int pole_degree(const KForm& w) {
  int degP = w.R.numerator().degree(), degQ = w.R.denominator().degree();
  int inf = degQ - degP - 2 * w.k;
  return degQ + (inf < 0 ? -inf : 0);
}

// Kernels of the nontrivial characters G -> {+1, -1}.
std::vector<std::vector<long>> index_two_subgroups(int N, const std::vector<long>& G) {
  std::vector<long> gens;
  std::set<long> span{1 % N};
  for (long g : G) {
    if (span.count(g)) continue;
    gens.push_back(g);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<long> cur(span.begin(), span.end());
      for (long x : cur)
        for (long y : gens)
          if (span.insert((x * y) % N).second) changed = true;
    }
  }
  std::set<std::vector<long>> found;
  for (unsigned mask = 1; mask < (1u << gens.size()); ++mask) {
    std::map<long, int> chr{{1 % N, 1}};
    std::vector<long> queue{1 % N};
    bool ok = true;
    for (size_t i = 0; i < queue.size() && ok; ++i)
      for (size_t j = 0; j < gens.size() && ok; ++j) {
        long y = (queue[i] * gens[j]) % N;
        int v = chr[queue[i]] * ((mask >> j) & 1u ? -1 : 1);
        auto it = chr.find(y);
        if (it == chr.end()) {
          chr.emplace(y, v);
          queue.push_back(y);
        } else if (it->second != v) {
          ok = false;
        }
      }
    if (!ok) continue;
    std::vector<long> ker;
    for (auto [x, v] : chr)
      if (v == 1) ker.push_back(x);
    found.insert(ker);
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::optional<Cocycle> stabilizer_cocycle(const ActionTag& chi, const RationalMap& R, const UResult& u) {
  // witnesses for the whole stabilizer at a level containing every T_sigma
  RationalMap W = working_map(chi, R);
  std::map<long, MoebiusMap> wit;
  std::vector<long> G;
  for (int round = 0;; ++round) {
    if (round > 3) throw Error(ErrorKind::UnsupportedConfiguration, "witness conductors do not stabilize");
    const int N = W.conductor();
    G = preimage_subgroup(u.n, u.U, N);
    wit.clear();
    int need = N;
    for (long g : G) {
      auto w = equivalent(chi, W, W.galois(g));
      if (!w) throw Error(ErrorKind::InvariantViolation, "stabilizer member lost its witness after lifting");
      if (!w->T) throw Error(ErrorKind::UnsupportedConfiguration, "witness needs a non-cyclotomic root");
      need = common_conductor(need, w->T->conductor());
      wit.emplace(g, *w->T);
    }
    if (need == N) break;
    W = W.embed(need);
  }
  const int N = W.conductor();
  for (auto& [g, T] : wit)
    if (T.conductor() != N) T = T.embed(N);

  return build_cocycle(chi, W, wit);
}

FomReport fod_fom_report(const ActionTag& chi, const RationalMap& R, const TrivializeOptions& opt) {
  if (chi.kind == ActionTag::ChiK && R.degree() <= 1) return degree_le1_fom(chi, R);
  FomReport rep;
  UResult u = compute_U(chi, R);
  rep.fom = fixed_field(u.n, u.U);
  bool shortcut = false;
  if (chi.kind == ActionTag::ChiK) {
    rep.polynomial_shortcut = R.is_polynomial();
    rep.odd_pole_shortcut = pole_degree(KForm{R, chi.k}) % 2 == 1;
    shortcut = rep.polynomial_shortcut || rep.odd_pole_shortcut;
  }

  std::optional<Cocycle> c = stabilizer_cocycle(chi, R, u);
  if (!c) throw Error(ErrorKind::Obstructed, "no cocycle over the working conductor");
  rep.cocycle = c;
  const RationalMap& W = c->R;
  const int N = c->n;
  const std::vector<long>& G = c->group;

  Trivialization t = trivialize_cocycle(*c, opt);
  if (t.kind == Trivialization::Coboundary) {
    rep.route = shortcut ? "shortcut: trivialized over the field of moduli" : "cocycle trivialized over the field of moduli";
    rep.T = *t.T;
    rep.S = descend(chi, W, *t.T, fixed_field(N, G));
    rep.fod = rep.fom;
    rep.parameter = 1;
    return rep;
  }
  if (shortcut)
    throw Error(ErrorKind::Obstructed, "expected a field of definition equal to the field of moduli");
  for (const auto& Hp : index_two_subgroups(N, G)) {
    Trivialization t2 = trivialize_cocycle(restrict_cocycle(*c, Hp), opt);
    if (t2.kind != Trivialization::Coboundary) continue;
    SubfieldDescriptor F = fixed_field(N, Hp);
    rep.route = "cocycle trivialized over a quadratic subextension";
    rep.T = *t2.T;
    rep.S = descend(chi, W, *t2.T, F);
    rep.fod = reduce_conductor(F);
    rep.parameter = 2;
    return rep;
  }
  if (t.kind == Trivialization::QuadraticCoboundary) {
    rep.route = "cocycle trivialized over a quadratic extension";
    rep.quad_d = t.ext->d();
    rep.quad_T = t.to_string();
    rep.parameter = 2;
    return rep;
  }
  throw Error(ErrorKind::Obstructed, "no coboundary over the field of moduli or a quadratic extension");
}

}  // namespace moduli
