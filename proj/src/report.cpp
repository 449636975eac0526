#include "moduli/report.hpp"

#include <algorithm>
#include <sstream>

#include "moduli/error.hpp"
#include "moduli/flatmod.hpp"
#include "moduli/realdef.hpp"

namespace moduli {

namespace {

void field_lines(std::ostream& os, const SubfieldDescriptor& F) {
  os << "stabilizer = {";
  for (size_t i = 0; i < F.H.size(); ++i) os << (i ? ", " : "") << F.H[i];
  os << "} mod " << F.n << "\n";
  os << "degree = " << F.degree << "\n";
  if (F.degree == 1) {
    os << "field = Q\n";
    return;
  }
  os << "field = Q(theta)\n";
  os << "theta = " << F.theta.to_string() << "\n";
  os << "minpoly = " << F.minpoly.to_string("t") << "\n";
}

void input_lines(std::ostream& os, const ActionTag& chi, const RationalMap& R) {
  os << "[input]\n";
  os << "action = " << chi.to_string() << "\n";
  os << "conductor = " << R.conductor() << "\n";
  os << "R = " << R.to_string() << "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void fom_sections(std::ostream& os, const ActionTag& chi, const FomReport& rep) {
  os << "[FOM]\n";
  field_lines(os, rep.fom);
  if (rep.generator) os << "generator = " << rep.generator->to_string() << "\n";
  os << "[FOD]\n";
  if (rep.fod) {
    field_lines(os, *rep.fod);
  } else if (rep.quad_d) {
    os << "field = FOM(sqrt(d))\n";
    os << "d = " << rep.quad_d->to_string() << "\n";
  } else {
    os << "field = FOM(sqrt(d)) for a d not exhibited\n";
  }
  os << "[parameter]\n";
  os << "parameter = " << rep.parameter << "\n";
  os << "route = " << (rep.route.empty() ? "closed form for degree <= 1" : rep.route) << "\n";
  if (chi.kind == ActionTag::ChiK) {
    os << "polynomial shortcut = " << yes_no(rep.polynomial_shortcut) << "\n";
    os << "odd pole degree shortcut = " << yes_no(rep.odd_pole_shortcut) << "\n";
  }
}

TrivializeOptions trivialize_options(const ReportOptions& opt) {
  TrivializeOptions t;
  t.seed = opt.seed;
  t.quadratic_candidates = opt.quadratic_candidates;
  return t;
}

}  // namespace

CommandOutput cmd_act(const ActionTag& chi, const RationalMap& R, const MoebiusMap& T) {
  std::ostringstream os;
  input_lines(os, chi, R);
  os << "T = " << T.to_string() << "\n";
  RationalMap out = apply_action(chi, T, R);
  os << "[result]\n";
  os << "conductor = " << out.conductor() << "\n";
  os << "R = " << out.to_string() << "\n";
  return {0, os.str()};
}

CommandOutput cmd_equiv(const ActionTag& chi, const RationalMap& R, const RationalMap& S) {
  std::ostringstream os;
  input_lines(os, chi, R);
  os << "S = " << S.to_string() << "\n";
  std::optional<EquivWitness> w = equivalent(chi, R, S);
  os << "[verdict]\n";
  if (!w) {
    os << "verdict = not equivalent\n";
    return {1, os.str()};
  }
  os << "verdict = equivalent\n";
  os << "[witness]\n";
  if (!w->T) {
    os << "T = " << w->to_string() << "\n";
    return {0, os.str()};
  }
  if (!verify_witness(chi, R, S, *w))
    throw Error(ErrorKind::InvariantViolation, "equivalence witness failed re-verification");
  os << "conductor = " << w->T->conductor() << "\n";
  os << "T = " << w->T->to_string() << "\n";
  if (chi.kind == ActionTag::ProjChiK) os << "scalar = " << w->scalar.to_string() << "\n";
  return {0, os.str()};
}

CommandOutput cmd_aut(const ActionTag& chi, const RationalMap& R) {
  std::ostringstream os;
  input_lines(os, chi, R);
  // the pull-back deciders need zeros and poles
  RationalMap W = R;
  if (chi.kind != ActionTag::ChiInf && !R.has_factored()) {
    auto lifted = split_over_lift(R);
    if (!lifted) throw Error(ErrorKind::RootsNotInField, "zeros and poles do not split over small cyclotomic lifts");
    W = *lifted;
  }
  AutGroup G = aut_group(chi, W);
  os << "[group]\n";
  os << "type = " << identify_group_type(G).to_string() << "\n";
  if (G.kind == AutGroup::OneParameter) {
    os << "description = " << G.description << "\n";
    return {0, os.str()};
  }
  os << "order = " << G.elements.size() << "\n";
  os << "conductor = " << (G.elements.empty() ? W.conductor() : G.elements.front().conductor()) << "\n";
  os << "[elements]\n";
  for (size_t i = 0; i < G.elements.size(); ++i) os << "element " << i << " = " << G.elements[i].to_string() << "\n";
  return {0, os.str()};
}

CommandOutput cmd_fom(const ActionTag& chi, const RationalMap& R, const ReportOptions& opt) {
  std::ostringstream os;
  input_lines(os, chi, R);
  os << "seed = " << opt.seed << "\n";
  fom_sections(os, chi, fod_fom_report(chi, R, trivialize_options(opt)));
  return {0, os.str()};
}

CommandOutput cmd_report(const ActionTag& chi, const RationalMap& R, const ReportOptions& opt) {
  std::ostringstream os;
  input_lines(os, chi, R);
  os << "seed = " << opt.seed << "\n";
  FomReport rep = fod_fom_report(chi, R, trivialize_options(opt));
  fom_sections(os, chi, rep);

  os << "[witnesses]\n";
  if (rep.cocycle) {
    const Cocycle& c = *rep.cocycle;
    os << "conductor = " << c.n << "\n";
    os << "working R = " << c.R.to_string() << "\n";
    for (const auto& [s, T] : c.T) os << "T_" << s << " = " << T.to_string() << "\n";
  }
  if (rep.T) os << "T = " << rep.T->to_string() << "\n";
  if (rep.S) os << "S = " << rep.S->to_string() << "\n";
  if (!rep.quad_T.empty()) os << "quadratic T = " << rep.quad_T << "\n";

  if (chi.kind == ActionTag::ChiK) {
    KForm w{R, chi.k};
    os << "[real]\n";
    try {
      os << "FOM real-embeddable: " << yes_no(real_moduli_check(w)) << "\n";
      RealVerdict v = real_definability_check(w);
      os << "definable over R: " << yes_no(v.kind == RealVerdict::DefinableOverR) << "\n";
      if (v.witness) os << "reflection M = " << v.witness->M.to_string() << "\n";
    } catch (const Error& e) {
      os << "undecided: " << e.what() << "\n";
    }
  }
  return {0, os.str()};
}

CommandOutput cmd_real_check(const KForm& w) {
  std::ostringstream os;
  input_lines(os, ActionTag::chi_k(w.k), w.R);
  RealVerdict v = real_definability_check(w);
  os << "[verdict]\n";
  switch (v.kind) {
    case RealVerdict::DefinableOverR: os << "verdict = DefinableOverR\n"; break;
    case RealVerdict::NotDefinable: os << "verdict = NotDefinable\n"; break;
    case RealVerdict::ModuliNotReal: os << "verdict = ModuliNotReal\n"; break;
  }
  if (v.kind == RealVerdict::ModuliNotReal) return {1, os.str()};
  std::vector<AntiMoebius> coset = antiholo_auts(w);
  os << "[witness]\n";
  if (v.witness) {
    os << "conductor = " << v.witness->M.conductor() << "\n";
    os << "reflection M = " << v.witness->M.to_string() << "\n";
    os << "meaning = z -> M(conj z)\n";
  } else if (!coset.empty()) {
    os << "conductor = " << coset.front().M.conductor() << "\n";
    os << "anti-holomorphic M = " << coset.front().M.to_string() << "\n";
    os << "coset size = " << coset.size() << "\n";
  }
  return {v.kind == RealVerdict::DefinableOverR ? 0 : 1, os.str()};
}

CommandOutput cmd_cocycle_verify(const ActionTag& chi, const RationalMap& R) {
  std::ostringstream os;
  input_lines(os, chi, R);
  UResult u = compute_U(chi, R);
  os << "[stabilizer]\n";
  os << "U = {";
  for (size_t i = 0; i < u.U.size(); ++i) os << (i ? ", " : "") << u.U[i];
  os << "} mod " << u.n << "\n";
  std::optional<Cocycle> c = stabilizer_cocycle(chi, R, u);
  os << "[cocycle]\n";
  if (!c) {
    os << "verdict = no cocycle\n";
    return {1, os.str()};
  }
  os << "conductor = " << c->n << "\n";
  for (const auto& [s, T] : c->T) os << "T_" << s << " = " << T.to_string() << "\n";
  CocycleCheck chk = verify_cocycle(*c);
  os << "[verdict]\n";
  os << "verdict = " << (chk.ok ? "ok" : chk.to_string()) << "\n";
  return {chk.ok ? 0 : 1, os.str()};
}

CommandOutput cmd_flat(const KForm& w) {
  std::ostringstream os;
  input_lines(os, ActionTag::chi_k(w.k), w.R);
  FlatSignature sig = flat_signature(w);
  os << "[signature]\n";
  os << "support size = " << sig.support_size << "\n";
  for (const auto& [p, m] : sig.orders) os << "order at " << p.to_string() << " = " << m << "\n";
  os << "integrable = " << yes_no(sig.integrable) << "\n";
  if (sig.support_size == 3) {
    auto [a, b] = three_point_normal_form(w);
    os << "[normal form]\n";
    os << "shape = z^a (z - 1)^b dz^2\n";
    os << "a = " << a << "\n";
    os << "b = " << b << "\n";
  } else if (sig.support_size == 4) {
    // the most negative order goes to infinity, the rest in sorted order to 0, 1, mu
    auto orders = sig.orders;
    auto inf_it = std::min_element(orders.begin(), orders.end(),
                                   [](const auto& x, const auto& y) { return x.second < y.second; });
    auto inf_pt = *inf_it;
    orders.erase(inf_it);
    ProjPoint mu_pt = cross_ratio(inf_pt.first, orders[0].first, orders[1].first, orders[2].first);
    if (mu_pt.is_infinity()) throw Error(ErrorKind::DegenerateMu, "support points collide");
    FourPointModuli fm = four_point_moduli(orders[0].second, orders[1].second, orders[2].second, mu_pt.value());
    os << "[four points]\n";
    os << "shape = z^a (z - 1)^b (z - mu)^c dz^2\n";
    os << "a = " << orders[0].second << "\n";
    os << "b = " << orders[1].second << "\n";
    os << "c = " << orders[2].second << "\n";
    os << "mu = " << mu_pt.value().to_string() << "\n";
    os << "compatible = {";
    for (size_t i = 0; i < fm.compatible.size(); ++i) os << (i ? ", " : "") << fm.compatible[i];
    os << "}\n";
    os << "index in Q(mu) = " << fm.index << "\n";
    os << "[moduli field]\n";
    field_lines(os, fm.resolved);
  }
  return {0, os.str()};
}

CommandOutput cmd_jinv(const CycloElement& mu) {
  CycloElement j = j_invariant(mu);
  if (auto r = j.as_rational()) return {0, r->get_str() + "\n"};
  return {0, j.to_string() + "\n"};
}

}  // namespace moduli
