// moduli: command-line front end. Exit status 0 on success or a positive
// verdict, 1 on a negative verdict, 2 on any error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "moduli/error.hpp"
#include "moduli/parse.hpp"
#include "moduli/report.hpp"

using namespace moduli;

namespace {

struct Common {
  std::string action = "auto";
  int k = -1;
  std::uint64_t seed = 1;
  std::vector<std::string> quad;
};

InputFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_input(ss.str());
  } catch (const Error& e) {
    std::string msg = e.what();
    throw Error(e.kind(), path + ": " + msg.substr(msg.find(": ") + 2));
  }
}

// The action tag and the map it acts on, from the flags and the file contents.
std::pair<ActionTag, RationalMap> target(const Common& c, const InputFile& f) {
  std::string act = c.action;
  if (act == "auto") act = f.form ? "chi_k" : "chi_inf";
  if (act == "chi_inf") {
    if (!f.map) throw Error(ErrorKind::PreconditionViolated, "chi_inf needs a map block");
    return {ActionTag::chi_inf(), *f.map};
  }
  if (act != "chi_k" && act != "pchi_k") throw Error(ErrorKind::PreconditionViolated, "unknown action " + act);
  int k = c.k;
  RationalMap R;
  if (f.form) {
    if (k >= 0 && k != f.form->k)
      throw Error(ErrorKind::WeightMismatch, "--k " + std::to_string(k) + " but the form has k = " + std::to_string(f.form->k));
    k = f.form->k;
    R = f.form->R;
  } else if (f.map) {
    if (k < 0) throw Error(ErrorKind::PreconditionViolated, "a map block under " + act + " needs --k");
    R = *f.map;
  } else {
    throw Error(ErrorKind::PreconditionViolated, "input has neither a map nor a form block");
  }
  return {act == "chi_k" ? ActionTag::chi_k(k) : ActionTag::proj_chi_k(k), R};
}

KForm as_form(const Common& c, const InputFile& f) {
  Common cc = c;
  cc.action = "chi_k";
  auto [chi, R] = target(cc, f);
  return KForm{R, chi.k};
}

ReportOptions report_options(const Common& c, int n) {
  ReportOptions o;
  o.seed = c.seed;
  for (const auto& d : c.quad) o.quadratic_candidates.push_back(parse_scalar(d, n));
  return o;
}

void add_common(CLI::App* sub, Common& c, bool with_action = true) {
  if (with_action) {
    sub->add_option("--action", c.action, "chi_inf, chi_k or pchi_k (default: chi_k for a form, else chi_inf)")
        ->check(CLI::IsMember({"auto", "chi_inf", "chi_k", "pchi_k"}));
  }
  sub->add_option("--k", c.k, "weight for chi_k and pchi_k");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact actions of the Moebius group on rational maps, fields of moduli and descent"};
  app.require_subcommand(1);
  Common c;
  std::vector<std::string> files;
  std::string matrix, mu;
  int order = 0;

  auto* act = app.add_subcommand("act", "apply chi(T) to a map; T from a moebius block or --matrix");
  add_common(act, c);
  act->add_option("file", files, "input file")->required()->expected(1);
  act->add_option("--matrix", matrix, "T as [[a, b], [c, d]]");

  auto* equiv = app.add_subcommand("equiv", "decide chi-equivalence of two maps");
  add_common(equiv, c);
  equiv->add_option("files", files, "two input files")->required()->expected(2);

  auto* aut = app.add_subcommand("aut", "automorphism group under an action");
  add_common(aut, c);
  aut->add_option("file", files, "input file")->required()->expected(1);

  auto* fom = app.add_subcommand("fom", "field of moduli, field of definition and their parameter");
  auto* report = app.add_subcommand("report", "full report with witnesses");
  for (auto* sub : {fom, report}) {
    add_common(sub, c);
    sub->add_option("file", files, "input file")->required()->expected(1);
    sub->add_option("--seed", c.seed, "seed for randomized Hilbert 90 trials");
    sub->add_option("--quad", c.quad, "extra quadratic candidate d (expression in q)");
  }

  auto* real = app.add_subcommand("real-check", "real definability of a k-form");
  add_common(real, c, false);
  real->add_option("file", files, "input file")->required()->expected(1);

  auto* cocycle = app.add_subcommand("cocycle-verify", "build and verify the stabilizer cocycle");
  add_common(cocycle, c);
  cocycle->add_option("file", files, "input file")->required()->expected(1);

  auto* flat = app.add_subcommand("flat", "signature and moduli of a quadratic differential");
  add_common(flat, c, false);
  flat->add_option("file", files, "input file")->required()->expected(1);

  auto* jinv = app.add_subcommand("jinv", "j-invariant of a cross-ratio");
  jinv->add_option("--mu", mu, "expression in q")->required();
  jinv->add_option("--order", order, "cyclotomic order for q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CommandOutput out;
    if (act->parsed()) {
      InputFile f = load(files[0]);
      auto [chi, R] = target(c, f);
      MoebiusMap T = !matrix.empty() ? parse_matrix(matrix, f.conductor)
                     : f.moebius     ? *f.moebius
                                     : throw Error(ErrorKind::PreconditionViolated, "act needs a moebius block or --matrix");
      out = cmd_act(chi, R, T);
    } else if (equiv->parsed()) {
      InputFile f = load(files[0]), g = load(files[1]);
      auto [chi, R] = target(c, f);
      auto [chi2, S] = target(c, g);
      if (chi.kind != chi2.kind || chi.k != chi2.k)
        throw Error(ErrorKind::WeightMismatch, "inputs carry different actions: " + chi.to_string() + " and " + chi2.to_string());
      out = cmd_equiv(chi, R, S);
    } else if (aut->parsed()) {
      auto [chi, R] = target(c, load(files[0]));
      out = cmd_aut(chi, R);
    } else if (fom->parsed() || report->parsed()) {
      InputFile f = load(files[0]);
      auto [chi, R] = target(c, f);
      ReportOptions o = report_options(c, f.conductor);
      out = fom->parsed() ? cmd_fom(chi, R, o) : cmd_report(chi, R, o);
    } else if (real->parsed()) {
      out = cmd_real_check(as_form(c, load(files[0])));
    } else if (cocycle->parsed()) {
      auto [chi, R] = target(c, load(files[0]));
      out = cmd_cocycle_verify(chi, R);
    } else if (flat->parsed()) {
      out = cmd_flat(as_form(c, load(files[0])));
    } else if (jinv->parsed()) {
      if (order <= 0) {
        if (mu.find('q') != std::string::npos) throw Error(ErrorKind::ParseError, "--mu uses q; give --order");
        order = 1;
      }
      out = cmd_jinv(parse_scalar(mu, order));
    }
    std::cout << out.text;
    return out.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
