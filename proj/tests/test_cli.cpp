#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "moduli/error.hpp"
#include "moduli/parse.hpp"
#include "moduli/realdef.hpp"
#include "moduli/report.hpp"

using namespace moduli;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MODULI_EXAMPLES_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

// "[section]" -> ordered "key = value" pairs
std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections(const std::string& text) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> out;
  std::istringstream in(text);
  std::string line, cur;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '[' && line.back() == ']') {
      cur = line.substr(1, line.size() - 2);
      out[cur];
      continue;
    }
    auto eq = line.find(" = ");
    if (eq == std::string::npos) {
      auto colon = line.find(": ");
      if (colon != std::string::npos) out[cur].emplace_back(line.substr(0, colon), line.substr(colon + 2));
      continue;
    }
    out[cur].emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return out;
}

std::string lookup(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
  for (const auto& [k, v] : kv)
    if (k == key) return v;
  FAIL("missing key " << key);
  return "";
}

bool same_entries(const MoebiusMap& A, const MoebiusMap& B) {
  return A.a() == B.a() && A.b() == B.b() && A.c() == B.c() && A.d() == B.d();
}

CycloElement z(int n, long p = 1) { return CycloElement::zeta(n, p); }
CycloElement r(int n, long a, long b = 1) { return CycloElement(n, Rational(a, b)); }

}  // namespace

TEST_CASE("parser reads the three map syntaxes to the same map") {
  InputFile a = parse_input("cyclotomic_order = 12\nmap { R = (z - 1)^2/(z - q) }\n");
  InputFile b = parse_input("cyclotomic_order = 12\nmap { num = \"z^2 - 2*z + 1\"; den = \"z - q\"; roots = [1, q] }");
  InputFile c = parse_input(
      "cyclotomic_order = 12  # header\n"
      "map {\n  scalar = 1\n  zeros = [(1, 2)]\n  poles = [(q, 1)]\n}\n");
  InputFile d = parse_input("cyclotomic_order = 12\nmap { scalar = 1 zero = 1 : 2 pole = q }\n");
  REQUIRE(a.map);
  REQUIRE(b.map);
  REQUIRE(c.map);
  REQUIRE(d.map);
  CHECK(a.conductor == 12);
  CHECK(*a.map == *b.map);
  CHECK(*a.map == *c.map);
  CHECK(*a.map == *d.map);
  CHECK(c.map->has_factored());
  CHECK(b.map->has_factored());
}

TEST_CASE("scalars, matrices and forms") {
  CHECK(parse_scalar("(1/2)*q^5 - 2", 12) == r(12, 1, 2) * z(12, 5) - r(12, 2));
  CHECK(parse_scalar("q^-1", 12) == z(12, 11));
  CHECK(parse_scalar("-(q + 1)^2", 3) == -(z(3) + r(3, 1)) * (z(3) + r(3, 1)));
  MoebiusMap T = parse_matrix("[[1, q], [0, 2]]", 5);
  CHECK(same_entries(T, MoebiusMap(r(5, 1), z(5), r(5, 0), r(5, 2))));
  InputFile f = parse_input(slurp("circle.kform"));
  REQUIRE(f.form);
  CHECK(f.form->k == 1);
  CHECK(kform_divisor(*f.form).degree() == -2);
  InputFile m = parse_input("cyclotomic_order = 4\nmoebius { a = q; b = 1; c = 0; d = 1 }");
  REQUIRE(m.moebius);
  CHECK(same_entries(*m.moebius, MoebiusMap(z(4), r(4, 1), r(4, 0), r(4, 1))));
}

TEST_CASE("the printed forms of maps and matrices parse back") {
  RationalMap R = parse_rational_function("(z^2 - (1/2)*q*z + q^3)/(3*q*z - 1)", 8);
  CHECK(parse_rational_function(R.to_string(), 8) == R);
  MoebiusMap T(z(9, 2) - r(9, 1, 3), r(9, -4), z(9, 7), r(9, 1));
  CHECK(parse_matrix(T.to_string(), 9).proj_equal(T));
  CycloElement x = r(7, 3, 5) * z(7, 4) - z(7) + r(7, 2);
  CHECK(parse_scalar(x.to_string(), 7) == x);
}

TEST_CASE("malformed input is a ParseError with a location") {
  auto e = [](const std::string& s) { return kind_of([&] { parse_input(s); }); };
  CHECK(e("cyclotomic_order = 5\nmap { R = q^ }") == ErrorKind::ParseError);
  CHECK(e("map { R = z }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { R = z + }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { R = (z + 1 }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { R = z / 0 }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { R = w }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { S = z }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { R = z") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nmap { zero = 1 : 0 }") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 0") == ErrorKind::ParseError);
  CHECK(e("cyclotomic_order = 5\nshape { }") == ErrorKind::ParseError);
  try {
    parse_input("cyclotomic_order = 5\n\nmap { R = q^ }");
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("line 3, column") != std::string::npos);
  }
  CHECK(kind_of([] { parse_scalar("z + 1", 3); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix("[[1, 2], [3]]", 3); }) == ErrorKind::ParseError);
}

TEST_CASE("invariants are checked at parse time") {
  auto e = [](const std::string& s) { return kind_of([&] { parse_input(s); }); };
  // z^3 dz has order -5 at infinity, not -4
  CHECK(e("cyclotomic_order = 1\nform { k = 1; zero = 0 : 3; pole = inf : 4 }") == ErrorKind::InvariantViolation);
  CHECK_NOTHROW(parse_input("cyclotomic_order = 1\nform { k = 1; zero = 0 : 3; pole = inf : 5 }"));
  CHECK(e("cyclotomic_order = 3\nmap { R = z; zero = 1 }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nmap { R = z - z }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nmoebius { a = 1; b = 2; c = 2; d = 4 }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nmoebius { a = 1; b = 2 }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nform { R = z }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nmap { num = \"z^2 - 1\"; roots = [2] }") == ErrorKind::InvariantViolation);
  CHECK(e("cyclotomic_order = 3\nmap { R = z }\nmap { R = z }") == ErrorKind::InvariantViolation);
}

TEST_CASE("equiv and fom on the conjugate quadratic pair") {
  InputFile a = parse_input(slurp("quadratic_zeta3.map"));
  InputFile b = parse_input(slurp("quadratic_zeta3_conj.map"));
  CommandOutput eq = cmd_equiv(ActionTag::chi_inf(), *a.map, *b.map);
  CHECK(eq.status == 1);
  CHECK(lookup(sections(eq.text)["verdict"], "verdict") == "not equivalent");
  CommandOutput same = cmd_equiv(ActionTag::chi_inf(), *a.map, *a.map);
  CHECK(same.status == 0);
  CHECK(lookup(sections(same.text)["witness"], "T") == "[[1, 0], [0, 1]]");

  CommandOutput f = cmd_fom(ActionTag::chi_inf(), *a.map, {});
  auto s = sections(f.text);
  CHECK(lookup(s["FOM"], "minpoly") == "t^2 + t + 1");
  CHECK(lookup(s["FOD"], "minpoly") == "t^2 + t + 1");
  CHECK(lookup(s["parameter"], "parameter") == "1");
}

TEST_CASE("report witnesses re-parse and re-verify") {
  for (const char* name : {"quadratic_zeta8.kform", "quadratic_zeta9.kform", "circle.kform"}) {
    CAPTURE(name);
    InputFile f = parse_input(slurp(name));
    ActionTag chi = ActionTag::chi_k(f.form->k);
    CommandOutput out = cmd_report(chi, f.form->R, {});
    auto s = sections(out.text);
    const auto& w = s["witnesses"];
    int N = std::stoi(lookup(w, "conductor"));
    RationalMap W = parse_rational_function(lookup(w, "working R"), N);
    int checked = 0;
    for (const auto& [key, val] : w) {
      if (key.rfind("T_", 0) != 0) continue;
      long sigma = std::stol(key.substr(2));
      MoebiusMap T = parse_matrix(val, N);
      CHECK(verify_witness(chi, W, W.galois(sigma), EquivWitness{T, CycloElement::one(N), {}}));
      ++checked;
    }
    CHECK(checked >= 2);
    MoebiusMap T = parse_matrix(lookup(w, "T"), N);
    RationalMap S = parse_rational_function(lookup(w, "S"), N);
    CHECK(apply_action(chi, T.inverse(), W) == S);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  InputFile f = parse_input(slurp("quadratic_zeta9.kform"));
  ReportOptions o;
  o.seed = 7;
  std::string a = cmd_report(ActionTag::chi_k(1), f.form->R, o).text;
  std::string b = cmd_report(ActionTag::chi_k(1), f.form->R, o).text;
  CHECK(a == b);
  CHECK(a.find("seed = 7\n") != std::string::npos);
}

TEST_CASE("real sections and the real-check command") {
  InputFile c = parse_input(slurp("circle.kform"));
  auto s = sections(cmd_report(ActionTag::chi_k(1), c.form->R, {}).text);
  CHECK(lookup(s["real"], "FOM real-embeddable") == "yes");
  CHECK(lookup(s["real"], "definable over R") == "no");
  CommandOutput not_def = cmd_real_check(*c.form);
  CHECK(not_def.status == 1);
  CHECK(lookup(sections(not_def.text)["verdict"], "verdict") == "NotDefinable");

  InputFile rp = parse_input(slurp("rotated_pair.kform"));
  CommandOutput ok = cmd_real_check(*rp.form);
  CHECK(ok.status == 0);
  auto sw = sections(ok.text);
  CHECK(lookup(sw["verdict"], "verdict") == "DefinableOverR");
  int N = std::stoi(lookup(sw["witness"], "conductor"));
  MoebiusMap M = parse_matrix(lookup(sw["witness"], "reflection M"), N);
  CHECK(is_reflection(AntiMoebius{M}));
}

TEST_CASE("aut, act, cocycle-verify, flat and jinv") {
  InputFile q3 = parse_input(slurp("quadratic_zeta3.map"));
  auto a = sections(cmd_aut(ActionTag::chi_inf(), *q3.map).text);
  CHECK(lookup(a["group"], "type") == "Z1");

  InputFile zf = parse_input("cyclotomic_order = 3\nform { k = 1; zero = 0 : 2 }");
  auto g = sections(cmd_aut(ActionTag::chi_k(1), zf.form->R).text);
  CHECK(lookup(g["group"], "type") == "Z3");
  CHECK(lookup(g["elements"], "element 0") == "[[1, 0], [0, 1]]");
  auto p = sections(cmd_aut(ActionTag::proj_chi_k(1), zf.form->R).text);
  CHECK(lookup(p["group"], "type") == "OneParameter");

  InputFile sc = parse_input(slurp("scaling.moebius"));
  auto act = sections(cmd_act(ActionTag::chi_inf(), *sc.map, *sc.moebius).text);
  CHECK(parse_rational_function(lookup(act["result"], "R"), 3) ==
        apply_action(ActionTag::chi_inf(), *sc.moebius, *sc.map));

  InputFile q8 = parse_input(slurp("quadratic_zeta8.kform"));
  CommandOutput cv = cmd_cocycle_verify(ActionTag::chi_k(2), q8.form->R);
  CHECK(cv.status == 0);
  CHECK(lookup(sections(cv.text)["stabilizer"], "U") == "{1, 5} mod 8");

  InputFile fp = parse_input(slurp("four_points.kform"));
  auto fl = sections(cmd_flat(*fp.form).text);
  CHECK(lookup(fl["signature"], "support size") == "4");
  CHECK(lookup(fl["moduli field"], "minpoly") == "t^4 + t^3 + t^2 + t + 1");

  CHECK(cmd_jinv(parse_scalar("-1", 1)).text == "27/4\n");
  CHECK(cmd_jinv(parse_scalar("2", 1)).text == "27/4\n");
  CHECK(kind_of([] { cmd_jinv(parse_scalar("1", 1)); }) == ErrorKind::DegenerateMu);
}
