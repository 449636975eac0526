#include "moduli/parse.hpp"

#include <cctype>

namespace moduli {

namespace {

struct Token {
  enum Kind { Num, Ident, Sym, Newline, End } kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char ch = s[i];
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (ch == '\n' || ch == ';') {
      out.push_back({Token::Newline, std::string(1, ch), line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Num, s.substr(i, j - i), line, col});
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), line, col});
    } else if (std::string("+-*/^(){}=:[],\"").find(ch) != std::string::npos) {
      j = i + 1;
      out.push_back({Token::Sym, std::string(1, ch), line, col});
    } else {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line) + ", column " + std::to_string(col) + ": unexpected character '" +
                      std::string(1, ch) + "'");
    }
    advance(j - i);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

// P/Q with coefficients in Q(zeta_n)
struct RF {
  KPoly num, den;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, int n) : t_(std::move(toks)), n_(n) {}

  void set_conductor(int n) { n_ = n; }
  int conductor() const { return n_; }

  const Token& peek() const { return t_[pos_]; }
  bool at_sym(const char* s) const { return peek().kind == Token::Sym && peek().text == s; }
  bool at_end() const { return peek().kind == Token::End; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& tk, const std::string& msg) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(tk.line) + ", column " + std::to_string(tk.col) + ": " + msg);
  }

  Token take() { return t_[pos_++]; }
  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'" + found());
    ++pos_;
  }
  std::string expect_ident() {
    if (peek().kind != Token::Ident) fail("expected a name" + found());
    return take().text;
  }
  long expect_int() {
    bool neg = false;
    if (at_sym("-")) {
      neg = true;
      ++pos_;
    }
    if (peek().kind != Token::Num) fail("expected an integer" + found());
    std::string s = take().text;
    if (s.size() > 9) fail("integer too large");
    long v = std::stol(s);
    return neg ? -v : v;
  }
  void skip_separators() {
    while (peek().kind == Token::Newline) ++pos_;
  }
  void end_of_entry() {
    if (peek().kind == Token::Newline) {
      skip_separators();
      return;
    }
    // whitespace alone may separate entries: the next key is a name followed by '='
    if (at_sym("}") || at_end()) return;
    if (peek().kind == Token::Ident && t_[pos_ + 1].kind == Token::Sym && t_[pos_ + 1].text == "=") return;
    fail("expected end of entry" + found());
  }

  RF expression() {
    RF a = term();
    while (at_sym("+") || at_sym("-")) {
      bool minus = take().text == "-";
      RF b = term();
      a = minus ? sub(a, b) : add(a, b);
    }
    return a;
  }

  CycloElement scalar_expression() {
    const Token start = peek();
    RF r = expression();
    if (r.num.degree() > 0 || r.den.degree() > 0) fail_at(start, "expected a constant, found an expression in z");
    if (r.num.is_zero()) return CycloElement::zero(n_);
    return r.num.coeff(0) / r.den.coeff(0);
  }

 private:
  std::string found() const {
    const Token& tk = peek();
    if (tk.kind == Token::End) return ", found end of input";
    if (tk.kind == Token::Newline) return ", found end of line";
    return ", found '" + tk.text + "'";
  }

  RF constant(const CycloElement& c) const { return {KPoly::constant(c), KPoly::constant(CycloElement::one(n_))}; }

  RF reduce(RF r) const {
    if (r.num.is_zero()) return {KPoly(n_), KPoly::constant(CycloElement::one(n_))};
    KPoly g = gcd(r.num, r.den);
    if (g.degree() > 0) {
      r.num = exact_div(r.num, g);
      r.den = exact_div(r.den, g);
    }
    return r;
  }
  RF add(const RF& a, const RF& b) const { return reduce({a.num * b.den + b.num * a.den, a.den * b.den}); }
  RF sub(const RF& a, const RF& b) const { return reduce({a.num * b.den - b.num * a.den, a.den * b.den}); }
  RF mul(const RF& a, const RF& b) const { return reduce({a.num * b.num, a.den * b.den}); }
  RF div(const RF& a, const RF& b, const Token& at) const {
    if (b.num.is_zero()) fail_at(at, "division by zero");
    return reduce({a.num * b.den, a.den * b.num});
  }

  RF term() {
    RF a = unary();
    while (at_sym("*") || at_sym("/")) {
      Token op = take();
      RF b = unary();
      a = op.text == "*" ? mul(a, b) : div(a, b, op);
    }
    return a;
  }

  RF unary() {
    if (at_sym("-")) {
      ++pos_;
      RF a = unary();
      return {a.num.scaled(CycloElement(n_, Rational(-1))), a.den};
    }
    if (at_sym("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RF power() {
    RF base = atom();
    if (!at_sym("^")) return base;
    Token op = take();
    if (!(peek().kind == Token::Num || at_sym("-"))) fail("expected an integer exponent" + found());
    long e = expect_int();
    if (e < 0) {
      if (base.num.is_zero()) fail_at(op, "zero raised to a negative power");
      base = {base.den, base.num};
      e = -e;
    }
    if (e > 10000) fail_at(op, "exponent too large");
    return reduce({base.num.pow(static_cast<int>(e)), base.den.pow(static_cast<int>(e))});
  }

  RF atom() {
    const Token& tk = peek();
    if (tk.kind == Token::Num) {
      std::string s = take().text;
      return constant(CycloElement(n_, Rational(mpz_class(s))));
    }
    if (tk.kind == Token::Ident) {
      if (tk.text == "q") {
        ++pos_;
        return constant(CycloElement::zeta(n_));
      }
      if (tk.text == "z") {
        ++pos_;
        return {KPoly::X(n_), KPoly::constant(CycloElement::one(n_))};
      }
      fail("unknown name '" + tk.text + "'");
    }
    if (at_sym("(")) {
      ++pos_;
      ++depth_;
      skip_in_parens();
      RF r = expression();
      skip_in_parens();
      expect_sym(")");
      --depth_;
      return r;
    }
    fail("expected an expression" + found());
  }

  void skip_in_parens() {
    if (depth_ > 0) skip_separators();
  }

  std::vector<Token> t_;
  size_t pos_ = 0;
  int n_;
  int depth_ = 0;
};

struct PointEntry {
  bool inf;
  CycloElement p;
  int mult;
};

struct Block {
  std::optional<RF> expr;  // R = ..., or num/den
  bool has_num = false, has_den = false;
  std::optional<std::vector<CycloElement>> roots;
  std::optional<CycloElement> scalar;
  std::vector<PointEntry> points;
  std::optional<long> k;
  std::optional<CycloElement> a, b, c, d;
  Token where;
};

PointEntry parse_point(Parser& P, int sign) {
  PointEntry e{false, CycloElement::zero(P.conductor()), sign};
  if (P.peek().kind == Token::Ident && P.peek().text == "inf") {
    P.take();
    e.inf = true;
  } else {
    e.p = P.scalar_expression();
  }
  return e;
}

int parse_multiplicity(Parser& P) {
  Token mt = P.peek();
  long m = P.expect_int();
  if (m <= 0) Parser::fail_at(mt, "multiplicity must be positive");
  if (m > 100000) Parser::fail_at(mt, "multiplicity too large");
  return static_cast<int>(m);
}

// [item, item, ...] with newlines allowed inside the brackets
template <class F>
void parse_list(Parser& P, F item) {
  P.expect_sym("[");
  P.skip_separators();
  if (P.at_sym("]")) {
    P.take();
    return;
  }
  while (true) {
    item();
    P.skip_separators();
    if (P.at_sym("]")) break;
    P.expect_sym(",");
    P.skip_separators();
  }
  P.take();
}

RF quoted_expression(Parser& P) {
  bool quoted = P.at_sym("\"");
  if (quoted) P.take();
  RF r = P.expression();
  if (quoted) P.expect_sym("\"");
  return r;
}

Block parse_block(Parser& P, const std::string& kind, const Token& where) {
  Block B;
  B.where = where;
  P.skip_separators();
  P.expect_sym("{");
  P.skip_separators();
  const int n = P.conductor();
  while (!P.at_sym("}")) {
    if (P.at_end()) P.fail("unterminated " + kind + " block");
    Token key_tok = P.peek();
    std::string key = P.expect_ident();
    P.expect_sym("=");
    auto dup = [&](bool seen) {
      if (seen) Parser::fail_at(key_tok, "duplicate entry '" + key + "'");
    };
    bool map_like = kind != "moebius";
    if (map_like && key == "R") {
      dup(B.expr.has_value());
      B.expr = P.expression();
    } else if (map_like && (key == "num" || key == "den")) {
      bool& seen = key == "num" ? B.has_num : B.has_den;
      dup(seen);
      seen = true;
      RF r = quoted_expression(P);
      if (r.den.degree() > 0) Parser::fail_at(key_tok, "'" + key + "' must be a polynomial");
      RF cur = B.expr.value_or(RF{KPoly::constant(CycloElement::one(n)), KPoly::constant(CycloElement::one(n))});
      KPoly unit = KPoly::constant(r.den.coeff(0).inv());
      if (key == "num")
        cur.num = r.num * unit;
      else
        cur.den = r.num * unit;
      B.expr = cur;
    } else if (map_like && key == "roots") {
      dup(B.roots.has_value());
      B.roots.emplace();
      parse_list(P, [&] { B.roots->push_back(P.scalar_expression()); });
    } else if (map_like && key == "scalar") {
      dup(B.scalar.has_value());
      Token start = P.peek();
      B.scalar = P.scalar_expression();
      if (B.scalar->is_zero()) Parser::fail_at(start, "scalar must be nonzero");
    } else if (map_like && (key == "zero" || key == "pole")) {
      PointEntry e = parse_point(P, key == "zero" ? 1 : -1);
      if (P.at_sym(":")) {
        P.take();
        e.mult *= parse_multiplicity(P);
      }
      B.points.push_back(e);
    } else if (map_like && (key == "zeros" || key == "poles")) {
      int sign = key == "zeros" ? 1 : -1;
      parse_list(P, [&] {
        P.expect_sym("(");
        PointEntry e = parse_point(P, sign);
        P.expect_sym(",");
        e.mult *= parse_multiplicity(P);
        P.expect_sym(")");
        B.points.push_back(e);
      });
    } else if (key == "k" && kind == "form") {
      dup(B.k.has_value());
      Token kt = P.peek();
      B.k = P.expect_int();
      if (*B.k < 0 || *B.k > 1000) Parser::fail_at(kt, "k must be a nonnegative integer");
    } else if (kind == "moebius" && (key == "a" || key == "b" || key == "c" || key == "d")) {
      std::optional<CycloElement>& slot = key == "a" ? B.a : key == "b" ? B.b : key == "c" ? B.c : B.d;
      dup(slot.has_value());
      slot = P.scalar_expression();
    } else {
      Parser::fail_at(key_tok, "unknown entry '" + key + "' in " + kind + " block");
    }
    P.end_of_entry();
  }
  P.expect_sym("}");
  return B;
}

[[noreturn]] void violation(const Token& where, const std::string& msg) {
  throw Error(ErrorKind::InvariantViolation, "line " + std::to_string(where.line) + ": " + msg);
}

RationalMap build_map(const Block& B, int k, int n) {
  bool factored = B.scalar.has_value() || !B.points.empty();
  if (B.expr && factored) violation(B.where, "give either a coefficient form or scalar/zeros/poles, not both");
  if (B.roots && !B.expr) violation(B.where, "roots given without num/den");
  RationalMap R = RationalMap::constant(CycloElement::one(n));
  std::optional<int> inf_order;
  if (B.expr) {
    if (B.expr->num.is_zero()) violation(B.where, "the zero function is not a map");
    if (B.expr->den.is_zero()) violation(B.where, "denominator is zero");
    if (B.roots) {
      for (const auto& x : *B.roots)
        if (!B.expr->num.eval(x).is_zero() && !B.expr->den.eval(x).is_zero())
          violation(B.where, "root certificate lists " + x.to_string() + ", which is not a root of num or den");
      R = normalize(B.expr->num, B.expr->den, &*B.roots, false);
      if (!R.has_factored()) violation(B.where, "root certificate does not account for every zero and pole");
    } else {
      R = normalize(B.expr->num, B.expr->den);
    }
  } else if (factored) {
    Divisor D;
    for (const auto& e : B.points) {
      if (e.inf) {
        inf_order = inf_order.value_or(0) + e.mult;
        continue;
      }
      D.add(ProjPoint(e.p), e.mult);
    }
    R = RationalMap::from_factored(B.scalar.value_or(CycloElement::one(n)), D);
  }
  if (inf_order) {
    int finite = R.denominator().degree() - R.numerator().degree();
    int expected_inf = finite - 2 * k;
    if (*inf_order != expected_inf) {
      int total = -finite + *inf_order;
      violation(B.where, "divisor degrees sum to " + std::to_string(total) + ", expected " + std::to_string(-2 * k) +
                             " (order at inf must be " + std::to_string(expected_inf) + ")");
    }
  }
  return R;
}

}  // namespace

InputFile parse_input(const std::string& text) {
  Parser P(lex(text), 1);
  P.skip_separators();
  if (!(P.peek().kind == Token::Ident && P.peek().text == "cyclotomic_order"))
    P.fail("the file must start with 'cyclotomic_order = N'");
  P.take();
  P.expect_sym("=");
  Token nt = P.peek();
  long n = P.expect_int();
  if (n < 1 || n > 100000) Parser::fail_at(nt, "cyclotomic order must be a positive integer");
  P.set_conductor(static_cast<int>(n));
  P.end_of_entry();
  InputFile out;
  out.conductor = static_cast<int>(n);
  while (true) {
    P.skip_separators();
    if (P.at_end()) break;
    Token where = P.peek();
    std::string kind = P.expect_ident();
    if (kind != "map" && kind != "form" && kind != "moebius") Parser::fail_at(where, "unknown block '" + kind + "'");
    Block B = parse_block(P, kind, where);
    if (kind == "map") {
      if (out.map) violation(where, "more than one map block");
      out.map = build_map(B, 0, out.conductor);
    } else if (kind == "form") {
      if (out.form) violation(where, "more than one form block");
      if (!B.k) violation(where, "form block needs an entry k");
      out.form = KForm{build_map(B, static_cast<int>(*B.k), out.conductor), static_cast<int>(*B.k)};
    } else {
      if (out.moebius) violation(where, "more than one moebius block");
      if (!B.a || !B.b || !B.c || !B.d) violation(where, "moebius block needs entries a, b, c, d");
      CycloElement det = *B.a * *B.d - *B.b * *B.c;
      if (det.is_zero()) violation(where, "moebius matrix has determinant zero");
      out.moebius = MoebiusMap(*B.a, *B.b, *B.c, *B.d);
    }
  }
  return out;
}

CycloElement parse_scalar(const std::string& text, int n) {
  Parser P(lex(text), n);
  P.skip_separators();
  CycloElement x = P.scalar_expression();
  P.skip_separators();
  if (!P.at_end()) P.fail("unexpected trailing input");
  return x;
}

RationalMap parse_rational_function(const std::string& text, int n) {
  Parser P(lex(text), n);
  P.skip_separators();
  Token start = P.peek();
  RF r = P.expression();
  P.skip_separators();
  if (!P.at_end()) P.fail("unexpected trailing input");
  if (r.num.is_zero()) Parser::fail_at(start, "the zero function is not a map");
  return normalize(r.num, r.den);
}

MoebiusMap parse_matrix(const std::string& text, int n) {
  Parser P(lex(text), n);
  P.expect_sym("[");
  P.expect_sym("[");
  CycloElement a = P.scalar_expression();
  P.expect_sym(",");
  CycloElement b = P.scalar_expression();
  P.expect_sym("]");
  P.expect_sym(",");
  P.expect_sym("[");
  CycloElement c = P.scalar_expression();
  P.expect_sym(",");
  CycloElement d = P.scalar_expression();
  P.expect_sym("]");
  P.expect_sym("]");
  if (!P.at_end()) P.fail("unexpected trailing input");
  if ((a * d - b * c).is_zero()) throw Error(ErrorKind::InvariantViolation, "matrix has determinant zero");
  return MoebiusMap(a, b, c, d);
}

}  // namespace moduli
