#include "radical.hpp"

#include <mpfr.h>

#include <cmath>
#include <numeric>
#include <vector>

namespace moduli {

namespace {

class Mp {
 public:
  explicit Mp(mpfr_prec_t p) {
    mpfr_init2(v_, p);
    mpfr_set_zero(v_, 1);
  }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mp& operator=(const Mp& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

using Vec = std::vector<Mp>;

// angle 2 pi num / den
void angle(Mp& out, long num, long den) {
  mpfr_const_pi(out.get(), MPFR_RNDN);
  mpfr_mul_si(out.get(), out.get(), 2 * num, MPFR_RNDN);
  mpfr_div_si(out.get(), out.get(), den, MPFR_RNDN);
}

// Gauss-Jordan inverse with partial pivoting; false if numerically singular.
bool invert(std::vector<Vec>& A, std::vector<Vec>& inv, mpfr_prec_t prec) {
  const size_t d = A.size();
  inv.assign(d, Vec(d, Mp(prec)));
  for (size_t i = 0; i < d; ++i) mpfr_set_ui(inv[i][i].get(), 1, MPFR_RNDN);
  Mp t(prec), f(prec);
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < d; ++r)
      if (mpfr_cmpabs(A[r][col].get(), A[piv][col].get()) > 0) piv = r;
    if (mpfr_zero_p(A[piv][col].get())) return false;
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    mpfr_set(f.get(), A[col][col].get(), MPFR_RNDN);
    for (size_t j = 0; j < d; ++j) {
      mpfr_div(A[col][j].get(), A[col][j].get(), f.get(), MPFR_RNDN);
      mpfr_div(inv[col][j].get(), inv[col][j].get(), f.get(), MPFR_RNDN);
    }
    for (size_t r = 0; r < d; ++r) {
      if (r == col || mpfr_zero_p(A[r][col].get())) continue;
      mpfr_set(f.get(), A[r][col].get(), MPFR_RNDN);
      for (size_t j = 0; j < d; ++j) {
        mpfr_mul(t.get(), f.get(), A[col][j].get(), MPFR_RNDN);
        mpfr_sub(A[r][j].get(), A[r][j].get(), t.get(), MPFR_RNDN);
        mpfr_mul(t.get(), f.get(), inv[col][j].get(), MPFR_RNDN);
        mpfr_sub(inv[r][j].get(), inv[r][j].get(), t.get(), MPFR_RNDN);
      }
    }
  }
  return true;
}

constexpr long kMaxCombinations = 1L << 16;

}  // namespace

std::optional<CycloElement> embedding_root(const CycloElement& c, int m) {
  const int n = c.conductor();
  const int phi = c.degree();
  if (phi < 2 || m < 2 || c.is_zero()) return std::nullopt;

  std::vector<Rational> cf = c.coeffs();
  cf.resize(phi);
  Integer D = 1;
  for (const auto& q : cf) D = lcm(D, Integer(q.get_den()));
  Integer Dm;
  mpz_pow_ui(Dm.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(m));
  std::vector<Integer> C(phi);
  size_t bits = 1;
  for (int j = 0; j < phi; ++j) {
    Rational s = cf[j] * Rational(Dm);
    C[j] = s.get_num();
    bits = std::max(bits, mpz_sizeinbase(C[j].get_mpz_t(), 2));
  }
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits / m + 160 + 4 * phi);

  std::vector<long> H;
  for (long k = 1; 2 * k < n; ++k)
    if (std::gcd(k, static_cast<long>(n)) == 1) H.push_back(k);
  if (static_cast<int>(2 * H.size()) != phi) return std::nullopt;

  long combos = 1;
  for (size_t i = 0; i < H.size(); ++i) {
    combos *= m;
    if (combos > kMaxCombinations) return std::nullopt;
  }

  // rows: real and imaginary parts of zeta^j under zeta -> exp(2 pi i k / n)
  std::vector<Vec> A(phi, Vec(phi, Mp(prec))), Ainv;
  Mp ang(prec);
  for (size_t i = 0; i < H.size(); ++i)
    for (int j = 0; j < phi; ++j) {
      angle(ang, H[i] * j, n);
      mpfr_cos(A[2 * i][j].get(), ang.get(), MPFR_RNDN);
      mpfr_sin(A[2 * i + 1][j].get(), ang.get(), MPFR_RNDN);
    }
  std::vector<Vec> A_copy = A;
  if (!invert(A_copy, Ainv, prec)) return std::nullopt;

  // contributions[i][t]: coordinates obtained from the t-th root at embedding i
  std::vector<std::vector<Vec>> contrib(H.size(), std::vector<Vec>(m, Vec(phi, Mp(prec))));
  Mp re(prec), im(prec), term(prec), rho(prec), theta(prec), a(prec), b(prec);
  for (size_t i = 0; i < H.size(); ++i) {
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    for (int j = 0; j < phi; ++j) {
      mpfr_mul_z(term.get(), A[2 * i][j].get(), C[j].get_mpz_t(), MPFR_RNDN);
      mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
      mpfr_mul_z(term.get(), A[2 * i + 1][j].get(), C[j].get_mpz_t(), MPFR_RNDN);
      mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
    }
    mpfr_hypot(rho.get(), re.get(), im.get(), MPFR_RNDN);
    mpfr_rootn_ui(rho.get(), rho.get(), static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_atan2(theta.get(), im.get(), re.get(), MPFR_RNDN);
    for (int t = 0; t < m; ++t) {
      angle(ang, t, 1);
      mpfr_add(ang.get(), ang.get(), theta.get(), MPFR_RNDN);
      mpfr_div_si(ang.get(), ang.get(), m, MPFR_RNDN);
      mpfr_cos(a.get(), ang.get(), MPFR_RNDN);
      mpfr_sin(b.get(), ang.get(), MPFR_RNDN);
      mpfr_mul(a.get(), a.get(), rho.get(), MPFR_RNDN);
      mpfr_mul(b.get(), b.get(), rho.get(), MPFR_RNDN);
      for (int j = 0; j < phi; ++j) {
        Mp& u = contrib[i][t][j];
        mpfr_mul(u.get(), Ainv[j][2 * i].get(), a.get(), MPFR_RNDN);
        mpfr_mul(term.get(), Ainv[j][2 * i + 1].get(), b.get(), MPFR_RNDN);
        mpfr_add(u.get(), u.get(), term.get(), MPFR_RNDN);
      }
    }
  }

  std::vector<int> choice(H.size(), 0);
  Vec y(phi, Mp(prec));
  Mp diff(prec);
  Integer rounded;
  std::vector<Rational> coords(phi);
  for (long iter = 0; iter < combos; ++iter) {
    bool near_integer = true;
    for (int j = 0; j < phi && near_integer; ++j) {
      mpfr_set_zero(y[j].get(), 1);
      for (size_t i = 0; i < H.size(); ++i) mpfr_add(y[j].get(), y[j].get(), contrib[i][choice[i]][j].get(), MPFR_RNDN);
      mpfr_get_z(rounded.get_mpz_t(), y[j].get(), MPFR_RNDN);
      mpfr_sub_z(diff.get(), y[j].get(), rounded.get_mpz_t(), MPFR_RNDN);
      near_integer = mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -8;
      coords[j] = Rational(rounded, D);
      coords[j].canonicalize();
    }
    if (near_integer) {
      CycloElement x(n, coords);
      if (x.pow(m) == c) return x;
    }
    for (size_t i = 0; i < choice.size(); ++i) {
      if (++choice[i] < m) break;
      choice[i] = 0;
    }
  }
  return std::nullopt;
}

}  // namespace moduli
