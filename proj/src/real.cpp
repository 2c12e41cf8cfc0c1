#include "mertens/real.hpp"

#include <cstdlib>
#include <memory>
#include <vector>

namespace mertens {

std::string Real::str() const {
  if (mpfr_zero_p(v_)) return "0";
  // mpfr guarantees round-trip at ceil(prec*log10(2)) + 2 digits.
  size_t digits = static_cast<size_t>(prec() * 0.30103) + 3;
  return str(digits);
}

std::string Real::str(size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string sign_part;
  if (!mant.empty() && mant[0] == '-') {
    sign_part = "-";
    mant = mant.substr(1);
  }
  // Strip trailing zeros but keep at least one digit.
  size_t last = mant.find_last_not_of('0');
  mant = mant.substr(0, std::max<size_t>(last + 1, 1));
  std::string out;
  if (e <= 0) {
    out = sign_part + "0." + std::string(static_cast<size_t>(-e), '0') + mant;
  } else if (static_cast<size_t>(e) >= mant.size()) {
    out = sign_part + mant + std::string(static_cast<size_t>(e) - mant.size(), '0');
  } else {
    out = sign_part + mant.substr(0, static_cast<size_t>(e)) + "." + mant.substr(static_cast<size_t>(e));
  }
  return out;
}

#define MERTENS_BINOP(name, fn)                                              \
  Real name(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) { \
    Real r(prec);                                                            \
    fn(r.raw(), a.raw(), b.raw(), rnd);                                      \
    return r;                                                                \
  }

MERTENS_BINOP(add, mpfr_add)
MERTENS_BINOP(sub, mpfr_sub)
MERTENS_BINOP(mul, mpfr_mul)
MERTENS_BINOP(div, mpfr_div)
#undef MERTENS_BINOP

Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_sqrt(r.raw(), a.raw(), rnd);
  return r;
}

Real neg(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);  // exact
  return r;
}

Real abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);  // exact
  return r;
}

Real mul_2exp(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);  // exact
  return r;
}

Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_const_pi(r.raw(), rnd);
  return r;
}

Real log2(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_log2(r.raw(), a.raw(), rnd);
  return r;
}

mpz_class floor_mpz(const Real& a) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), a.raw(), MPFR_RNDD);
  return z;
}

mpz_class ceil_mpz(const Real& a) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), a.raw(), MPFR_RNDU);
  return z;
}

mpz_class round_mpz(const Real& a) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), a.raw(), MPFR_RNDN);
  return z;
}

mpq_class to_mpq(const Real& a) {
  if (mpfr_zero_p(a.raw())) return mpq_class(0);
  if (!mpfr_number_p(a.raw())) throw Error("to_mpq on non-finite value");
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), a.raw());
  mpq_class q(mant);
  if (e >= 0) {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
    q *= p2;
  } else {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    q /= p2;
  }
  q.canonicalize();
  return q;
}

}  // namespace mertens
