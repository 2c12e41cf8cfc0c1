#include "mertens/interval.hpp"

#include <algorithm>
#include <cmath>

namespace mertens {

IntervalValue IntervalValue::exact(const Real& x) {
  IntervalValue r(x.prec());
  r.lo = x;
  r.hi = x;
  return r;
}

IntervalValue IntervalValue::exact_mpz(const mpz_class& z, mpfr_prec_t prec) {
  IntervalValue r(prec);
  r.lo = Real::from_mpz(z, prec, MPFR_RNDD);
  r.hi = Real::from_mpz(z, prec, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::exact_mpq(const mpq_class& q, mpfr_prec_t prec) {
  IntervalValue r(prec);
  r.lo = Real::from_mpq(q, prec, MPFR_RNDD);
  r.hi = Real::from_mpq(q, prec, MPFR_RNDU);
  return r;
}

namespace {

// Magnitude of one unit in the last decimal place shown by `s`.
Real last_place_ulp(const std::string& s, mpfr_prec_t prec) {
  long frac_digits = 0;
  long exp10 = 0;
  size_t epos = s.find_first_of("eE");
  std::string body = epos == std::string::npos ? s : s.substr(0, epos);
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  size_t dot = body.find('.');
  if (dot != std::string::npos) frac_digits = static_cast<long>(body.size() - dot - 1);
  Real u(prec);
  mpfr_set_ui(u.raw(), 10, MPFR_RNDU);
  mpfr_pow_si(u.raw(), u.raw(), exp10 - frac_digits, MPFR_RNDU);
  return u;
}

}  // namespace

IntervalValue IntervalValue::from_decimal(const std::string& s, mpfr_prec_t prec, double ulps) {
  IntervalValue r(prec);
  r.lo = Real::from_string(s, prec, MPFR_RNDD);
  r.hi = Real::from_string(s, prec, MPFR_RNDU);
  if (ulps > 0) {
    Real u = last_place_ulp(s, prec);
    Real k = Real::from_double(ulps, 64);
    Real d = mul(u, k, prec, MPFR_RNDU);
    r.lo = sub(r.lo, d, prec, MPFR_RNDD);
    r.hi = add(r.hi, d, prec, MPFR_RNDU);
  }
  return r;
}

IntervalValue IntervalValue::pi(mpfr_prec_t prec) {
  IntervalValue r(prec);
  r.lo = mertens::pi(prec, MPFR_RNDD);
  r.hi = mertens::pi(prec, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::hull(const IntervalValue& a, const IntervalValue& b) {
  IntervalValue r(std::max(a.prec(), b.prec()));
  r.lo = a.lo <= b.lo ? a.lo : b.lo;
  r.hi = a.hi >= b.hi ? a.hi : b.hi;
  return r;
}

Real IntervalValue::width() const { return sub(hi, lo, prec(), MPFR_RNDU); }

Real IntervalValue::mid() const {
  Real m(prec());
  mpfr_add(m.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m;
}

bool IntervalValue::contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

std::optional<mpz_class> IntervalValue::certified_floor() const {
  mpz_class fl = floor_mpz(lo);
  mpz_class fh = floor_mpz(hi);
  if (fl == fh) return fl;
  // hi may sit exactly on the next integer while the open value is below it;
  // that is still ambiguous for a certified floor.
  return std::nullopt;
}

std::string IntervalValue::str(size_t digits) const {
  size_t d = digits ? digits : static_cast<size_t>(prec() * 0.30103) + 2;
  return "[" + lo.str(d) + ", " + hi.str(d) + "]";
}

IntervalValue iadd(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec) {
  IntervalValue r(prec);
  r.lo = add(a.lo, b.lo, prec, MPFR_RNDD);
  r.hi = add(a.hi, b.hi, prec, MPFR_RNDU);
  return r;
}

IntervalValue isub(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec) {
  IntervalValue r(prec);
  r.lo = sub(a.lo, b.hi, prec, MPFR_RNDD);
  r.hi = sub(a.hi, b.lo, prec, MPFR_RNDU);
  return r;
}

IntervalValue imul(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec) {
  // Hull of the four endpoint products with directed rounding.
  Real cand_lo(prec), cand_hi(prec), t(prec);
  bool first = true;
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  for (const Real* x : as) {
    for (const Real* y : bs) {
      mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDD);
      if (first || t < cand_lo) cand_lo = t;
      mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDU);
      if (first || t > cand_hi) cand_hi = t;
      first = false;
    }
  }
  IntervalValue r(prec);
  r.lo = cand_lo;
  r.hi = cand_hi;
  return r;
}

IntervalValue ineg(const IntervalValue& a) {
  IntervalValue r(a.prec());
  r.lo = neg(a.hi);
  r.hi = neg(a.lo);
  return r;
}

IntervalValue iabs(const IntervalValue& a) {
  IntervalValue r(a.prec());
  if (a.lo.sign() >= 0) return a;
  if (a.hi.sign() <= 0) return ineg(a);
  r.lo = Real(a.prec());
  r.hi = abs(a.lo) > a.hi ? abs(a.lo) : a.hi;
  return r;
}

IntervalValue isquare(const IntervalValue& a, mpfr_prec_t prec) {
  IntervalValue m = iabs(a);
  IntervalValue r(prec);
  mpfr_sqr(r.lo.raw(), m.lo.raw(), MPFR_RNDD);
  mpfr_sqr(r.hi.raw(), m.hi.raw(), MPFR_RNDU);
  return r;
}

IntervalValue isqrt(const IntervalValue& a, mpfr_prec_t prec) {
  if (a.lo.sign() < 0) throw Error("isqrt of interval reaching below zero");
  IntervalValue r(prec);
  mpfr_sqrt(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_sqrt(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}

IntervalValue iexp(const IntervalValue& a, mpfr_prec_t prec) {
  IntervalValue r(prec);
  mpfr_exp(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_exp(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}

IntervalValue imul_2exp(const IntervalValue& a, long e) {
  IntervalValue r(a.prec());
  r.lo = mul_2exp(a.lo, e);
  r.hi = mul_2exp(a.hi, e);
  return r;
}

IntervalValue icos(const IntervalValue& a, mpfr_prec_t prec) {
  IntervalValue one = IntervalValue::exact(Real::from_double(1.0, prec));
  IntervalValue r(prec);

  // Wide arguments cover a full period.
  Real w = a.width();
  Real two_pi = mul_2exp(mertens::pi(prec, MPFR_RNDD), 1);
  if (!(w < two_pi)) {
    r.lo = Real::from_double(-1.0, prec);
    r.hi = Real::from_double(1.0, prec);
    return r;
  }

  // Endpoint values (mpfr_cos performs its own argument reduction).
  Real clo_d(prec), clo_u(prec), chi_d(prec), chi_u(prec);
  mpfr_cos(clo_d.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_cos(clo_u.raw(), a.lo.raw(), MPFR_RNDU);
  mpfr_cos(chi_d.raw(), a.hi.raw(), MPFR_RNDD);
  mpfr_cos(chi_u.raw(), a.hi.raw(), MPFR_RNDU);
  r.lo = clo_d < chi_d ? clo_d : chi_d;
  r.hi = clo_u > chi_u ? clo_u : chi_u;

  // Any k*pi inside [lo, hi] contributes an extremum. Overshooting the k
  // range only widens the result, so rounding slop here is harmless.
  mpfr_prec_t qp = std::max<mpfr_prec_t>(prec, mpfr_get_prec(a.lo.raw())) + 32;
  Real pid = mertens::pi(qp, MPFR_RNDD);
  Real piu = mertens::pi(qp, MPFR_RNDU);
  Real qlo(qp), qhi(qp);
  mpfr_div(qlo.raw(), a.lo.raw(), a.lo.sign() >= 0 ? piu.raw() : pid.raw(), MPFR_RNDD);
  mpfr_div(qhi.raw(), a.hi.raw(), a.hi.sign() >= 0 ? pid.raw() : piu.raw(), MPFR_RNDU);
  mpz_class k = ceil_mpz(qlo);
  mpz_class kend = floor_mpz(qhi);
  for (int guard = 0; k <= kend && guard < 4; ++k, ++guard) {
    if (mpz_even_p(k.get_mpz_t())) {
      if (r.hi < one.hi) r.hi = one.hi;
    } else {
      Real neg_one = neg(one.hi);
      if (r.lo > neg_one) r.lo = neg_one;
    }
  }
  return r;
}

}  // namespace mertens
