#pragma once

#include "mertens/real.hpp"

#include <optional>
#include <string>

namespace mertens {

// Directed-rounding enclosure [lo, hi]: the true value is certified to lie
// inside. Endpoints share one precision; operations round lo down and hi up.
struct IntervalValue {
  Real lo;
  Real hi;

  IntervalValue() : lo(64), hi(64) {}
  explicit IntervalValue(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  IntervalValue(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo <= hi)) throw Error("interval endpoints out of order");
  }

  static IntervalValue exact(const Real& x);
  static IntervalValue exact_mpz(const mpz_class& z, mpfr_prec_t prec);
  static IntervalValue exact_mpq(const mpq_class& q, mpfr_prec_t prec);
  // Decimal string read at `prec` bits, widened by `ulps` units in the last
  // shown decimal place (source uncertainty of rounded tables).
  static IntervalValue from_decimal(const std::string& s, mpfr_prec_t prec, double ulps = 0.0);
  static IntervalValue pi(mpfr_prec_t prec);
  static IntervalValue hull(const IntervalValue& a, const IntervalValue& b);

  mpfr_prec_t prec() const { return lo.prec(); }
  Real width() const;
  Real mid() const;
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const;
  bool entirely_greater(const Real& x) const { return lo > x; }
  bool entirely_less(const Real& x) const { return hi < x; }
  // Floor of the true value, when unambiguous.
  std::optional<mpz_class> certified_floor() const;

  std::string str(size_t digits = 0) const;
};

IntervalValue iadd(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec);
IntervalValue isub(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec);
IntervalValue imul(const IntervalValue& a, const IntervalValue& b, mpfr_prec_t prec);
IntervalValue ineg(const IntervalValue& a);
IntervalValue iabs(const IntervalValue& a);
IntervalValue isquare(const IntervalValue& a, mpfr_prec_t prec);
IntervalValue isqrt(const IntervalValue& a, mpfr_prec_t prec);
IntervalValue iexp(const IntervalValue& a, mpfr_prec_t prec);
IntervalValue icos(const IntervalValue& a, mpfr_prec_t prec);
IntervalValue imul_2exp(const IntervalValue& a, long e);

}  // namespace mertens
