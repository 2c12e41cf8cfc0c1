#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace mertens {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Value-semantic mpfr wrapper. Each value carries its own precision; the
// arithmetic helpers below take an explicit destination precision and
// rounding mode so callers control the error direction.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_double(double d, mpfr_prec_t prec = 64) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static Real from_mpz(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }
  static Real from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  // Parses a decimal string; `rnd` controls which side the result lands on.
  static Real from_string(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    const char* c = s.c_str();
    char* end = nullptr;
    mpfr_strtofr(r.v_, c, &end, 10, rnd);
    if (s.empty() || end != c + s.size())
      throw Error("not a decimal number: '" + s + "'");
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double to_double_up() const { return mpfr_get_d(v_, MPFR_RNDU); }
  double to_double_down() const { return mpfr_get_d(v_, MPFR_RNDD); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Shortest decimal string that parses back to the same value.
  std::string str() const;
  // Fixed count of significant digits.
  std::string str(size_t digits) const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// Destination-precision arithmetic. All results are freshly allocated.
Real add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real neg(const Real& a);
Real abs(const Real& a);
Real mul_2exp(const Real& a, long e);  // exact
Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real log2(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

// floor/ceil as exact integers.
mpz_class floor_mpz(const Real& a);
mpz_class ceil_mpz(const Real& a);
mpz_class round_mpz(const Real& a);

mpq_class to_mpq(const Real& a);  // exact (mpfr values are dyadic rationals)

}  // namespace mertens
