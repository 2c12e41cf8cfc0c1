#include "mertens/evaluator.hpp"

#include "mertens/mertens_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mertens {

namespace {

// Working precision for gamma*y: the argument reduction mod 2*pi consumes
// the integer part's bits, so budget for them explicitly.
mpfr_prec_t working_precision(const mpq_class& y, const std::vector<WeightedZero>& zeros,
                              mpfr_prec_t precision_bits) {
  double ylog = 1.0;
  if (y != 0) {
    ylog = std::abs(mpq_class(y).get_d());
    ylog = ylog > 1 ? std::log2(ylog) : 1.0;
  }
  double gmax = 1.0;
  for (const auto& z : zeros) gmax = std::max(gmax, z.base.gamma(64).hi.to_double());
  long arg_bits = static_cast<long>(ylog + std::log2(gmax)) + 1;
  mpfr_prec_t p = precision_bits + std::max<long>(arg_bits, 0) + 64;
  // y is exact dyadic; make sure it stays representable
  size_t y_bits = mpz_sizeinbase(y.get_num().get_mpz_t(), 2) +
                  mpz_sizeinbase(y.get_den().get_mpz_t(), 2);
  return std::max<mpfr_prec_t>(p, static_cast<mpfr_prec_t>(y_bits) + 8);
}

struct SumResult {
  IntervalValue value;
  size_t widest_index = 0;
  double widest_width_log2 = -1e9;
};

SumResult cosine_sum(const mpq_class& y, const std::vector<WeightedZero>& zeros,
                     mpfr_prec_t precision_bits, double height_limit) {
  mpfr_prec_t p = working_precision(y, zeros, precision_bits);
  IntervalValue yiv = IntervalValue::exact_mpq(y, p);

  SumResult res;
  res.value = IntervalValue::exact_mpq(0, p);
  for (size_t i = 0; i < zeros.size(); ++i) {
    const WeightedZero& z = zeros[i];
    IntervalValue g = z.base.gamma(p);
    if (height_limit >= 0 && !(g.hi < Real::from_double(height_limit, p))) continue;
    IntervalValue theta = isub(imul(g, yiv, p), z.base.psi(p), p);
    IntervalValue c = icos(theta, p);
    IntervalValue term = imul(z.alpha_star_at(p), c, p);
    double wlog = std::log2(std::max(term.width().to_double(), 1e-300));
    if (wlog > res.widest_width_log2) {
      res.widest_width_log2 = wlog;
      res.widest_index = i;
    }
    res.value = iadd(res.value, term, p);
  }
  res.value = imul_2exp(res.value, 1);
  return res;
}

IntervalValue eval_sum_checked(const mpq_class& y, const std::vector<WeightedZero>& zeros,
                               mpfr_prec_t precision_bits, double height_limit) {
  Real limit = mul_2exp(Real::from_double(1.0, 64), -(precision_bits / 4));
  SumResult r = cosine_sum(y, zeros, precision_bits, height_limit);
  if (!(r.value.width() > limit)) return r.value;
  // one escalation, then conclude the zero data itself is the limit
  SumResult r2 = cosine_sum(y, zeros, precision_bits * 2, height_limit);
  if (!(r2.value.width() > limit)) return r2.value;
  const WeightedZero& z = zeros[r2.widest_index];
  throw Error("eval: zero data precision insufficient at this y (limiting zero gamma=" +
              z.base.gamma_str.substr(0, 12) + ", " + std::to_string(z.base.precision_digits) +
              " digits)");
}

}  // namespace

IntervalValue eval_h(const mpq_class& y, const ZeroDataset& dataset, mpfr_prec_t precision_bits) {
  if (y < 0) throw Error("eval_h: y must be nonnegative");
  return eval_sum_checked(y, dataset.zeros, precision_bits, -1.0);
}

IntervalValue eval_qN(const mpq_class& y, const ZeroDataset& dataset, double height_cutoff,
                      mpfr_prec_t precision_bits) {
  if (y < 0) throw Error("eval_qN: y must be nonnegative");
  if (dataset.mode != Mode::QN) throw Error("eval_qN needs a QN-mode dataset (damping 0)");
  if (height_cutoff <= 0) return IntervalValue::exact_mpq(0, precision_bits);
  return eval_sum_checked(y, dataset.zeros, precision_bits, height_cutoff);
}

IntervalValue eval_partial(const mpq_class& y, const std::vector<WeightedZero>& zeros,
                           mpfr_prec_t precision_bits) {
  return eval_sum_checked(y, zeros, precision_bits, -1.0);
}

IntervalValue mode_threshold(Mode mode, mpfr_prec_t prec) {
  IntervalValue one = IntervalValue::exact_mpq(1, prec);
  switch (mode) {
    case Mode::HP: {
      IntervalValue e40 = iexp(IntervalValue::exact_mpq(-40, prec), prec);
      return iadd(one, e40, prec);
    }
    case Mode::HSTR:
      return iadd(one, IntervalValue::from_decimal("6e-8", prec), prec);
    case Mode::QN:
      throw Error("q_N has no certification threshold");
  }
  throw Error("bad mode");
}

CandidateReport to_bound(const mpq_class& y, const IntervalValue& h, Mode mode) {
  const mpfr_prec_t prec = 192;
  CandidateReport rep;
  rep.y = y;
  rep.y_str = dyadic_decimal(y);
  rep.mode = mode;
  rep.h = h;

  Real yr = Real::from_mpq(y, prec);
  Real e7(prec), e5e4(prec);
  mpfr_set_ui(e7.raw(), 7, MPFR_RNDN);
  mpfr_exp(e7.raw(), e7.raw(), MPFR_RNDU);
  mpfr_set_ui(e5e4.raw(), 50000, MPFR_RNDN);
  mpfr_exp(e5e4.raw(), e5e4.raw(), MPFR_RNDD);
  rep.in_theorem_range = (yr >= e7 && yr <= e5e4);

  if (mode == Mode::QN) return rep;  // no theorem applies

  IntervalValue thr = mode_threshold(mode, prec);
  IntervalValue habs = iabs(h);
  rep.hit = habs.lo > thr.hi;

  if (!rep.in_theorem_range) return rep;

  Real sqrt_y = sqrt(yr, prec);
  rep.bound_simple = add(yr, sqrt_y, prec);

  IntervalValue k = IntervalValue::from_decimal(damping_constant(mode), prec);
  Real ky = mul(k.hi, yr, prec);
  Real sqrt_ky = sqrt(ky, prec);
  rep.bound_refined = add(yr, mul_2exp(sqrt_ky, 1), prec);

  if (rep.hit) {
    Real alpha = sub(habs.lo, thr.hi, prec, MPFR_RNDD);
    if (alpha.sign() > 0) {
      rep.widened_alpha = alpha;
      Real half_y = mul_2exp(yr, -1);
      rep.widened_correction_exp = add(half_y, sqrt_ky, prec);
    }
  }
  return rep;
}

CorrelationReport correlation_report(std::vector<CorrelationRow> rows) {
  if (rows.size() < 2) throw Error("correlation_report needs at least 2 candidates");
  CorrelationReport rep;

  auto ranks = [](std::vector<double> vals) {
    size_t n = vals.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    std::vector<double> rk(n, 0);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && vals[idx[j + 1]] == vals[idx[i]]) ++j;
      double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank for ties
      for (size_t t = i; t <= j; ++t) rk[idx[t]] = avg;
      i = j + 1;
    }
    return rk;
  };

  std::vector<double> partial, full;
  partial.reserve(rows.size());
  full.reserve(rows.size());
  for (const auto& r : rows) {
    partial.push_back(r.partial_sum);
    full.push_back(0.5 * (r.h_lo + r.h_hi));
  }
  std::vector<double> ra = ranks(partial), rb = ranks(full);
  double n = static_cast<double>(rows.size());
  double ma = 0, mb = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  rep.spearman = (da > 0 && db > 0) ? num / std::sqrt(da * db) : 0.0;
  rep.rows = std::move(rows);
  return rep;
}

}  // namespace mertens
