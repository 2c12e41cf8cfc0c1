#include "mertens/mertens_lattice.hpp"

#include <cmath>
#include <functional>

namespace mertens {

const char* sign_name(SearchSign s) { return s == SearchSign::POSITIVE ? "pos" : "neg"; }

SearchSign sign_from_name(const std::string& s) {
  if (s == "pos" || s == "positive") return SearchSign::POSITIVE;
  if (s == "neg" || s == "negative") return SearchSign::NEGATIVE;
  throw Error("unknown sign '" + s + "' (expected pos or neg)");
}

void MertensParams::validate() const {
  if (N < 1) throw Error("N must be >= 1");
  if (nu < 1) throw Error("nu must be >= 1");
  // nu > nu_y is the productive (unbalanced) regime; equality is still a
  // well-defined lattice and is used by small sanity instances.
  if (nu < nu_y) throw Error("nu must be >= nu_y");
  if (nu_t < 0) throw Error("nu_t must be >= 0");
  if (!(radius_scale >= 1.0)) throw Error("radius_scale must be >= 1");
}

namespace {

mpz_class certified_floor_of(const std::function<IntervalValue(mpfr_prec_t)>& make,
                             mpfr_prec_t start, const std::string& what) {
  for (mpfr_prec_t p = start; p <= start * 16; p *= 2) {
    IntervalValue iv = make(p);
    if (auto z = iv.certified_floor()) return *z;
  }
  throw Error("insufficient zero precision for exact floor of " + what +
              " (more source digits needed)");
}

mpz_class pow2(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

Real radius_from_det(const mpz_class& det, const MertensParams& params) {
  const mpfr_prec_t prec = 192;
  size_t dim = static_cast<size_t>(params.N) + 1;
  Real det_r = Real::from_mpz(det, mpz_sizeinbase(det.get_mpz_t(), 2) + 8);
  Real root(prec);
  mpfr_rootn_ui(root.raw(), det_r.raw(), static_cast<unsigned long>(dim), MPFR_RNDN);
  // sqrt(dim / (2 pi e))
  Real two_pi_e = mul_2exp(pi(prec), 1);
  Real e(prec);
  mpfr_set_ui(e.raw(), 1, MPFR_RNDN);
  mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
  two_pi_e = mul(two_pi_e, e, prec);
  Real ratio = div(Real::from_double(static_cast<double>(dim), prec), two_pi_e, prec);
  Real k = mul(sqrt(ratio, prec), root, prec);
  Real scale(prec);
  mpfr_set_d(scale.raw(), params.radius_scale, MPFR_RNDN);
  return mul(k, scale, prec);
}

}  // namespace

mpz_class balanced_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());  // r in [0, p)
  if (2 * r > p) r -= p;
  return r;
}

std::string dyadic_decimal(const mpq_class& q) {
  mpz_class num = q.get_num(), den = q.get_den();
  if (den == 0) throw Error("dyadic_decimal: zero denominator");
  // Denominators of the form 2^a 5^b have finite decimal expansions; that
  // covers dyadic y values and decimal table entries alike.
  unsigned long twos = 0, fives = 0;
  mpz_class d = den;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) throw Error("dyadic_decimal: denominator has factors other than 2 and 5");
  unsigned long k = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, k - twos);
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k - fives);
  mpz_class scaled = num * scale * five;  // value = scaled / 10^k
  bool negative = scaled < 0;
  mpz_class magnitude = negative ? mpz_class(-scaled) : scaled;
  std::string digits = magnitude.get_str();
  if (digits.size() <= k) digits = std::string(k + 1 - digits.size(), '0') + digits;
  std::string out = digits.substr(0, digits.size() - k);
  if (k > 0) {
    std::string frac = digits.substr(digits.size() - k);
    size_t last = frac.find_last_not_of('0');
    if (last != std::string::npos) out += "." + frac.substr(0, last + 1);
  }
  return negative ? "-" + out : out;
}

MertensInstance build_instance(const std::vector<WeightedZero>& zeros,
                               const MertensParams& params) {
  params.validate();
  if (zeros.size() != static_cast<size_t>(params.N))
    throw Error("build_instance: expected " + std::to_string(params.N) + " zeros, got " +
                std::to_string(zeros.size()));

  const size_t N = zeros.size();
  const mpfr_prec_t start_prec = static_cast<mpfr_prec_t>(params.nu + 96);

  // Working rule for how many record digits a nu-bit construction needs.
  const int required_digits = static_cast<int>(params.nu / 3 + 20);
  for (const auto& z : zeros) {
    if (z.base.precision_digits < required_digits)
      throw Error("insufficient zero precision for exact floor at nu=" +
                  std::to_string(params.nu) + ": record carries " +
                  std::to_string(z.base.precision_digits) + " digits, need >= " +
                  std::to_string(required_digits));
  }

  MertensInstance inst;
  inst.params = params;
  inst.zeros = zeros;

  // The floors are exact functions of the decimal records: build the
  // entries from the records read as exact rationals, escalating precision
  // until every floor is certified.
  for (size_t i = 0; i < N; ++i) {
    const WeightedZero& z = zeros[i];
    auto sqrt_astar = [&](mpfr_prec_t p) { return isqrt(z.alpha_star_exact_at(p), p); };

    inst.gamma_row.push_back(certified_floor_of(
        [&](mpfr_prec_t p) {
          IntervalValue v = imul(sqrt_astar(p), z.base.gamma_exact(p), p);
          return imul_2exp(v, params.nu_y);
        },
        start_prec, "sqrt(a*_" + std::to_string(i + 1) + ") gamma 2^nu_y"));

    inst.moduli.push_back(certified_floor_of(
        [&](mpfr_prec_t p) {
          IntervalValue two_pi = imul_2exp(IntervalValue::pi(p), 1);
          IntervalValue v = imul(sqrt_astar(p), two_pi, p);
          return imul_2exp(v, params.nu);
        },
        start_prec, "sqrt(a*_" + std::to_string(i + 1) + ") 2 pi 2^nu"));

    inst.target_entries.push_back(certified_floor_of(
        [&](mpfr_prec_t p) {
          IntervalValue psi = z.base.psi_exact(p);
          if (params.sign == SearchSign::NEGATIVE) psi = iadd(psi, IntervalValue::pi(p), p);
          IntervalValue v = imul(sqrt_astar(p), psi, p);
          return imul_2exp(v, params.nu);
        },
        start_prec, "sqrt(a*_" + std::to_string(i + 1) + ") psi 2^nu"));
  }

  std::vector<std::vector<mpz_class>> rows(N + 1, std::vector<mpz_class>(N + 1, 0));
  for (size_t i = 0; i < N; ++i) rows[0][i] = inst.gamma_row[i];
  rows[0][N] = pow2(params.nu_t);
  for (size_t i = 0; i < N; ++i) rows[i + 1][i] = inst.moduli[i];
  inst.basis = LatticeBasis::from_rows(std::move(rows));

  inst.det = pow2(params.nu_t);
  for (const auto& p : inst.moduli) inst.det *= p;

  inst.target = inst.target_entries;
  inst.target.push_back(0);

  inst.K = radius_from_det(inst.det, params);
  return inst;
}

Real radius(const MertensInstance& instance) {
  return radius_from_det(instance.det, instance.params);
}

EnumTarget MertensInstance::enum_target(const LatticeBasis& reduced_basis,
                                        const GramSchmidtData& gso) const {
  std::vector<mpq_class> amb;
  amb.reserve(target.size());
  for (const auto& t : target) amb.emplace_back(t);
  return EnumTarget::from_ambient(reduced_basis, gso, std::move(amb));
}

CandidateY recover_y(const EnumCandidate& candidate, const MertensInstance& instance,
                     const LatticeBasis& basis_used) {
  const size_t dim = instance.basis.n();
  if (basis_used.n() != dim || candidate.coeffs.size() != basis_used.m())
    throw Error("recover_y: candidate/basis shape mismatch");

  // Ambient point, exactly.
  std::vector<mpz_class> u(dim, 0);
  for (size_t i = 0; i < basis_used.m(); ++i)
    for (size_t col = 0; col < dim; ++col) u[col] += static_cast<long>(candidate.coeffs[i]) * basis_used.rows[i][col];

  mpz_class scale_t = pow2(instance.params.nu_t);
  mpz_class x = u[dim - 1] / scale_t;
  if (x * scale_t != u[dim - 1])
    throw Error("recover_y: last coordinate not divisible by 2^nu_t (wrong basis?)");

  CandidateY out;
  out.x = x;
  long shift = instance.params.nu_y - instance.params.nu;
  mpq_class y(x);
  if (shift >= 0)
    y *= pow2(shift);
  else
    y /= pow2(-shift);
  y.canonicalize();
  out.y = y;
  out.y_str = dyadic_decimal(y);

  out.residual_sq = 0;
  for (size_t i = 0; i + 1 < dim; ++i) {
    mpz_class e = balanced_mod(x * instance.gamma_row[i] - instance.target_entries[i],
                               instance.moduli[i]);
    out.residual_sq += e * e;
  }
  out.dist_sq = candidate.dist_sq_exact;
  return out;
}

PredictedRanges predict_ranges(const MertensParams& params,
                               const std::vector<WeightedZero>& zeros) {
  params.validate();
  if (zeros.size() != static_cast<size_t>(params.N))
    throw Error("predict_ranges: zero count != N");
  const mpfr_prec_t prec = 128;
  double dim = static_cast<double>(params.N + 1);

  // c = -log2 sqrt(2 pi e) + (1/(N+1)) sum log2(2 pi sqrt(a*_i))
  Real two_pi = mul_2exp(pi(prec), 1);
  Real e(prec);
  mpfr_set_ui(e.raw(), 1, MPFR_RNDN);
  mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
  double log2_2pie = log2(mul(two_pi, e, prec), 64).to_double();
  double log2_2pi = log2(two_pi, 64).to_double();

  double sum = 0;
  for (const auto& z : zeros) {
    double la = log2(z.alpha_star.mid(), 64).to_double();
    sum += log2_2pi + 0.5 * la;
  }
  PredictedRanges r;
  r.c_log2 = -0.5 * log2_2pie + sum / dim;
  double gap = static_cast<double>(params.nu - params.nu_t) / dim;
  double scale_log2 = std::log2(params.radius_scale);
  r.entry_lo_log2 = r.c_log2 - gap;
  r.entry_hi_log2 = r.entry_lo_log2 + scale_log2;
  r.y_lo_log2 = r.c_log2 + static_cast<double>(params.nu_y - params.nu_t) - gap;
  r.y_hi_log2 = r.y_lo_log2 + scale_log2;
  return r;
}

}  // namespace mertens
