#include "mertens/enumeration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mertens {

namespace {

constexpr double kAcceptSlack = 1.0 + 0x1p-30;  // bias float tests toward acceptance

double to_double_up(const Real& r) { return r.to_double_up(); }

}  // namespace

bool PruningProfile::is_full() const {
  for (double f : f_sq)
    if (f < 1.0) return false;
  return true;
}

PruningProfile PruningProfile::full(size_t m, const Real& R) {
  if (m < 1) throw Error("pruning profile needs m >= 1");
  if (R.sign() <= 0) throw Error("pruning radius must be positive");
  PruningProfile p;
  p.base_radius = R;
  p.f_sq.assign(m, 1.0);
  Real r2 = mul(R, R, 2 * R.prec());
  p.radii_sq.assign(m, r2);
  return p;
}

std::vector<double> linear_beta_f_sq(size_t m) {
  std::vector<double> f(m);
  double c = static_cast<double>(m) / 2.0 + 1.0;
  for (size_t i = 1; i <= m; ++i) {
    double x = static_cast<double>(i) / static_cast<double>(m);
    double var = x * (1.0 - x) / c;
    f[i - 1] = std::min(1.0, x + 2.0 * std::sqrt(var));
  }
  f[m - 1] = 1.0;
  // Guard monotonicity (the mean+2*stddev curve dips only past the clamp,
  // but keep the invariant airtight).
  for (size_t i = 1; i < m; ++i) f[i] = std::max(f[i], f[i - 1]);
  return f;
}

PruningProfile PruningProfile::linear_beta(size_t m, const Real& R) {
  if (m < 1) throw Error("pruning profile needs m >= 1");
  if (R.sign() <= 0) throw Error("pruning radius must be positive");
  PruningProfile p;
  p.base_radius = R;
  p.f_sq = linear_beta_f_sq(m);
  Real r2 = mul(R, R, 2 * R.prec());
  p.radii_sq.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    Real ri(r2.prec());
    mpfr_mul_d(ri.raw(), r2.raw(), p.f_sq[i], MPFR_RNDN);
    p.radii_sq.push_back(std::move(ri));
  }
  return p;
}

EnumTarget EnumTarget::zero(size_t m, size_t n) {
  EnumTarget t;
  t.ambient.assign(n, mpq_class(0));
  t.coords.assign(m, Real(64));
  return t;
}

bool EnumTarget::is_zero() const {
  for (const auto& q : ambient)
    if (q != 0) return false;
  return true;
}

EnumTarget EnumTarget::from_ambient(const LatticeBasis& basis, const GramSchmidtData& gso,
                                    std::vector<mpq_class> ambient) {
  size_t m = basis.m(), n = basis.n();
  if (ambient.size() != n) throw Error("target dimension mismatch");
  mpfr_prec_t prec = gso.precision;

  EnumTarget t;
  t.ambient = std::move(ambient);

  // s_i = <t, b_i*> from the exact inner products <t, b_i>.
  std::vector<Real> s(m, Real(prec));
  for (size_t i = 0; i < m; ++i) {
    mpq_class wi = 0;
    for (size_t k = 0; k < n; ++k) wi += t.ambient[k] * mpq_class(basis.rows[i][k]);
    Real acc = Real::from_mpq(wi, prec);
    for (size_t k = 0; k < i; ++k) acc = sub(acc, mul(gso.mu[i][k], s[k], prec), prec);
    s[i] = acc;
  }

  if (m < n) {
    // The enumeration measures distances inside span(B); reject targets
    // with a detectable out-of-span component.
    mpq_class t_norm = 0;
    for (const auto& q : t.ambient) t_norm += q * q;
    Real res = Real::from_mpq(t_norm, prec);
    for (size_t i = 0; i < m; ++i) {
      Real q = div(mul(s[i], s[i], prec), gso.bstar_norms_sq[i], prec);
      res = sub(res, q, prec);
    }
    Real tol = mul_2exp(Real::from_mpq(t_norm + 1, prec), -32);
    if (res > tol) throw Error("target lies outside the lattice span");
  }

  // tau_i = s_i / ||b_i*||^2, then back-substitute for basis coordinates.
  t.coords.assign(m, Real(prec));
  for (size_t ii = m; ii-- > 0;) {
    Real acc = div(s[ii], gso.bstar_norms_sq[ii], prec);
    for (size_t j = ii + 1; j < m; ++j) {
      acc = sub(acc, mul(gso.mu[j][ii], t.coords[j], prec), prec);
    }
    t.coords[ii] = acc;
  }
  return t;
}

namespace {

// Iterative depth-first search over the enumeration tree, 1-based to match
// the usual presentation: level k chooses v_k, partial norms
// rho_k = rho_{k+1} + (c_k - v_k)^2 ||b_k*||^2, bound rho_k <= R^2_{m+1-k}.
// sigma partial sums with sync markers avoid recomputing centers.
class DfsCore {
 public:
  DfsCore(size_t m, std::vector<double> mu, std::vector<double> bstar, std::vector<double> tcoord,
          std::vector<double> bounds, bool dedup, uint64_t node_cap, double time_limit_secs)
      : m_(m),
        mu_(std::move(mu)),
        bstar_(std::move(bstar)),
        t_(std::move(tcoord)),
        bound_(std::move(bounds)),
        dedup_(dedup),
        node_cap_(node_cap),
        deadline_secs_(time_limit_secs),
        start_(std::chrono::steady_clock::now()) {
    size_t w = m_ + 1;
    sigma_.assign((m_ + 2) * w, 0.0);
    rs_.assign(m_ + 1, 0);
    for (size_t k = 0; k <= m_; ++k) rs_[k] = static_cast<long long>(k);
    c_.assign(w, 0.0);
    v_.assign(w, 0);
    wjump_.assign(w, 1);
    rho_.assign(m_ + 2, 0.0);

    for (size_t k = m_; k >= 1; --k) {
      for (size_t i = m_; i >= k + 1; --i) {
        sig(i, k) = sig(i + 1, k) + (t_[i] - static_cast<double>(v_[i])) * muv(i, k);
      }
      c_[k] = t_[k] + sig(k + 1, k);
      v_[k] = pick(k, c_[k]);
      wjump_[k] = 1;
      rho_[k] = rho_[k + 1] + sq(c_[k] - static_cast<double>(v_[k])) * bstar_[k];
    }
    k_ = 1;
  }

  // Next leaf satisfying all float bounds. Fills 0-based coefficients and
  // the partial-norm trace rho_1..rho_m; returns false when exhausted.
  bool next(std::vector<long long>* out, std::vector<double>* trace) {
    if (done_) return false;
    if (pending_advance_) {
      pending_advance_ = false;
      if (dedup_) {
        if (!go_up()) return false;
      } else {
        zigzag(1);
      }
    }
    while (true) {
      if (node_cap_ && nodes_ >= node_cap_) {
        capped_ = done_ = true;
        return false;
      }
      if (deadline_secs_ > 0 && (nodes_ & 0xfff) == 0) {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (el > deadline_secs_) {
          capped_ = done_ = true;
          return false;
        }
      }
      ++nodes_;
      rho_[k_] = rho_[k_ + 1] + sq(c_[k_] - static_cast<double>(v_[k_])) * bstar_[k_];
      if (rho_[k_] <= bound_[k_]) {
        if (k_ == 1) {
          out->assign(v_.begin() + 1, v_.begin() + 1 + static_cast<long>(m_));
          if (trace) trace->assign(rho_.begin() + 1, rho_.begin() + 1 + static_cast<long>(m_));
          pending_advance_ = true;
          return true;
        }
        // down
        --k_;
        size_t k = static_cast<size_t>(k_);
        rs_[k - 1] = std::max(rs_[k - 1], rs_[k]);
        for (size_t i = static_cast<size_t>(rs_[k]); i >= k + 1; --i) {
          sig(i, k) = sig(i + 1, k) + (t_[i] - static_cast<double>(v_[i])) * muv(i, k);
        }
        rs_[k] = static_cast<long long>(k);
        c_[k] = t_[k] + sig(k + 1, k);
        v_[k] = pick(k, c_[k]);
        wjump_[k] = 1;
      } else {
        if (!go_up()) return false;
      }
    }
  }

  // Lower every level bound (SVP radius updates).
  void shrink(double new_bound) {
    for (size_t k = 1; k <= m_; ++k) bound_[k] = std::min(bound_[k], new_bound);
  }

  uint64_t nodes() const { return nodes_; }
  bool capped() const { return capped_; }

 private:
  static double sq(double x) { return x * x; }
  double& sig(size_t i, size_t k) { return sigma_[i * (m_ + 1) + k]; }
  double muv(size_t i, size_t k) const { return mu_[(i - 1) * m_ + (k - 1)]; }

  long long pick(size_t k, double c) const {
    if (dedup_ && k == 1) {
      // coset representative: nearest integer, ties toward the smaller v_1
      return static_cast<long long>(std::ceil(c - 0.5));
    }
    return std::llround(c);
  }

  void zigzag(size_t k) {
    if (static_cast<double>(v_[k]) > c_[k])
      v_[k] -= wjump_[k];
    else
      v_[k] += wjump_[k];
    ++wjump_[k];
  }

  bool go_up() {
    ++k_;
    if (static_cast<size_t>(k_) == m_ + 1) {
      done_ = true;
      return false;
    }
    rs_[k_ - 1] = k_;  // v_k is about to change; mark lower columns stale
    zigzag(static_cast<size_t>(k_));
    return true;
  }

  size_t m_;
  std::vector<double> mu_, bstar_, t_, bound_;
  bool dedup_;
  uint64_t node_cap_;
  double deadline_secs_;
  std::chrono::steady_clock::time_point start_;

  std::vector<double> sigma_;
  std::vector<long long> rs_;
  std::vector<double> c_;
  std::vector<long long> v_, wjump_;
  std::vector<double> rho_;
  long long k_ = 1;
  bool done_ = false, capped_ = false, pending_advance_ = false;
  uint64_t nodes_ = 0;
};

std::vector<double> mu_to_double(const GramSchmidtData& gso, size_t begin, size_t end) {
  size_t d = end - begin;
  std::vector<double> mu(d * d, 0.0);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < i; ++j) mu[i * d + j] = gso.mu[begin + i][begin + j].to_double();
    mu[i * d + i] = 1.0;
  }
  return mu;
}

std::vector<double> bstar_to_double(const GramSchmidtData& gso, size_t begin, size_t end) {
  std::vector<double> b;
  b.reserve(end - begin + 1);
  b.push_back(0.0);  // 1-based padding
  for (size_t i = begin; i < end; ++i) b.push_back(gso.bstar_norms_sq[i].to_double());
  return b;
}

// bound[k] compares against rho_k, i.e. radii_sq[m-k], slacked upward.
std::vector<double> bounds_from_profile(const PruningProfile& p) {
  size_t m = p.m();
  std::vector<double> b(m + 1, 0.0);
  for (size_t k = 1; k <= m; ++k) b[k] = to_double_up(p.radii_sq[m - k]) * kAcceptSlack;
  return b;
}

std::vector<double> pad_one_based(const std::vector<double>& x) {
  std::vector<double> r;
  r.reserve(x.size() + 1);
  r.push_back(0.0);
  r.insert(r.end(), x.begin(), x.end());
  return r;
}

// Exact and extended-precision candidate checks.
class Verifier {
 public:
  Verifier(const LatticeBasis& basis, const EnumTarget& target, const PruningProfile& profile)
      : basis_(basis), target_(target), profile_(profile) {
    radius_sq_exact_ = to_mpq(profile_.radii_sq[profile_.m() - 1]);
  }

  mpq_class exact_dist_sq(const std::vector<long long>& v) const {
    size_t m = basis_.m(), n = basis_.n();
    mpq_class d2 = 0;
    for (size_t col = 0; col < n; ++col) {
      mpz_class u = 0;
      for (size_t i = 0; i < m; ++i) u += static_cast<long>(v[i]) * basis_.rows[i][col];
      mpq_class diff = mpq_class(u) - target_.ambient[col];
      d2 += diff * diff;
    }
    return d2;
  }

  // Full membership test for t + P_f(B, R).
  bool accept(const std::vector<long long>& v, mpq_class* dist_out) {
    mpq_class d2 = exact_dist_sq(v);
    if (dist_out) *dist_out = d2;
    if (d2 > radius_sq_exact_) return false;
    if (profile_.is_full()) return true;  // ||pi_k(x)|| <= ||x|| makes the rest implied
    return cylinders_hold(v, d2);
  }

 private:
  // Constraint k (paper) bounds ||pi_{m+1-k}(w)||^2 = d2 - sum_{i <= m-k}
  // s_i^2 / ||b_i*||^2 where s_i = <w, b_i*>. k = m is the plain distance,
  // already checked; the loop covers k = m-1 .. 1.
  bool cylinders_hold(const std::vector<long long>& v, const mpq_class& d2) {
    ensure_interval_gso();
    size_t m = basis_.m(), n = basis_.n();
    mpfr_prec_t prec = iv_prec_;

    std::vector<mpq_class> diff(n);
    for (size_t col = 0; col < n; ++col) {
      mpz_class u = 0;
      for (size_t r = 0; r < m; ++r) u += static_cast<long>(v[r]) * basis_.rows[r][col];
      diff[col] = mpq_class(u) - target_.ambient[col];
    }
    std::vector<mpq_class> w_dot_b(m, 0);
    for (size_t i = 0; i < m; ++i) {
      mpq_class wi = 0;
      for (size_t col = 0; col < n; ++col) wi += diff[col] * mpq_class(basis_.rows[i][col]);
      w_dot_b[i] = wi;
    }

    std::vector<IntervalValue> s(m);
    IntervalValue used = IntervalValue::exact_mpq(0, prec);
    IntervalValue dist_iv = IntervalValue::exact_mpq(d2, prec);
    for (size_t i = 0; i + 1 < m; ++i) {
      IntervalValue acc = IntervalValue::exact_mpq(w_dot_b[i], prec);
      for (size_t k = 0; k < i; ++k) acc = isub(acc, imul(iv_mu_[i][k], s[k], prec), prec);
      s[i] = acc;
      IntervalValue q = imul(acc, acc, prec);
      q.lo = div(q.lo, iv_r_[i].hi, prec, MPFR_RNDD);
      q.hi = div(q.hi, iv_r_[i].lo, prec, MPFR_RNDU);
      used = iadd(used, q, prec);
      size_t radius_idx = m - i - 2;  // paper k = m - (i+1), 0-based
      IntervalValue rho = isub(dist_iv, used, prec);
      Real rk = profile_.radii_sq[radius_idx];
      if (rho.hi <= rk) continue;
      if (rho.lo > rk) return false;
      if (!exact_cylinder_holds(w_dot_b, d2, i, radius_idx)) return false;
    }
    return true;
  }

  void ensure_interval_gso() {
    if (!iv_mu_.empty()) return;
    auto gram = gram_matrix(basis_);
    size_t m = basis_.m();
    iv_prec_ = 2 * default_gso_precision(basis_) + 64;
    mpfr_prec_t prec = iv_prec_;
    iv_mu_.assign(m, {});
    iv_r_.assign(m, IntervalValue(prec));
    std::vector<std::vector<IntervalValue>> r(m);
    for (size_t i = 0; i < m; ++i) {
      iv_mu_[i].assign(i + 1, IntervalValue(prec));
      r[i].assign(i + 1, IntervalValue(prec));
      for (size_t j = 0; j <= i; ++j) {
        IntervalValue acc = IntervalValue::exact_mpz(gram[i][j], prec);
        for (size_t k = 0; k < j; ++k) acc = isub(acc, imul(iv_mu_[j][k], r[i][k], prec), prec);
        r[i][j] = acc;
        if (j < i) {
          IntervalValue q(prec);
          q.lo = div(acc.lo, r[j][j].hi.sign() > 0 ? r[j][j].hi : r[j][j].lo, prec, MPFR_RNDD);
          q.hi = div(acc.hi, r[j][j].lo.sign() > 0 ? r[j][j].lo : r[j][j].hi, prec, MPFR_RNDU);
          if (q.hi < q.lo) std::swap(q.lo, q.hi);
          iv_mu_[i][j] = q;
        }
      }
      iv_r_[i] = r[i][i];
      if (iv_r_[i].lo.sign() <= 0)
        throw Error("interval GSO could not separate ||b*||^2 from zero");
    }
  }

  // Exact rational fallback, built on demand.
  void ensure_exact_gso() {
    if (!ex_mu_.empty()) return;
    auto gram = gram_matrix(basis_);
    size_t m = basis_.m();
    ex_mu_.assign(m, {});
    ex_r_.assign(m, 0);
    std::vector<std::vector<mpq_class>> r(m);
    for (size_t i = 0; i < m; ++i) {
      ex_mu_[i].assign(i + 1, 0);
      r[i].assign(i + 1, 0);
      for (size_t j = 0; j <= i; ++j) {
        mpq_class acc(gram[i][j]);
        for (size_t k = 0; k < j; ++k) acc -= ex_mu_[j][k] * r[i][k];
        r[i][j] = acc;
        if (j < i) ex_mu_[i][j] = acc / r[j][j];
      }
      ex_r_[i] = r[i][i];
    }
  }

  bool exact_cylinder_holds(const std::vector<mpq_class>& w_dot_b, const mpq_class& d2,
                            size_t upto, size_t radius_idx) {
    ensure_exact_gso();
    size_t m = basis_.m();
    std::vector<mpq_class> s(m);
    mpq_class used = 0;
    for (size_t i = 0; i <= upto; ++i) {
      mpq_class acc = w_dot_b[i];
      for (size_t k = 0; k < i; ++k) acc -= ex_mu_[i][k] * s[k];
      s[i] = acc;
      used += acc * acc / ex_r_[i];
    }
    mpq_class rho = d2 - used;
    return rho <= to_mpq(profile_.radii_sq[radius_idx]);
  }

  const LatticeBasis& basis_;
  const EnumTarget& target_;
  const PruningProfile& profile_;
  mpq_class radius_sq_exact_;

  mpfr_prec_t iv_prec_ = 0;
  std::vector<std::vector<IntervalValue>> iv_mu_;
  std::vector<IntervalValue> iv_r_;
  std::vector<std::vector<mpq_class>> ex_mu_;
  std::vector<mpq_class> ex_r_;
};

}  // namespace

struct BddEnumerator::Impl {
  LatticeBasis basis;
  EnumTarget target;
  PruningProfile profile;
  EnumOptions options;
  EnumStats stats;
  std::unique_ptr<DfsCore> core;
  std::unique_ptr<Verifier> verifier;

  Impl(const LatticeBasis& b, const GramSchmidtData& gso, EnumTarget t, PruningProfile p,
       EnumOptions o)
      : basis(b), target(std::move(t)), profile(std::move(p)), options(o) {
    size_t m = b.m();
    if (profile.m() != m) throw Error("pruning profile length != basis rank");
    if (target.coords.size() != m) throw Error("target coords length != basis rank");
    if (gso.m() != m) throw Error("GSO data does not match basis");
    std::vector<double> tc(m);
    for (size_t i = 0; i < m; ++i) tc[i] = target.coords[i].to_double();
    core = std::make_unique<DfsCore>(m, mu_to_double(gso, 0, m), bstar_to_double(gso, 0, m),
                                     pad_one_based(tc), bounds_from_profile(profile),
                                     options.dedup_b1, options.node_cap, options.time_limit_secs);
    verifier = std::make_unique<Verifier>(basis, target, profile);
  }
};

BddEnumerator::BddEnumerator(const LatticeBasis& basis, const GramSchmidtData& gso,
                             EnumTarget target, PruningProfile profile, EnumOptions options)
    : impl_(std::make_unique<Impl>(basis, gso, std::move(target), std::move(profile), options)) {}

BddEnumerator::~BddEnumerator() = default;
BddEnumerator::BddEnumerator(BddEnumerator&&) noexcept = default;

std::optional<EnumCandidate> BddEnumerator::next() {
  std::vector<long long> v;
  std::vector<double> trace;
  while (impl_->core->next(&v, impl_->options.record_partial_norms ? &trace : nullptr)) {
    mpq_class d2;
    if (!impl_->verifier->accept(v, &d2)) {
      ++impl_->stats.false_accepts;
      continue;
    }
    EnumCandidate cand;
    cand.coeffs = v;
    cand.dist_sq_exact = d2;
    cand.dist_sq = mpq_class(d2).get_d();
    if (impl_->options.record_partial_norms) cand.partial_norms = trace;
    ++impl_->stats.emitted;
    impl_->stats.nodes = impl_->core->nodes();
    impl_->stats.complete = !impl_->core->capped();
    return cand;
  }
  impl_->stats.nodes = impl_->core->nodes();
  impl_->stats.complete = !impl_->core->capped();
  return std::nullopt;
}

const EnumStats& BddEnumerator::stats() const { return impl_->stats; }

std::vector<EnumCandidate> enumerate_bdd(const LatticeBasis& basis, const GramSchmidtData& gso,
                                         const EnumTarget& target, const PruningProfile& profile,
                                         EnumOptions options, EnumStats* stats) {
  BddEnumerator en(basis, gso, target, profile, options);
  std::vector<EnumCandidate> out;
  while (auto c = en.next()) out.push_back(std::move(*c));
  if (stats) *stats = en.stats();
  if (!en.stats().complete && options.node_cap == 0 && options.time_limit_secs == 0)
    throw Error("enumeration incomplete without a configured cap");
  return out;
}

std::optional<EnumCandidate> enumerate_svp(const LatticeBasis& basis, const GramSchmidtData& gso,
                                           const PruningProfile& profile, EnumOptions options,
                                           EnumStats* stats) {
  size_t m = basis.m();
  if (profile.m() != m) throw Error("pruning profile length != basis rank");
  // pre: R >= ||b_1||, otherwise even b_1 is outside the search ball.
  mpq_class b1_sq(basis.row_norm_sq(0));
  if (to_mpq(profile.radii_sq[m - 1]) < b1_sq)
    throw Error("enumerate_svp: radius below ||b_1||");

  std::vector<double> zero(m, 0.0);
  DfsCore core(m, mu_to_double(gso, 0, m), bstar_to_double(gso, 0, m), pad_one_based(zero),
               bounds_from_profile(profile), /*dedup=*/false, options.node_cap,
               options.time_limit_secs);

  std::optional<EnumCandidate> best;
  mpz_class best_norm;
  std::vector<long long> v;
  std::vector<double> trace;
  while (core.next(&v, options.record_partial_norms ? &trace : nullptr)) {
    bool zerovec = true;
    for (long long x : v)
      if (x) {
        zerovec = false;
        break;
      }
    if (zerovec) continue;
    // exact integer norm
    mpz_class norm = 0;
    for (size_t col = 0; col < basis.n(); ++col) {
      mpz_class u = 0;
      for (size_t i = 0; i < m; ++i) u += static_cast<long>(v[i]) * basis.rows[i][col];
      norm += u * u;
    }
    if (mpq_class(norm) > to_mpq(profile.radii_sq[m - 1])) continue;
    if (!best || norm < best_norm) {
      best_norm = norm;
      EnumCandidate c;
      c.coeffs = v;
      c.dist_sq_exact = mpq_class(norm);
      c.dist_sq = c.dist_sq_exact.get_d();
      if (options.record_partial_norms) c.partial_norms = trace;
      best = std::move(c);
      core.shrink(mpz_class(norm).get_d() * kAcceptSlack);
    }
  }
  if (stats) {
    stats->nodes = core.nodes();
    stats->complete = !core.capped();
    stats->emitted = best ? 1 : 0;
  }
  return best;
}

std::optional<BlockSvpResult> svp_block(const GramSchmidtData& gso, size_t begin, size_t end,
                                        const PruningProfile& profile, EnumOptions options,
                                        EnumStats* stats) {
  if (end <= begin || end > gso.m()) throw Error("svp_block: bad range");
  size_t d = end - begin;
  if (profile.m() != d) throw Error("svp_block: profile length != block size");
  std::vector<double> zero(d, 0.0);
  DfsCore core(d, mu_to_double(gso, begin, end), bstar_to_double(gso, begin, end),
               pad_one_based(zero), bounds_from_profile(profile), /*dedup=*/false,
               options.node_cap, options.time_limit_secs);

  mpfr_prec_t prec = gso.precision;
  std::optional<BlockSvpResult> best;
  std::vector<long long> v;
  while (core.next(&v, nullptr)) {
    bool zerovec = true;
    for (long long x : v)
      if (x) {
        zerovec = false;
        break;
      }
    if (zerovec) continue;
    // Recompute the squared norm at full GSO precision:
    // ||sum v_i pi(b_i)||^2 = sum_k (v_k + sum_{i>k} v_i mu_{i,k})^2 ||b_k*||^2.
    Real norm(prec);
    for (size_t k = 0; k < d; ++k) {
      Real y = Real::from_double(static_cast<double>(v[k]), prec);
      for (size_t i = k + 1; i < d; ++i) {
        Real term(prec);
        mpfr_mul_si(term.raw(), gso.mu[begin + i][begin + k].raw(), v[i], MPFR_RNDN);
        y = add(y, term, prec);
      }
      norm = add(norm, mul(mul(y, y, prec), gso.bstar_norms_sq[begin + k], prec), prec);
    }
    if (!best || norm < best->norm_sq) {
      best = BlockSvpResult{v, norm};
      core.shrink(norm.to_double_up() * kAcceptSlack);
    }
  }
  if (stats) {
    stats->nodes = core.nodes();
    stats->complete = !core.capped();
    stats->emitted = best ? 1 : 0;
  }
  return best;
}

double gaussian_estimate_log2(const LatticeBasis& basis, const PruningProfile& profile) {
  size_t m = basis.m();
  mpfr_prec_t prec = 128;
  // log2 vol Ball_m(R) = (m/2) log2 pi + m log2 R - log2 Gamma(m/2 + 1)
  Real half_m = Real::from_double(static_cast<double>(m) / 2.0 + 1.0, prec);
  Real lg(prec);
  mpfr_lngamma(lg.raw(), half_m.raw(), MPFR_RNDN);
  Real ln2(prec);
  mpfr_const_log2(ln2.raw(), MPFR_RNDN);
  double log2_gamma = div(lg, ln2, prec).to_double();
  double log2_pi = log2(pi(prec), 64).to_double();
  double log2_R = log2(profile.base_radius, 64).to_double();
  double log2_det = log2(determinant(basis), 64).to_double();
  return 0.5 * static_cast<double>(m) * log2_pi + static_cast<double>(m) * log2_R - log2_gamma -
         log2_det;
}

double gaussian_estimate(const LatticeBasis& basis, const PruningProfile& profile) {
  return std::exp2(gaussian_estimate_log2(basis, profile));
}

}  // namespace mertens
