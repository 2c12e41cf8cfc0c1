#include "mertens/reduction.hpp"

#include <chrono>
#include <cmath>

namespace mertens {

void ReductionParams::validate(size_t m) const {
  if (!(delta > 0.25 && delta < 1.0)) throw Error("delta must lie in (1/4, 1)");
  if (beta_start < 2) throw Error("beta_start must be >= 2");
  if (beta_end < beta_start) throw Error("beta_end must be >= beta_start");
  if (static_cast<size_t>(beta_end) > m) throw Error("beta_end exceeds basis rank");
}

namespace {

struct PrecisionRetry {};  // internal: escalate GSO precision once and redo

// Working state for all reduction algorithms: exact integer rows, exact
// Gram matrix, unimodular log, and a floating GSO recomputed row-by-row
// from the Gram matrix.
class Reducer {
 public:
  Reducer(const LatticeBasis& basis, mpfr_prec_t prec)
      : m_(basis.m()), n_(basis.n()), rows_(basis.rows), prec_(prec) {
    gram_ = gram_matrix(basis);
    u_.assign(m_, std::vector<mpz_class>(m_, 0));
    for (size_t i = 0; i < m_; ++i) u_[i][i] = 1;
    mu_.assign(m_, {});
    r_.assign(m_, {});
    for (size_t i = 0; i < m_; ++i) {
      mu_[i].assign(i + 1, Real(prec_));
      r_[i].assign(i + 1, Real(prec_));
    }
    bstar_.assign(m_, Real(prec_));
    gso_rows_ = 0;
  }

  size_t m() const { return m_; }

  LatticeBasis basis() const { return LatticeBasis::from_rows(rows_); }
  TransformationLog transform() const { return TransformationLog{u_}; }
  mpz_class b1_norm_sq() const { return gram_[0][0]; }

  GramSchmidtData gso_snapshot(size_t upto) {
    ensure_gso(upto);
    GramSchmidtData g;
    g.precision = prec_;
    g.mu.assign(upto, {});
    for (size_t i = 0; i < upto; ++i) g.mu[i] = mu_[i];
    g.bstar_norms_sq.assign(bstar_.begin(), bstar_.begin() + upto);
    return g;
  }

  void ensure_gso(size_t upto) {
    for (; gso_rows_ < upto; ++gso_rows_) compute_gso_row(gso_rows_);
  }

  // One full size-reduction sweep over row i; loops until |mu| <= 1/2 is
  // certified or the precision is declared insufficient.
  void size_reduce_row(size_t i) {
    ensure_gso(i + 1);
    Real half = Real::from_double(0.5, prec_);
    Real cert = Real::from_double(0.5 + 0x1p-10, prec_);
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (size_t j = i; j-- > 0;) {
        if (!(abs(mu_[i][j]) > half)) continue;
        mpz_class q = round_mpz(mu_[i][j]);
        if (q == 0) continue;
        row_submul(i, j, q);
        changed = true;
        // mu row i shifts by exactly q * (mu row j)
        Real qf = Real::from_mpz(q, prec_);
        for (size_t t = 0; t <= j; ++t) {
          mu_[i][t] = sub(mu_[i][t], mul(qf, mu_[j][t], prec_), prec_);
          r_[i][t] = mul(mu_[i][t], r_[t][t], prec_);
        }
      }
      if (!changed) break;
      recompute_gso_row(i);
    }
    for (size_t j = 0; j < i; ++j) {
      if (abs(mu_[i][j]) > cert) throw PrecisionRetry{};
    }
  }

  // LLL over the prefix [0, e).
  void lll_prefix(size_t e, double delta, uint64_t iter_cap) {
    Real delta_r = Real::from_double(delta, prec_);
    uint64_t iters = 0;
    size_t k = 1;
    while (k < e) {
      if (++iters > iter_cap)
        throw Error("LLL iteration cap exceeded (" + std::to_string(iter_cap) +
                    "); basis may be adversarial or precision too low");
      ensure_gso(k + 1);
      size_reduce_row(k);
      // Lovász: ||b_k*||^2 >= (delta - mu_{k,k-1}^2) ||b_{k-1}*||^2
      Real mu2 = mul(mu_[k][k - 1], mu_[k][k - 1], prec_);
      Real rhs = mul(sub(delta_r, mu2, prec_), bstar_[k - 1], prec_);
      if (bstar_[k] >= rhs) {
        ++k;
      } else {
        row_swap(k - 1, k);
        invalidate_gso(k - 1);
        k = k > 1 ? k - 1 : 1;
      }
    }
    for (size_t i = 1; i < e; ++i) size_reduce_row(i);
  }

  // Unimodular 2x2 row operation: (row_i, row_j) <- (a*row_i + b*row_j,
  //                                                  c*row_i + d*row_j).
  void row_combine2(size_t i, size_t j, const mpz_class& a, const mpz_class& b,
                    const mpz_class& c, const mpz_class& d) {
    for (size_t t = 0; t < n_; ++t) {
      mpz_class ri = rows_[i][t], rj = rows_[j][t];
      rows_[i][t] = a * ri + b * rj;
      rows_[j][t] = c * ri + d * rj;
    }
    for (size_t t = 0; t < m_; ++t) {
      mpz_class ui = u_[i][t], uj = u_[j][t];
      u_[i][t] = a * ui + b * uj;
      u_[j][t] = c * ui + d * uj;
    }
    // Gram: congruence by the same 2x2 block.
    mpz_class gii = gram_[i][i], gij = gram_[i][j], gjj = gram_[j][j];
    std::vector<mpz_class> gi = gram_[i], gj = gram_[j];
    for (size_t t = 0; t < m_; ++t) {
      if (t == i || t == j) continue;
      gram_[i][t] = a * gi[t] + b * gj[t];
      gram_[j][t] = c * gi[t] + d * gj[t];
      gram_[t][i] = gram_[i][t];
      gram_[t][j] = gram_[j][t];
    }
    gram_[i][i] = a * a * gii + 2 * a * b * gij + b * b * gjj;
    gram_[j][j] = c * c * gii + 2 * c * d * gij + d * d * gjj;
    gram_[i][j] = a * c * gii + (a * d + b * c) * gij + b * d * gjj;
    gram_[j][i] = gram_[i][j];
  }

  // Replace rows [begin, begin+d) so the first of them becomes
  // sum coeff_i * row_{begin+i}; the block stays a basis of the same
  // sublattice. Extended-gcd ladder from the bottom.
  void insert_combination(size_t begin, std::vector<mpz_class> coeff) {
    size_t d = coeff.size();
    for (size_t i = d; i-- > 1;) {
      mpz_class& a = coeff[i - 1];
      mpz_class& b = coeff[i];
      if (b == 0) continue;
      if (a == 0) {
        row_swap(begin + i - 1, begin + i);
        std::swap(a, b);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_class ag = a / g, bg = b / g;
      // [[ag, bg], [-t, s]] has determinant ag*s + bg*t = 1
      row_combine2(begin + i - 1, begin + i, ag, bg, neg_of(t), s);
      a = g;
      b = 0;
    }
    invalidate_gso(begin);
  }

  void invalidate_gso(size_t from) { gso_rows_ = std::min(gso_rows_, from); }

  const Real& bstar(size_t i) const { return bstar_[i]; }

 private:
  static mpz_class neg_of(const mpz_class& x) { return -x; }

  void row_submul(size_t i, size_t j, const mpz_class& q) {
    for (size_t t = 0; t < n_; ++t) rows_[i][t] -= q * rows_[j][t];
    for (size_t t = 0; t < m_; ++t) u_[i][t] -= q * u_[j][t];
    mpz_class gii = gram_[i][i] - 2 * q * gram_[i][j] + q * q * gram_[j][j];
    for (size_t t = 0; t < m_; ++t) {
      if (t == i) continue;
      gram_[i][t] -= q * gram_[j][t];
      gram_[t][i] = gram_[i][t];
    }
    gram_[i][i] = gii;
  }

  void row_swap(size_t i, size_t j) {
    std::swap(rows_[i], rows_[j]);
    std::swap(u_[i], u_[j]);
    std::swap(gram_[i], gram_[j]);
    for (size_t t = 0; t < m_; ++t) std::swap(gram_[t][i], gram_[t][j]);
  }

  void compute_gso_row(size_t i) {
    for (size_t j = 0; j <= i; ++j) {
      Real acc = Real::from_mpz(gram_[i][j], prec_);
      for (size_t k = 0; k < j; ++k) acc = sub(acc, mul(mu_[j][k], r_[i][k], prec_), prec_);
      r_[i][j] = acc;
      if (j < i) mu_[i][j] = div(acc, r_[j][j], prec_);
    }
    mu_[i][i] = Real::from_double(1.0, prec_);
    bstar_[i] = r_[i][i];
    Real scale = Real::from_mpz(gram_[i][i], prec_);
    Real floor_val = mul_2exp(scale, -(prec_ - 16));
    if (bstar_[i].sign() <= 0 || (scale.sign() > 0 && bstar_[i] < floor_val)) {
      throw Error("reduction: rank deficiency at row " + std::to_string(i));
    }
  }

  void recompute_gso_row(size_t i) {
    if (gso_rows_ > i) {
      size_t keep = gso_rows_;
      compute_gso_row(i);
      gso_rows_ = keep;  // later rows stay valid: b*_t (t != i) unchanged
    } else {
      compute_gso_row(i);
    }
  }

  size_t m_, n_;
  std::vector<std::vector<mpz_class>> rows_;
  std::vector<std::vector<mpz_class>> u_;
  std::vector<std::vector<mpz_class>> gram_;
  mpfr_prec_t prec_;
  std::vector<std::vector<Real>> mu_, r_;
  std::vector<Real> bstar_;
  size_t gso_rows_ = 0;

  friend GramSchmidtData reducer_gso(Reducer&);
};

uint64_t lll_iteration_cap(const LatticeBasis& b) {
  return 10ull * b.m() * b.m() * std::max<size_t>(b.max_entry_bits(), 1) + 10000;
}

mpfr_prec_t pick_precision(const LatticeBasis& b, mpfr_prec_t requested, int escalation) {
  mpfr_prec_t base = requested > 0 ? requested : default_gso_precision(b);
  return base << escalation;
}

template <typename Fn>
auto with_precision_retry(const LatticeBasis& basis, mpfr_prec_t requested, Fn&& fn) {
  for (int esc = 0;; ++esc) {
    try {
      return fn(pick_precision(basis, requested, esc));
    } catch (const PrecisionRetry&) {
      if (esc >= 1)
        throw Error("GSO precision insufficient even after escalation; "
                    "raise --gso-precision");
    }
  }
}

}  // namespace

std::pair<LatticeBasis, TransformationLog> size_reduce(const LatticeBasis& basis,
                                                       mpfr_prec_t gso_precision) {
  basis.validate();
  return with_precision_retry(basis, gso_precision, [&](mpfr_prec_t prec) {
    Reducer red(basis, prec);
    for (size_t i = 1; i < basis.m(); ++i) red.size_reduce_row(i);
    return std::make_pair(red.basis(), red.transform());
  });
}

std::pair<LatticeBasis, TransformationLog> lll(const LatticeBasis& basis,
                                               const ReductionParams& params) {
  basis.validate();
  if (!(params.delta > 0.25 && params.delta < 1.0)) throw Error("delta must lie in (1/4, 1)");
  uint64_t cap = lll_iteration_cap(basis);
  return with_precision_retry(basis, params.gso_precision, [&](mpfr_prec_t prec) {
    Reducer red(basis, prec);
    red.lll_prefix(basis.m(), params.delta, cap);
    return std::make_pair(red.basis(), red.transform());
  });
}

BkzResult bkz_progressive(const LatticeBasis& basis, const ReductionParams& params,
                          SvpOracle oracle) {
  basis.validate();
  params.validate(basis.m());
  if (!oracle) {
    oracle = [](const GramSchmidtData& gso, size_t begin, size_t end,
                const PruningProfile& profile, EnumOptions opts) {
      return svp_block(gso, begin, end, profile, opts);
    };
  }
  uint64_t cap = lll_iteration_cap(basis);
  size_t m = basis.m();

  return with_precision_retry(basis, params.gso_precision, [&](mpfr_prec_t prec) {
    Reducer red(basis, prec);
    red.lll_prefix(m, params.delta, cap);

    BkzResult result;
    mpz_class prev_b1 = red.b1_norm_sq();
    for (int beta = params.beta_start; beta <= params.beta_end; ++beta) {
      auto tick = std::chrono::steady_clock::now();
      BkzTourSummary tour;
      tour.beta = beta;
      for (size_t k = 0; k + 1 < m; ++k) {
        size_t e = std::min(k + static_cast<size_t>(beta), m);
        size_t d = e - k;
        if (d < 2) continue;
        GramSchmidtData gso = red.gso_snapshot(e);
        Real radius = sqrt(red.bstar(k), prec);
        PruningProfile profile = beta <= params.full_enum_max_beta
                                     ? PruningProfile::full(d, radius)
                                     : PruningProfile::linear_beta(d, radius);
        EnumOptions opts;
        opts.node_cap = params.svp_node_cap;
        opts.time_limit_secs = params.svp_timeout_secs;
        std::optional<BlockSvpResult> found;
        try {
          found = oracle(gso, k, e, profile, opts);
        } catch (const Error&) {
          ++tour.skipped_blocks;
          continue;
        }
        if (!found) continue;
        // insert only on a clear improvement over ||b_k*||^2
        Real threshold = mul(red.bstar(k), Real::from_double(1.0 - 0x1p-24, prec), prec);
        if (!(found->norm_sq < threshold)) continue;
        std::vector<mpz_class> coeff;
        coeff.reserve(d);
        bool trivial = true;
        for (size_t i = 0; i < d; ++i) {
          coeff.emplace_back(static_cast<long>(found->coeffs[i]));
          if (i > 0 && coeff[i] != 0) trivial = false;
        }
        if (trivial) continue;  // +-b_k itself
        red.insert_combination(k, std::move(coeff));
        red.lll_prefix(e, params.delta, cap);
        ++tour.insertions;
      }
      red.lll_prefix(m, params.delta, cap);
      tour.b1_norm_sq = red.b1_norm_sq();
      tour.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - tick).count();
      if (tour.b1_norm_sq > prev_b1)
        throw Error("BKZ invariant violated: ||b_1|| grew during tour beta=" +
                    std::to_string(beta));
      prev_b1 = tour.b1_norm_sq;
      result.tours.push_back(std::move(tour));
    }
    result.basis = red.basis();
    result.transform = red.transform();
    return result;
  });
}

}  // namespace mertens
