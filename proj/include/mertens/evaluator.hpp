#pragma once

#include "mertens/interval.hpp"
#include "mertens/zeta_data.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mertens {

struct CandidateReport {
  mpq_class y;
  std::string y_str;
  Mode mode = Mode::HP;
  IntervalValue h;
  bool hit = false;                 // whole interval certified beyond the threshold
  bool in_theorem_range = false;    // y in [e^7, e^50000]
  std::optional<Real> bound_simple;   // exponent y + sqrt(y)
  std::optional<Real> bound_refined;  // exponent y + 2 sqrt(k y)
  // Widening per |M(x +- n)| >= |M(x)| - n: the refined bound minus
  // 0.99 * alpha * exp(y/2 + sqrt(k y)), reported as its two parts.
  std::optional<Real> widened_alpha;
  std::optional<Real> widened_correction_exp;  // y/2 + sqrt(k y)
};

// Certified enclosure of 2 sum alpha exp(-k gamma^2) cos(gamma y - psi)
// over the dataset's zeros. Throws when the zero data cannot support the
// requested precision at this y (names the limiting zero).
IntervalValue eval_h(const mpq_class& y, const ZeroDataset& dataset, mpfr_prec_t precision_bits);

// q_N: undamped sum over zeros with gamma < height_cutoff.
IntervalValue eval_qN(const mpq_class& y, const ZeroDataset& dataset, double height_cutoff,
                      mpfr_prec_t precision_bits);

// Partial sum restricted to the given (top-N) zeros.
IntervalValue eval_partial(const mpq_class& y, const std::vector<WeightedZero>& zeros,
                           mpfr_prec_t precision_bits);

// Certification threshold: 1 + e^-40 for HP, 1 + 6e-8 for HSTR.
IntervalValue mode_threshold(Mode mode, mpfr_prec_t prec);

CandidateReport to_bound(const mpq_class& y, const IntervalValue& h, Mode mode);

struct CorrelationRow {
  double dist_sq = 0;
  double partial_sum = 0;
  double h_lo = 0;
  double h_hi = 0;
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
  double spearman = 0;  // rank correlation of partial vs full midpoints
};

CorrelationReport correlation_report(std::vector<CorrelationRow> rows);

}  // namespace mertens
