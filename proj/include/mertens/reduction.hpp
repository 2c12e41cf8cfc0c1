#pragma once

#include "mertens/enumeration.hpp"
#include "mertens/lattice.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace mertens {

struct ReductionParams {
  double delta = 0.99;           // Lovász factor, in (1/4, 1)
  int beta_start = 20;
  int beta_end = 83;
  int full_enum_max_beta = 30;   // blocks up to this size use f == 1
  uint64_t svp_node_cap = 0;     // 0 = unlimited
  double svp_timeout_secs = 0;   // per block; 0 = unlimited
  mpfr_prec_t gso_precision = 0; // 0 = default for the basis

  void validate(size_t m) const;
};

// U with U * original_rows = reduced_rows, |det U| = 1, all exact.
struct TransformationLog {
  std::vector<std::vector<mpz_class>> unimodular;
};

struct BkzTourSummary {
  int beta = 0;
  mpz_class b1_norm_sq;
  double seconds = 0;
  size_t insertions = 0;
  size_t skipped_blocks = 0;  // per-block cap/timeout hit
};

struct BkzResult {
  LatticeBasis basis;
  TransformationLog transform;
  std::vector<BkzTourSummary> tours;
};

using SvpOracle = std::function<std::optional<BlockSvpResult>(
    const GramSchmidtData&, size_t, size_t, const PruningProfile&, EnumOptions)>;

std::pair<LatticeBasis, TransformationLog> size_reduce(const LatticeBasis& basis,
                                                       mpfr_prec_t gso_precision = 0);

std::pair<LatticeBasis, TransformationLog> lll(const LatticeBasis& basis,
                                               const ReductionParams& params = {});

// LLL, then one tour each of BKZ-beta_start .. BKZ-beta_end. The SVP
// oracle defaults to the enumeration module's svp_block.
BkzResult bkz_progressive(const LatticeBasis& basis, const ReductionParams& params,
                          SvpOracle oracle = {});

}  // namespace mertens
