#pragma once

#include "mertens/interval.hpp"
#include "mertens/lattice.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace mertens {

// Cylinder pruning data: R_1^2 <= ... <= R_m^2 with R_i = f(i) * R and
// f(m) = 1. The stored radii are the authoritative bounds; they are dyadic
// rationals, so exact comparisons against them are well-defined.
struct PruningProfile {
  std::vector<double> f_sq;     // f^2(i), i = 1..m
  Real base_radius;             // R
  std::vector<Real> radii_sq;   // R_i^2, non-decreasing

  size_t m() const { return radii_sq.size(); }
  bool is_full() const;

  static PruningProfile full(size_t m, const Real& R);
  // f^2(i) = min(1, mean + 2*stddev) of Beta(i/2, (m-i)/2).
  static PruningProfile linear_beta(size_t m, const Real& R);
};

// f^2 values alone (unit radius), exposed for reporting.
std::vector<double> linear_beta_f_sq(size_t m);

struct EnumTarget {
  std::vector<mpq_class> ambient;  // exact ambient coordinates (n entries)
  std::vector<Real> coords;        // basis coordinates t_i (m entries)

  static EnumTarget zero(size_t m, size_t n);
  static EnumTarget from_ambient(const LatticeBasis& basis, const GramSchmidtData& gso,
                                 std::vector<mpq_class> ambient);
  bool is_zero() const;
};

struct EnumCandidate {
  std::vector<long long> coeffs;      // v_1 .. v_m
  mpq_class dist_sq_exact;            // ||sum v_i b_i - t||^2, exact
  double dist_sq = 0;
  std::vector<double> partial_norms;  // rho_1..rho_m when tracing
};

struct EnumOptions {
  bool dedup_b1 = false;
  bool record_partial_norms = false;
  uint64_t node_cap = 0;        // 0 = unlimited
  double time_limit_secs = 0;   // 0 = unlimited
};

struct EnumStats {
  uint64_t nodes = 0;
  uint64_t emitted = 0;
  uint64_t false_accepts = 0;  // float accepts removed by exact verification
  bool complete = true;        // false when a cap or deadline fired
};

// Streaming enumerator for L ∩ (t + P_f(B, R)); pull one candidate at a
// time. Candidates are exact-verified before being returned.
class BddEnumerator {
 public:
  BddEnumerator(const LatticeBasis& basis, const GramSchmidtData& gso, EnumTarget target,
                PruningProfile profile, EnumOptions options = {});
  ~BddEnumerator();
  BddEnumerator(BddEnumerator&&) noexcept;

  std::optional<EnumCandidate> next();
  const EnumStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Collects the whole stream (tests and small runs).
std::vector<EnumCandidate> enumerate_bdd(const LatticeBasis& basis, const GramSchmidtData& gso,
                                         const EnumTarget& target, const PruningProfile& profile,
                                         EnumOptions options = {}, EnumStats* stats = nullptr);

// Shortest nonzero vector within the pruning set. With a full profile this
// is an exact SVP oracle. nullopt = pruned search came up empty (not an
// error); failures to satisfy preconditions throw.
std::optional<EnumCandidate> enumerate_svp(const LatticeBasis& basis, const GramSchmidtData& gso,
                                           const PruningProfile& profile, EnumOptions options = {},
                                           EnumStats* stats = nullptr);

// SVP on the projected block [begin, end) given by the GSO data alone;
// returns block-local coefficients and the squared norm found (recomputed
// at the GSO precision). Used as the BKZ tour oracle.
struct BlockSvpResult {
  std::vector<long long> coeffs;
  Real norm_sq;
};
std::optional<BlockSvpResult> svp_block(const GramSchmidtData& gso, size_t begin, size_t end,
                                        const PruningProfile& profile, EnumOptions options = {},
                                        EnumStats* stats = nullptr);

// Gaussian-heuristic prediction of |L ∩ Ball(R)| for the unpruned ball.
double gaussian_estimate(const LatticeBasis& basis, const PruningProfile& profile);
double gaussian_estimate_log2(const LatticeBasis& basis, const PruningProfile& profile);

}  // namespace mertens
