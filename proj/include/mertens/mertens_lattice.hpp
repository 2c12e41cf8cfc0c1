#pragma once

#include "mertens/enumeration.hpp"
#include "mertens/lattice.hpp"
#include "mertens/zeta_data.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mertens {

enum class SearchSign { POSITIVE, NEGATIVE };

const char* sign_name(SearchSign s);
SearchSign sign_from_name(const std::string& s);

struct MertensParams {
  int N = 0;           // number of zeros
  long nu = 0;         // modulus exponent
  long nu_y = 0;       // gamma-row exponent
  long nu_t = 0;       // trailing-entry exponent
  double radius_scale = 1.0;
  Mode mode = Mode::HP;
  SearchSign sign = SearchSign::POSITIVE;

  void validate() const;
};

// The (N+1)x(N+1) search lattice: first row carries the weighted gamma
// approximations and 2^nu_t, the remaining rows are the moduli diagonal.
struct MertensInstance {
  LatticeBasis basis;                // original row order
  std::vector<mpz_class> target;     // ambient integer target (t or t')
  std::vector<WeightedZero> zeros;   // top-N, descending alpha_star
  MertensParams params;
  Real K;                            // enumeration radius
  mpz_class det;                     // 2^nu_t * prod(moduli), exact
  std::vector<mpz_class> gamma_row;  // floor(sqrt(a*_i) gamma_i 2^nu_y)
  std::vector<mpz_class> moduli;     // floor(sqrt(a*_i) 2 pi 2^nu)
  std::vector<mpz_class> target_entries;  // floor(sqrt(a*_i) psi_i 2^nu) (+pi when negative)

  EnumTarget enum_target(const LatticeBasis& reduced_basis, const GramSchmidtData& gso) const;
};

struct CandidateY {
  mpz_class x;          // coefficient of the gamma row
  mpq_class y;          // x * 2^(nu_y - nu), exact dyadic
  std::string y_str;    // exact decimal expansion
  mpz_class residual_sq;  // sum of squared balanced residues (gamma part)
  mpq_class dist_sq;      // candidate distance (gamma part + (x 2^nu_t)^2)
};

struct PredictedRanges {
  double c_log2 = 0;        // log2((2 pi e)^-1/2 * prod(2 pi sqrt(a*_i))^(1/(N+1)))
  double entry_lo_log2 = 0;  // sqrt(a*_i)|gamma_i y - psi_i| range
  double entry_hi_log2 = 0;
  double y_lo_log2 = 0;
  double y_hi_log2 = 0;
};

MertensInstance build_instance(const std::vector<WeightedZero>& zeros, const MertensParams& params);

// K = radius_scale * sqrt((N+1)/(2 pi e)) * det^(1/(N+1))
Real radius(const MertensInstance& instance);

// basis_used: the basis the candidate's coefficients refer to (typically
// the reduced basis fed to enumeration).
CandidateY recover_y(const EnumCandidate& candidate, const MertensInstance& instance,
                     const LatticeBasis& basis_used);

PredictedRanges predict_ranges(const MertensParams& params, const std::vector<WeightedZero>& zeros);

// Balanced representative of a mod p in (-p/2, p/2].
mpz_class balanced_mod(const mpz_class& a, const mpz_class& p);

// Exact decimal expansion of a dyadic rational.
std::string dyadic_decimal(const mpq_class& q);

}  // namespace mertens
