#pragma once

#include "mertens/real.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mertens {

// Integer row basis: the lattice is the set of integer combinations of the
// rows. m <= n and the rows must be linearly independent.
struct LatticeBasis {
  std::vector<std::vector<mpz_class>> rows;

  size_t m() const { return rows.size(); }
  size_t n() const { return rows.empty() ? 0 : rows[0].size(); }

  static LatticeBasis identity(size_t d);
  static LatticeBasis from_rows(std::vector<std::vector<mpz_class>> r);
  static LatticeBasis from_ints(const std::vector<std::vector<long>>& r);

  void validate() const;  // shape only; independence surfaces in the GSO
  size_t max_entry_bits() const;
  mpz_class row_norm_sq(size_t i) const;
  bool operator==(const LatticeBasis& o) const { return rows == o.rows; }
};

struct GramSchmidtData {
  mpfr_prec_t precision = 0;
  std::vector<std::vector<Real>> mu;  // lower triangular, unit diagonal
  std::vector<Real> bstar_norms_sq;

  size_t m() const { return bstar_norms_sq.size(); }
};

struct BasisProfile {
  std::vector<double> log_norms;  // log2 ||b_i*||
  double log_det = 0;
  double normalized_first = 0;  // log2(||b_1|| / det^{1/m})
};

mpfr_prec_t default_gso_precision(const LatticeBasis& basis);

// Exact integer Gram matrix (inner products of rows).
std::vector<std::vector<mpz_class>> gram_matrix(const LatticeBasis& basis);

GramSchmidtData gram_schmidt(const LatticeBasis& basis, mpfr_prec_t precision_bits = 0);

// |det| of the row matrix when square, sqrt(det Gram) otherwise.
Real determinant(const LatticeBasis& basis, mpfr_prec_t precision_bits = 192);
// Exact integer determinant (Bareiss); requires m == n.
mpz_class determinant_exact(const LatticeBasis& basis);
// Exact determinant of an arbitrary integer matrix.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a);

BasisProfile profile(const LatticeBasis& basis, mpfr_prec_t precision_bits = 0);

// Plain text: first line "m n", then one row of integers per line.
void dump_basis(std::ostream& out, const LatticeBasis& basis);
void dump_basis_file(const std::string& path, const LatticeBasis& basis);
LatticeBasis load_basis(std::istream& in, const std::string& name);
LatticeBasis load_basis_file(const std::string& path);

}  // namespace mertens
