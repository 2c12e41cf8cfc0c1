#include "mertens/lattice.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mertens {

LatticeBasis LatticeBasis::identity(size_t d) {
  LatticeBasis b;
  b.rows.assign(d, std::vector<mpz_class>(d, 0));
  for (size_t i = 0; i < d; ++i) b.rows[i][i] = 1;
  return b;
}

LatticeBasis LatticeBasis::from_rows(std::vector<std::vector<mpz_class>> r) {
  LatticeBasis b;
  b.rows = std::move(r);
  b.validate();
  return b;
}

LatticeBasis LatticeBasis::from_ints(const std::vector<std::vector<long>>& r) {
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(r.size());
  for (const auto& row : r) {
    std::vector<mpz_class> z(row.begin(), row.end());
    rows.push_back(std::move(z));
  }
  return from_rows(std::move(rows));
}

void LatticeBasis::validate() const {
  if (rows.empty()) throw Error("basis must have at least one row");
  size_t cols = rows[0].size();
  if (cols == 0) throw Error("basis rows must be non-empty");
  for (const auto& r : rows)
    if (r.size() != cols) throw Error("ragged basis rows");
  if (rows.size() > cols) throw Error("basis has more rows than columns");
}

size_t LatticeBasis::max_entry_bits() const {
  size_t bits = 1;
  for (const auto& r : rows)
    for (const auto& v : r) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  return bits;
}

mpz_class LatticeBasis::row_norm_sq(size_t i) const {
  mpz_class s = 0;
  for (const auto& v : rows[i]) s += v * v;
  return s;
}

mpfr_prec_t default_gso_precision(const LatticeBasis& basis) {
  return static_cast<mpfr_prec_t>(2 * basis.max_entry_bits() + 64);
}

std::vector<std::vector<mpz_class>> gram_matrix(const LatticeBasis& basis) {
  size_t m = basis.m(), n = basis.n();
  std::vector<std::vector<mpz_class>> g(m, std::vector<mpz_class>(m, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      mpz_class s = 0;
      for (size_t k = 0; k < n; ++k) s += basis.rows[i][k] * basis.rows[j][k];
      g[i][j] = s;
      g[j][i] = g[i][j];
    }
  }
  return g;
}

GramSchmidtData gram_schmidt(const LatticeBasis& basis, mpfr_prec_t precision_bits) {
  basis.validate();
  mpfr_prec_t prec = precision_bits > 0 ? precision_bits : default_gso_precision(basis);
  auto gram = gram_matrix(basis);
  size_t m = basis.m();

  GramSchmidtData g;
  g.precision = prec;
  g.mu.assign(m, {});
  g.bstar_norms_sq.assign(m, Real(prec));

  // r[i][j] = <b_i, b_j*>; classic recurrence seeded from the exact Gram.
  std::vector<std::vector<Real>> r(m);
  for (size_t i = 0; i < m; ++i) {
    g.mu[i].assign(i + 1, Real(prec));
    r[i].assign(i + 1, Real(prec));
    for (size_t j = 0; j <= i; ++j) {
      Real acc = Real::from_mpz(gram[i][j], prec);
      for (size_t k = 0; k < j; ++k) {
        acc = sub(acc, mul(g.mu[j][k], r[i][k], prec), prec);
      }
      r[i][j] = acc;
      if (j < i) {
        g.mu[i][j] = div(acc, r[j][j], prec);
      }
    }
    g.mu[i][i] = Real::from_double(1.0, prec);
    g.bstar_norms_sq[i] = r[i][i];
    // A vanishing projected norm signals rank deficiency at this precision.
    Real scale = Real::from_mpz(gram[i][i], prec);
    Real floor_val = mul_2exp(scale, -(prec - 16));
    if (g.bstar_norms_sq[i].sign() <= 0 ||
        (scale.sign() > 0 && g.bstar_norms_sq[i] < floor_val)) {
      throw Error("gram_schmidt: rank deficiency at row " + std::to_string(i) +
                  " (||b*||^2 indistinguishable from 0 at " + std::to_string(prec) + " bits)");
    }
  }
  return g;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
  size_t n = a.size();
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

mpz_class determinant_exact(const LatticeBasis& basis) {
  basis.validate();
  if (basis.m() != basis.n()) throw Error("determinant_exact requires a square basis");
  mpz_class d = bareiss_determinant(basis.rows);
  return abs(d);
}

Real determinant(const LatticeBasis& basis, mpfr_prec_t precision_bits) {
  basis.validate();
  if (basis.m() == basis.n()) {
    mpz_class d = determinant_exact(basis);
    if (d == 0) throw Error("determinant: rank-deficient basis");
    size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2) + 1;
    return Real::from_mpz(d, std::max<mpfr_prec_t>(precision_bits, bits));
  }
  mpz_class g = bareiss_determinant(gram_matrix(basis));
  if (g <= 0) throw Error("determinant: rank-deficient basis");
  Real gr = Real::from_mpz(g, precision_bits + 64);
  return sqrt(gr, precision_bits);
}

BasisProfile profile(const LatticeBasis& basis, mpfr_prec_t precision_bits) {
  GramSchmidtData g = gram_schmidt(basis, precision_bits);
  BasisProfile p;
  size_t m = g.m();
  p.log_norms.resize(m);
  double sum = 0;
  for (size_t i = 0; i < m; ++i) {
    Real l = log2(g.bstar_norms_sq[i], 64);
    p.log_norms[i] = 0.5 * l.to_double();
    sum += p.log_norms[i];
  }
  p.log_det = sum;
  p.normalized_first = p.log_norms[0] - p.log_det / static_cast<double>(m);
  return p;
}

void dump_basis(std::ostream& out, const LatticeBasis& basis) {
  out << basis.m() << " " << basis.n() << "\n";
  for (const auto& row : basis.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << " ";
      out << row[j].get_str();
    }
    out << "\n";
  }
}

void dump_basis_file(const std::string& path, const LatticeBasis& basis) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write basis file '" + path + "'");
  dump_basis(out, basis);
}

LatticeBasis load_basis(std::istream& in, const std::string& name) {
  size_t m = 0, n = 0;
  if (!(in >> m >> n)) throw Error(name + ": missing 'm n' header");
  if (m == 0 || n == 0 || m > n) throw Error(name + ": bad dimensions " + std::to_string(m) + "x" + std::to_string(n));
  std::vector<std::vector<mpz_class>> rows(m, std::vector<mpz_class>(n));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw Error(name + ": truncated at row " + std::to_string(i));
      try {
        rows[i][j] = mpz_class(tok);
      } catch (const std::invalid_argument&) {
        throw Error(name + ": bad integer '" + tok + "'");
      }
    }
  }
  return LatticeBasis::from_rows(std::move(rows));
}

LatticeBasis load_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open basis file '" + path + "'");
  return load_basis(in, path);
}

}  // namespace mertens
