#pragma once

#include "mertens/interval.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mertens {

enum class Mode { HP, HSTR, QN };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& s);

// Gaussian damping exponent k (decimal strings; the constants are decimal
// and must not be silently binary-rounded).
std::string damping_constant(Mode m);  // "1.5e-6", "3e-9", "0"

// One nontrivial zero rho = 1/2 + i*gamma with alpha = |rho zeta'(rho)|^-1
// and psi = arg(rho zeta'(rho)). The source decimal strings are kept
// verbatim; numeric views are enclosures widened by one unit in the last
// shown place.
struct ZetaZero {
  std::string gamma_str;
  std::string alpha_str;
  std::string psi_str;
  int precision_digits = 0;
  int psi_wrap = 0;  // -1/0/+1 multiples of 2*pi applied on ingest

  // Widened by one unit in the last place: encloses the true zero's data.
  IntervalValue gamma(mpfr_prec_t prec) const;
  IntervalValue alpha(mpfr_prec_t prec) const;
  IntervalValue psi(mpfr_prec_t prec) const;
  // The decimal record itself as an exact rational (enclosure shrinks with
  // precision). Lattice construction floors these, so the built instance
  // is an exact function of the record.
  IntervalValue gamma_exact(mpfr_prec_t prec) const;
  IntervalValue alpha_exact(mpfr_prec_t prec) const;
  IntervalValue psi_exact(mpfr_prec_t prec) const;
};

struct WeightedZero {
  ZetaZero base;
  IntervalValue alpha_star;  // alpha * exp(-k gamma^2)
  Mode mode = Mode::QN;

  IntervalValue alpha_star_at(mpfr_prec_t prec) const;
  IntervalValue alpha_star_exact_at(mpfr_prec_t prec) const;  // record-exact inputs
};

struct ZeroDataset {
  Mode mode = Mode::QN;
  double height_cutoff = 0;
  std::vector<WeightedZero> zeros;  // descending alpha_star, ties by gamma

  size_t size() const { return zeros.size(); }
};

// Line-based "gamma alpha psi" decimal text; '#' starts a comment.
std::vector<ZetaZero> parse_zero_file(const std::string& path, int min_digits);
std::vector<ZetaZero> parse_zero_stream(std::istream& in, int min_digits, const std::string& name);

// Re-serialization preserves the source decimal strings bit-exactly.
void write_zero_file(const std::string& path, const std::vector<ZetaZero>& zeros,
                     const std::string& header_comment = "");

ZeroDataset weight_dataset(const std::vector<ZetaZero>& zeros, Mode mode, double height_cutoff);

std::vector<WeightedZero> take_top(const ZeroDataset& dataset, size_t n);

}  // namespace mertens
