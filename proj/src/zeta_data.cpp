#include "mertens/zeta_data.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mertens {

namespace {

constexpr mpfr_prec_t kParsePrec = 320;

int significant_digits(const std::string& s) {
  int digits = 0;
  bool seen_nonzero = false;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (c != '0') seen_nonzero = true;
    if (seen_nonzero) ++digits;
  }
  return digits;
}

}  // namespace

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::HP: return "hp";
    case Mode::HSTR: return "hstr";
    case Mode::QN: return "qn";
  }
  return "?";
}

Mode mode_from_name(const std::string& s) {
  if (s == "hp") return Mode::HP;
  if (s == "hstr") return Mode::HSTR;
  if (s == "qn") return Mode::QN;
  throw Error("unknown mode '" + s + "' (expected hp, hstr or qn)");
}

std::string damping_constant(Mode m) {
  switch (m) {
    case Mode::HP: return "1.5e-6";
    case Mode::HSTR: return "3e-9";
    case Mode::QN: return "0";
  }
  return "0";
}

IntervalValue ZetaZero::gamma(mpfr_prec_t prec) const {
  return IntervalValue::from_decimal(gamma_str, prec, 1.0);
}

IntervalValue ZetaZero::alpha(mpfr_prec_t prec) const {
  return IntervalValue::from_decimal(alpha_str, prec, 1.0);
}

IntervalValue ZetaZero::psi(mpfr_prec_t prec) const {
  IntervalValue v = IntervalValue::from_decimal(psi_str, prec, 1.0);
  if (psi_wrap != 0) {
    IntervalValue two_pi = imul_2exp(IntervalValue::pi(prec), 1);
    v = psi_wrap > 0 ? iadd(v, two_pi, prec) : isub(v, two_pi, prec);
  }
  return v;
}

IntervalValue ZetaZero::gamma_exact(mpfr_prec_t prec) const {
  return IntervalValue::from_decimal(gamma_str, prec);
}

IntervalValue ZetaZero::alpha_exact(mpfr_prec_t prec) const {
  return IntervalValue::from_decimal(alpha_str, prec);
}

IntervalValue ZetaZero::psi_exact(mpfr_prec_t prec) const {
  IntervalValue v = IntervalValue::from_decimal(psi_str, prec);
  if (psi_wrap != 0) {
    IntervalValue two_pi = imul_2exp(IntervalValue::pi(prec), 1);
    v = psi_wrap > 0 ? iadd(v, two_pi, prec) : isub(v, two_pi, prec);
  }
  return v;
}

namespace {

IntervalValue damped_alpha(const IntervalValue& a, const IntervalValue& g, Mode mode,
                           mpfr_prec_t prec) {
  std::string k = damping_constant(mode);
  if (k == "0") return a;
  IntervalValue kd = IntervalValue::from_decimal(k, prec);
  IntervalValue g2 = isquare(g, prec);
  IntervalValue damp = iexp(ineg(imul(kd, g2, prec)), prec);
  return imul(a, damp, prec);
}

}  // namespace

IntervalValue WeightedZero::alpha_star_at(mpfr_prec_t prec) const {
  return damped_alpha(base.alpha(prec), base.gamma(prec), mode, prec);
}

IntervalValue WeightedZero::alpha_star_exact_at(mpfr_prec_t prec) const {
  return damped_alpha(base.alpha_exact(prec), base.gamma_exact(prec), mode, prec);
}

std::vector<ZetaZero> parse_zero_file(const std::string& path, int min_digits) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open zero file '" + path + "'");
  return parse_zero_stream(in, min_digits, path);
}

std::vector<ZetaZero> parse_zero_stream(std::istream& in, int min_digits, const std::string& name) {
  std::vector<ZetaZero> out;
  std::string line;
  size_t lineno = 0;
  Real prev_gamma(kParsePrec);
  const mpfr_prec_t prec = kParsePrec;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;

    std::istringstream ls(line);
    ZetaZero z;
    if (!(ls >> z.gamma_str >> z.alpha_str >> z.psi_str)) {
      throw Error(name + ":" + std::to_string(lineno) + ": malformed line (need 'gamma alpha psi')");
    }
    std::string extra;
    if (ls >> extra) {
      throw Error(name + ":" + std::to_string(lineno) + ": trailing token '" + extra + "'");
    }

    z.precision_digits =
        std::min({significant_digits(z.gamma_str), significant_digits(z.alpha_str),
                  significant_digits(z.psi_str)});

    IntervalValue g(prec), a(prec), p(prec);
    try {
      g = z.gamma(prec);
      a = z.alpha(prec);
      p = z.psi(prec);
    } catch (const Error& e) {
      throw Error(name + ":" + std::to_string(lineno) + ": " + e.what());
    }

    if (z.precision_digits < min_digits) {
      throw Error(name + ":" + std::to_string(lineno) + ": only " +
                  std::to_string(z.precision_digits) + " significant digits, need >= " +
                  std::to_string(min_digits));
    }
    if (!(g.lo.sign() > 0)) {
      throw Error(name + ":" + std::to_string(lineno) + ": gamma must be positive");
    }
    if (!out.empty() && !(g.lo > prev_gamma)) {
      throw Error(name + ":" + std::to_string(lineno) + ": gamma non-increasing (dataset corrupt)");
    }
    prev_gamma = g.hi;

    if (!(a.lo.sign() > 0)) {
      throw Error(name + ":" + std::to_string(lineno) + ": alpha must be positive");
    }

    // psi must land in (-pi, pi]; values within tolerance of the boundary
    // are wrapped by 2*pi, anything farther out is rejected.
    IntervalValue pi_i = IntervalValue::pi(prec);
    Real tol(prec);
    mpfr_set_ui(tol.raw(), 10, MPFR_RNDU);
    mpfr_pow_si(tol.raw(), tol.raw(), -(z.precision_digits - 2), MPFR_RNDU);
    Real pi_plus_tol = add(pi_i.hi, tol, prec, MPFR_RNDU);
    Real neg_pi_minus_tol = neg(pi_plus_tol);
    if (p.hi > pi_plus_tol || p.lo < neg_pi_minus_tol) {
      throw Error(name + ":" + std::to_string(lineno) + ": psi outside (-pi, pi]");
    }
    Real mid = p.mid();
    if (mid > pi_i.hi) {
      z.psi_wrap = -1;  // just above pi: fold down
    } else if (!(mid > neg(pi_i.lo))) {
      z.psi_wrap = 1;  // at or below -pi: fold up
    }

    out.push_back(std::move(z));
  }
  return out;
}

void write_zero_file(const std::string& path, const std::vector<ZetaZero>& zeros,
                     const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write zero file '" + path + "'");
  if (!header_comment.empty()) {
    std::istringstream hc(header_comment);
    std::string hline;
    while (std::getline(hc, hline)) out << "# " << hline << "\n";
  }
  for (const ZetaZero& z : zeros) {
    out << z.gamma_str << " " << z.alpha_str << " " << z.psi_str << "\n";
  }
}

ZeroDataset weight_dataset(const std::vector<ZetaZero>& zeros, Mode mode, double height_cutoff) {
  const mpfr_prec_t prec = kParsePrec;
  if (!zeros.empty()) {
    Real max_gamma = zeros.back().gamma(prec).hi;
    Real limit = add(max_gamma, Real::from_double(1.0, prec), prec, MPFR_RNDU);
    if (Real::from_double(height_cutoff, prec) > limit) {
      throw Error("height cutoff " + std::to_string(height_cutoff) +
                  " exceeds ingested range (max gamma " + max_gamma.str(8) + ")");
    }
  }

  ZeroDataset ds;
  ds.mode = mode;
  ds.height_cutoff = height_cutoff;
  Real cutoff = Real::from_double(height_cutoff, prec);
  for (const ZetaZero& z : zeros) {
    if (!(z.gamma(prec).hi < cutoff)) continue;
    WeightedZero w;
    w.base = z;
    w.mode = mode;
    w.alpha_star = w.alpha_star_at(prec);
    ds.zeros.push_back(std::move(w));
  }
  if (ds.zeros.empty()) throw Error("no zeros below height cutoff");

  std::stable_sort(ds.zeros.begin(), ds.zeros.end(), [](const WeightedZero& a, const WeightedZero& b) {
    Real am = a.alpha_star.mid(), bm = b.alpha_star.mid();
    if (am > bm) return true;
    if (am < bm) return false;
    return a.base.gamma(64).mid() < b.base.gamma(64).mid();
  });
  return ds;
}

std::vector<WeightedZero> take_top(const ZeroDataset& dataset, size_t n) {
  if (n < 1 || n > dataset.zeros.size()) {
    throw Error("take_top: N=" + std::to_string(n) + " out of range (dataset has " +
                std::to_string(dataset.zeros.size()) + " zeros)");
  }
  return std::vector<WeightedZero>(dataset.zeros.begin(), dataset.zeros.begin() + n);
}

}  // namespace mertens
