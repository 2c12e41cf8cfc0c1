#include "mertens/pipeline.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace mertens {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// sha256 (FIPS 180-4), enough for dataset fingerprints in manifests

namespace {

struct Sha256 {
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  uint8_t buf[64];
  size_t buflen = 0;
  uint64_t total = 0;

  static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block(const uint8_t* p) {
    static const uint32_t K[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
             (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      uint32_t ch = (e & f) ^ (~e & g);
      uint32_t t1 = hh + S1 + ch + K[i] + w[i];
      uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      uint32_t t2 = S0 + maj;
      hh = g; g = f; f = e; e = d + t1; d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }

  void update(const void* data, size_t len) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    total += len;
    while (len > 0) {
      size_t take = std::min(len, sizeof(buf) - buflen);
      std::memcpy(buf + buflen, p, take);
      buflen += take;
      p += take;
      len -= take;
      if (buflen == 64) {
        block(buf);
        buflen = 0;
      }
    }
  }

  std::string hex() {
    uint64_t bits = total * 8;
    uint8_t pad = 0x80;
    update(&pad, 1);
    uint8_t zero = 0;
    while (buflen != 56) update(&zero, 1);
    uint8_t lenb[8];
    for (int i = 0; i < 8; ++i) lenb[i] = static_cast<uint8_t>(bits >> (56 - 8 * i));
    update(lenb, 8);
    static const char* hexd = "0123456789abcdef";
    std::string out;
    for (uint32_t v : h)
      for (int i = 28; i >= 0; i -= 4) out += hexd[(v >> i) & 0xf];
    return out;
  }
};

std::string path_in(const RunConfig& cfg, const char* name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class rational_from_str(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

std::string sha256_bytes(const void* data, size_t len) {
  Sha256 s;
  s.update(data, len);
  return s.hex();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for hashing");
  Sha256 s;
  char chunk[65536];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) s.update(chunk, static_cast<size_t>(in.gcount()));
  return s.hex();
}

mpq_class parse_decimal_rational(const std::string& s) {
  if (s.empty()) throw Error("empty decimal string");
  size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac = 0, exp10 = 0;
  bool seen_dot = false, any = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw Error("bad decimal '" + s + "'");
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      exp10 = std::stol(s.substr(pos + 1));
      break;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_dot) ++frac;
      any = true;
    } else {
      throw Error("bad decimal '" + s + "'");
    }
  }
  if (!any) throw Error("bad decimal '" + s + "'");
  mpq_class q(mpz_class(digits.empty() ? "0" : digits, 10));
  long net = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net >= 0 ? net : -net));
  if (net >= 0)
    q *= p10;
  else
    q /= p10;
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

// ---------------------------------------------------------------------------
// config

void RunConfig::validate() const {
  if (zeros_path.empty()) throw Error("config: zeros path required");
  if (out_dir.empty()) throw Error("config: output directory required");
  if (N < 1) throw Error("config: N >= 1 required");
  if (pruning != "none" && pruning != "linear-beta")
    throw Error("config: pruning must be 'none' or 'linear-beta'");
  if (jobs < 1) throw Error("config: jobs >= 1 required");
  if (eval_precision_bits < 64) throw Error("config: eval precision >= 64 bits required");
  params_from_config(*this).validate();
}

std::string RunConfig::to_json() const {
  json j;
  j["zeros"] = zeros_path;
  j["min_digits"] = min_digits;
  j["mode"] = mode_name(mode);
  j["sign"] = sign_name(sign);
  j["n"] = N;
  j["nu"] = nu;
  j["nu_y"] = nu_y;
  j["nu_t"] = nu_t;
  j["radius_scale"] = radius_scale;
  j["height_cutoff"] = height_cutoff;
  j["beta_start"] = beta_start;
  j["beta_end"] = beta_end;
  j["delta"] = delta;
  j["pruning"] = pruning;
  j["node_cap"] = node_cap;
  j["svp_timeout_secs"] = svp_timeout_secs;
  j["gso_precision"] = gso_precision;
  j["eval_precision_bits"] = eval_precision_bits;
  j["eval_limit"] = eval_limit;
  j["dedup_b1"] = dedup_b1;
  j["jobs"] = jobs;
  j["seed"] = seed;
  j["out"] = out_dir;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  RunConfig c;
  c.zeros_path = j.value("zeros", "");
  c.min_digits = j.value("min_digits", c.min_digits);
  c.mode = mode_from_name(j.value("mode", "hp"));
  c.sign = sign_from_name(j.value("sign", "neg"));
  c.N = j.value("n", 0);
  c.nu = j.value("nu", 0L);
  c.nu_y = j.value("nu_y", 0L);
  c.nu_t = j.value("nu_t", 0L);
  c.radius_scale = j.value("radius_scale", 1.0);
  c.height_cutoff = j.value("height_cutoff", 0.0);
  c.beta_start = j.value("beta_start", 20);
  c.beta_end = j.value("beta_end", 0);
  c.delta = j.value("delta", 0.99);
  c.pruning = j.value("pruning", "linear-beta");
  c.node_cap = j.value("node_cap", uint64_t{0});
  c.svp_timeout_secs = j.value("svp_timeout_secs", 0.0);
  c.gso_precision = j.value("gso_precision", 0L);
  c.eval_precision_bits = j.value("eval_precision_bits", 256L);
  c.eval_limit = j.value("eval_limit", uint64_t{0});
  c.dedup_b1 = j.value("dedup_b1", true);
  c.jobs = j.value("jobs", 1);
  c.seed = j.value("seed", uint64_t{0});
  c.out_dir = j.value("out", "");
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  return from_json(read_text(path));
}

MertensParams params_from_config(const RunConfig& cfg) {
  MertensParams p;
  p.N = cfg.N;
  p.nu = cfg.nu;
  p.nu_y = cfg.nu_y;
  p.nu_t = cfg.nu_t;
  p.radius_scale = cfg.radius_scale;
  p.mode = cfg.mode;
  p.sign = cfg.sign;
  return p;
}

double effective_height_cutoff(const RunConfig& cfg, const std::vector<ZetaZero>& zeros) {
  double cutoff = cfg.height_cutoff;
  if (cutoff <= 0) {
    switch (cfg.mode) {
      case Mode::HP: cutoff = 14000; break;
      case Mode::HSTR: cutoff = 74000; break;
      case Mode::QN: cutoff = 0; break;
    }
  }
  double max_gamma = zeros.empty() ? 0 : zeros.back().gamma(64).hi.to_double();
  if (cutoff <= 0 || cutoff > max_gamma + 1) cutoff = max_gamma + 0.5;
  return cutoff;
}

ZeroDataset load_dataset(const RunConfig& cfg) {
  auto zeros = parse_zero_file(cfg.zeros_path, cfg.min_digits);
  return weight_dataset(zeros, cfg.mode, effective_height_cutoff(cfg, zeros));
}

// ---------------------------------------------------------------------------
// stages

namespace {

MertensInstance build_from_config(const RunConfig& cfg, ZeroDataset* dataset_out = nullptr) {
  ZeroDataset ds = load_dataset(cfg);
  auto top = take_top(ds, static_cast<size_t>(cfg.N));
  MertensInstance inst = build_instance(top, params_from_config(cfg));
  if (dataset_out) *dataset_out = std::move(ds);
  return inst;
}

double gaussian_log2_from_det(const MertensInstance& inst) {
  size_t m = inst.basis.m();
  const mpfr_prec_t prec = 128;
  Real half_m = Real::from_double(static_cast<double>(m) / 2.0 + 1.0, prec);
  Real lg(prec);
  mpfr_lngamma(lg.raw(), half_m.raw(), MPFR_RNDN);
  Real ln2(prec);
  mpfr_const_log2(ln2.raw(), MPFR_RNDN);
  double log2_gamma = div(lg, ln2, prec).to_double();
  double log2_pi = log2(pi(prec), 64).to_double();
  double log2_R = log2(inst.K, 64).to_double();
  double log2_det = log2(Real::from_mpz(inst.det, mpz_sizeinbase(inst.det.get_mpz_t(), 2) + 8), 64)
                        .to_double();
  return 0.5 * static_cast<double>(m) * log2_pi + static_cast<double>(m) * log2_R - log2_gamma -
         log2_det;
}

int effective_beta_end(const RunConfig& cfg, size_t m) {
  int be = cfg.beta_end > 0 ? cfg.beta_end : std::min(83, static_cast<int>(m));
  return std::min<int>(be, static_cast<int>(m));
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

void stage_build(const RunConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  ZeroDataset ds;
  MertensInstance inst = build_from_config(cfg, &ds);

  dump_basis_file(path_in(cfg, artifact::kBasis), inst.basis);
  {
    std::ofstream out(path_in(cfg, artifact::kTarget));
    for (const auto& t : inst.target) out << t.get_str() << "\n";
  }

  PredictedRanges pr = predict_ranges(inst.params, inst.zeros);
  json j;
  j["created"] = iso_now();
  j["config"] = json::parse(cfg.to_json());
  j["zeros_sha256"] = sha256_file(cfg.zeros_path);
  j["height_cutoff_effective"] = ds.height_cutoff;
  j["dataset_size"] = ds.zeros.size();
  j["dim"] = cfg.N + 1;
  j["det"] = inst.det.get_str();
  j["K"] = inst.K.str(40);
  j["gaussian_estimate_log2"] = gaussian_log2_from_det(inst);
  j["predict"] = {{"c_log2", pr.c_log2},
                  {"entry_lo_log2", pr.entry_lo_log2},
                  {"entry_hi_log2", pr.entry_hi_log2},
                  {"y_lo_log2", pr.y_lo_log2},
                  {"y_hi_log2", pr.y_hi_log2}};
  write_text(path_in(cfg, artifact::kManifest), j.dump(2) + "\n");
}

void stage_reduce(const RunConfig& cfg) {
  cfg.validate();
  LatticeBasis basis = load_basis_file(path_in(cfg, artifact::kBasis));

  ReductionParams rp;
  rp.delta = cfg.delta;
  rp.beta_start = cfg.beta_start;
  rp.beta_end = effective_beta_end(cfg, basis.m());
  rp.svp_node_cap = cfg.node_cap;
  rp.svp_timeout_secs = cfg.svp_timeout_secs;
  rp.gso_precision = cfg.gso_precision;

  BkzResult res = bkz_progressive(basis, rp);

  dump_basis_file(path_in(cfg, artifact::kReduced), res.basis);
  {
    LatticeBasis u = LatticeBasis::from_rows(res.transform.unimodular);
    dump_basis_file(path_in(cfg, artifact::kTransform), u);
  }
  json j;
  j["beta_start"] = rp.beta_start;
  j["beta_end"] = rp.beta_end;
  j["delta"] = rp.delta;
  json tours = json::array();
  for (const auto& t : res.tours) {
    tours.push_back({{"beta", t.beta},
                     {"log2_b1", 0.5 * std::log2(std::max(t.b1_norm_sq.get_d(), 1.0))},
                     {"seconds", t.seconds},
                     {"insertions", t.insertions},
                     {"skipped_blocks", t.skipped_blocks}});
  }
  j["tours"] = tours;
  BasisProfile prof = profile(res.basis, cfg.gso_precision);
  j["profile_log2_norms"] = prof.log_norms;
  j["normalized_first"] = prof.normalized_first;
  write_text(path_in(cfg, artifact::kReduceSummary), j.dump(2) + "\n");
}

bool stage_enumerate(const RunConfig& cfg) {
  cfg.validate();
  MertensInstance inst = build_from_config(cfg);
  LatticeBasis original = load_basis_file(path_in(cfg, artifact::kBasis));
  if (!(original == inst.basis))
    throw Error("stage artifacts out of date: basis.txt does not match the configuration");
  LatticeBasis reduced = load_basis_file(path_in(cfg, artifact::kReduced));
  if (reduced.m() != inst.basis.m())
    throw Error("reduced basis rank mismatch");

  GramSchmidtData gso = gram_schmidt(reduced, cfg.gso_precision);
  EnumTarget target = inst.enum_target(reduced, gso);
  size_t m = reduced.m();
  PruningProfile profile = cfg.pruning == "none" ? PruningProfile::full(m, inst.K)
                                                 : PruningProfile::linear_beta(m, inst.K);
  EnumOptions opts;
  opts.dedup_b1 = cfg.dedup_b1;
  opts.node_cap = cfg.node_cap;
  opts.time_limit_secs = 0;

  std::ofstream out(path_in(cfg, artifact::kCandidates));
  if (!out) throw Error("cannot write candidates");
  BddEnumerator en(reduced, gso, target, profile, opts);
  uint64_t count = 0;
  while (auto cand = en.next()) {
    CandidateY cy = recover_y(*cand, inst, reduced);
    json line;
    line["coeffs"] = cand->coeffs;
    line["x"] = cy.x.get_str();
    line["y"] = cy.y_str;
    line["dist_sq"] = rational_str(cand->dist_sq_exact);
    line["residual_sq"] = cy.residual_sq.get_str();
    out << line.dump() << "\n";
    ++count;
  }
  const EnumStats& st = en.stats();
  json j;
  j["nodes"] = st.nodes;
  j["candidates"] = count;
  j["complete"] = st.complete;
  j["false_accepts"] = st.false_accepts;
  j["dedup_b1"] = cfg.dedup_b1;
  j["pruning"] = cfg.pruning;
  write_text(path_in(cfg, artifact::kEnumSummary), j.dump(2) + "\n");
  return st.complete;
}

void stage_evaluate(const RunConfig& cfg) {
  cfg.validate();
  ZeroDataset ds = load_dataset(cfg);
  auto top = take_top(ds, static_cast<size_t>(cfg.N));

  struct Item {
    mpq_class y;
    double dist_sq;
    json line;
  };
  std::vector<Item> items;
  {
    std::ifstream in(path_in(cfg, artifact::kCandidates));
    if (!in) throw Error("no candidates.jsonl; run the enumerate stage first");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json c = json::parse(line);
      Item it;
      it.y = parse_decimal_rational(c["y"].get<std::string>());
      it.dist_sq = rational_from_str(c["dist_sq"].get<std::string>()).get_d();
      items.push_back(std::move(it));
      if (cfg.eval_limit && items.size() >= cfg.eval_limit) break;
    }
  }

  struct Row {
    bool evaluated = false;  // y <= 0 candidates are reported but not evaluated
    CandidateReport report;
    IntervalValue partial;
    double dist_sq;
  };
  std::vector<Row> rows(items.size());
  auto worker = [&](size_t begin, size_t endi) {
    for (size_t i = begin; i < endi; ++i) {
      rows[i].dist_sq = items[i].dist_sq;
      rows[i].report.y = items[i].y;
      rows[i].report.y_str = dyadic_decimal(items[i].y);
      rows[i].report.mode = cfg.mode;
      if (items[i].y <= 0) continue;
      IntervalValue h = cfg.mode == Mode::QN
                            ? eval_qN(items[i].y, ds, ds.height_cutoff, cfg.eval_precision_bits)
                            : eval_h(items[i].y, ds, cfg.eval_precision_bits);
      rows[i].report = to_bound(items[i].y, h, cfg.mode);
      rows[i].partial = eval_partial(items[i].y, top, cfg.eval_precision_bits);
      rows[i].evaluated = true;
    }
  };
  if (cfg.jobs <= 1 || items.size() < 2) {
    worker(0, items.size());
  } else {
    size_t nthreads = std::min<size_t>(cfg.jobs, items.size());
    std::vector<std::thread> threads;
    size_t chunk = (items.size() + nthreads - 1) / nthreads;
    for (size_t t = 0; t < nthreads; ++t) {
      size_t b = t * chunk, e = std::min(items.size(), b + chunk);
      if (b >= e) break;
      threads.emplace_back(worker, b, e);
    }
    for (auto& th : threads) th.join();
  }

  std::ofstream out(path_in(cfg, artifact::kReports));
  for (const auto& r : rows) {
    const CandidateReport& rep = r.report;
    json line;
    line["y"] = rep.y_str;
    line["mode"] = mode_name(rep.mode);
    if (!r.evaluated) {
      line["skipped"] = "y outside (0, inf)";
      out << line.dump() << "\n";
      continue;
    }
    line["h_lo"] = rep.h.lo.str(30);
    line["h_hi"] = rep.h.hi.str(30);
    line["hit"] = rep.hit;
    line["in_theorem_range"] = rep.in_theorem_range;
    if (rep.bound_simple) line["bound_simple"] = rep.bound_simple->str(25);
    if (rep.bound_refined) line["bound_refined"] = rep.bound_refined->str(25);
    if (rep.widened_alpha) {
      line["widened_alpha"] = rep.widened_alpha->str(12);
      line["widened_correction_exp"] = rep.widened_correction_exp->str(25);
    }
    out << line.dump() << "\n";
  }

  std::ofstream csv(path_in(cfg, artifact::kCorrelation));
  csv << "dist_sq,partial_sum,h_lo,h_hi\n";
  for (const auto& r : rows) {
    if (!r.evaluated) continue;
    csv << r.dist_sq << "," << r.partial.mid().to_double() << "," << r.report.h.lo.to_double()
        << "," << r.report.h.hi.to_double() << "\n";
  }
}

RunSummary stage_report(const RunConfig& cfg) {
  cfg.validate();
  RunSummary sum;
  {
    std::ifstream es(path_in(cfg, artifact::kEnumSummary));
    if (es) {
      json j = json::parse(es);
      sum.incomplete = !j.value("complete", true);
    }
  }
  std::ifstream in(path_in(cfg, artifact::kReports));
  if (!in) throw Error("no reports.jsonl; run the evaluate stage first");
  std::string line;
  double best_abs = -1;
  std::string best_simple, best_refined;
  double best_simple_val = 0, best_refined_val = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json r = json::parse(line);
    ++sum.candidates;
    if (r.contains("skipped")) continue;
    double lo = std::stod(r["h_lo"].get<std::string>());
    double hi = std::stod(r["h_hi"].get<std::string>());
    double abs_lo = (lo <= 0 && hi >= 0) ? 0 : std::min(std::abs(lo), std::abs(hi));
    if (abs_lo > best_abs) {
      best_abs = abs_lo;
      sum.best_y = r["y"].get<std::string>();
      sum.best_h = "[" + r["h_lo"].get<std::string>() + ", " + r["h_hi"].get<std::string>() + "]";
    }
    if (r.value("hit", false)) {
      ++sum.hits;
      if (r.contains("bound_simple")) {
        double b = std::stod(r["bound_simple"].get<std::string>());
        if (best_simple.empty() || b < best_simple_val) {
          best_simple_val = b;
          best_simple = r["bound_simple"].get<std::string>();
        }
      }
      if (r.contains("bound_refined")) {
        double b = std::stod(r["bound_refined"].get<std::string>());
        if (best_refined.empty() || b < best_refined_val) {
          best_refined_val = b;
          best_refined = r["bound_refined"].get<std::string>();
        }
      }
    }
  }
  sum.min_bound_simple = best_simple;
  sum.min_bound_refined = best_refined;

  json j;
  j["candidates"] = sum.candidates;
  j["hits"] = sum.hits;
  j["incomplete"] = sum.incomplete;
  j["best_y"] = sum.best_y;
  j["best_h"] = sum.best_h;
  j["min_bound_simple"] = sum.min_bound_simple;
  j["min_bound_refined"] = sum.min_bound_refined;
  write_text(path_in(cfg, artifact::kSummary), j.dump(2) + "\n");
  return sum;
}

int run_pipeline(const RunConfig& cfg) {
  stage_build(cfg);
  stage_reduce(cfg);
  bool complete = stage_enumerate(cfg);
  stage_evaluate(cfg);
  stage_report(cfg);
  return complete ? 0 : 4;
}

}  // namespace mertens
