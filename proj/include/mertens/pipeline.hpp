#pragma once

#include "mertens/evaluator.hpp"
#include "mertens/mertens_lattice.hpp"
#include "mertens/reduction.hpp"

#include <cstdint>
#include <string>

namespace mertens {

// One experiment: ingest -> build -> reduce -> enumerate -> evaluate ->
// report, all stage artifacts under out_dir so runs are resumable.
struct RunConfig {
  std::string zeros_path;
  int min_digits = 30;
  Mode mode = Mode::HP;
  SearchSign sign = SearchSign::NEGATIVE;
  int N = 0;
  long nu = 0;
  long nu_y = 0;
  long nu_t = 0;
  double radius_scale = 1.0;
  double height_cutoff = 0;  // 0 = mode default, clamped to the data
  int beta_start = 20;
  int beta_end = 0;  // 0 = min(83, rank)
  double delta = 0.99;
  std::string pruning = "linear-beta";  // "none" | "linear-beta"
  uint64_t node_cap = 0;
  double svp_timeout_secs = 0;
  long gso_precision = 0;
  long eval_precision_bits = 256;
  uint64_t eval_limit = 0;  // 0 = all
  bool dedup_b1 = true;
  int jobs = 1;
  uint64_t seed = 0;  // reserved; kept in the manifest for reproducibility
  std::string out_dir;

  void validate() const;
  std::string to_json() const;  // byte-stable (fixed key order)
  static RunConfig from_json(const std::string& text);
  static RunConfig from_json_file(const std::string& path);
};

// Artifact filenames inside a run directory.
namespace artifact {
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kBasis = "basis.txt";
inline constexpr const char* kTarget = "target.txt";
inline constexpr const char* kReduced = "reduced.txt";
inline constexpr const char* kTransform = "transform.txt";
inline constexpr const char* kReduceSummary = "reduce_summary.json";
inline constexpr const char* kCandidates = "candidates.jsonl";
inline constexpr const char* kEnumSummary = "enum_summary.json";
inline constexpr const char* kReports = "reports.jsonl";
inline constexpr const char* kCorrelation = "correlation.csv";
inline constexpr const char* kSummary = "summary.json";
}  // namespace artifact

std::string sha256_file(const std::string& path);
std::string sha256_bytes(const void* data, size_t len);

// Exact rational from a decimal string like "-123.456e-2".
mpq_class parse_decimal_rational(const std::string& s);

MertensParams params_from_config(const RunConfig& cfg);
double effective_height_cutoff(const RunConfig& cfg, const std::vector<ZetaZero>& zeros);
ZeroDataset load_dataset(const RunConfig& cfg);

void stage_build(const RunConfig& cfg);
void stage_reduce(const RunConfig& cfg);
bool stage_enumerate(const RunConfig& cfg);  // false = caps hit (incomplete)
void stage_evaluate(const RunConfig& cfg);

struct RunSummary {
  uint64_t candidates = 0;
  uint64_t hits = 0;
  bool incomplete = false;
  std::string best_y;        // candidate with the largest certified |h|
  std::string best_h;        // its interval
  std::string min_bound_simple;   // smallest y+sqrt(y) among hits
  std::string min_bound_refined;  // smallest y+2sqrt(ky) among hits
};
RunSummary stage_report(const RunConfig& cfg);

// Exit status: 0 ok, 4 incomplete (caps hit). Errors throw.
int run_pipeline(const RunConfig& cfg);

}  // namespace mertens
