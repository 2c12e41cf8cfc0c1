#include "mertens/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace mertens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;
constexpr int kExitIncomplete = 4;

// Flags win over the config file: the file is loaded first as defaults,
// then CLI11 overwrites whatever was passed explicitly.
std::string scan_config_path(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  return "";
}

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& mode, std::string& sign,
                long& precision_digits) {
  cmd->add_option("--config", "config file (JSON, mirrors the flags)");
  cmd->add_option("--zeros", cfg.zeros_path, "zero-data file (gamma alpha psi per line)");
  cmd->add_option("--min-digits", cfg.min_digits, "minimum significant digits per record");
  cmd->add_option("--mode", mode, "hp | hstr | qn");
  cmd->add_option("--sign", sign, "pos | neg (target t or t')");
  cmd->add_option("--n", cfg.N, "number of zeros in the lattice");
  cmd->add_option("--nu", cfg.nu, "modulus exponent");
  cmd->add_option("--nu-y", cfg.nu_y, "gamma-row exponent");
  cmd->add_option("--nu-t", cfg.nu_t, "trailing-entry exponent");
  cmd->add_option("--radius-scale", cfg.radius_scale, "enumeration radius scale (>= 1)");
  cmd->add_option("--height-cutoff", cfg.height_cutoff, "zero height cutoff (0 = mode default)");
  cmd->add_option("--beta-start", cfg.beta_start, "first BKZ block size");
  cmd->add_option("--beta-end", cfg.beta_end, "last BKZ block size (0 = min(83, rank))");
  cmd->add_option("--delta", cfg.delta, "LLL Lovász factor");
  cmd->add_option("--pruning", cfg.pruning, "none | linear-beta");
  cmd->add_option("--node-cap", cfg.node_cap, "enumeration node cap (0 = unlimited)");
  cmd->add_option("--svp-timeout-secs", cfg.svp_timeout_secs, "per-block SVP timeout");
  cmd->add_option("--gso-precision", cfg.gso_precision, "GSO float precision in bits (0 = auto)");
  cmd->add_option("--precision-bits", cfg.eval_precision_bits, "evaluation precision in bits");
  cmd->add_option("--precision-digits", precision_digits,
                  "evaluation precision in decimal digits (overrides --precision-bits)");
  cmd->add_option("--eval-limit", cfg.eval_limit, "evaluate at most this many candidates");
  cmd->add_option("--dedup-b1", cfg.dedup_b1, "coset-deduplicate along b_1");
  cmd->add_option("--jobs", cfg.jobs, "worker threads for evaluation");
  cmd->add_option("--seed", cfg.seed, "recorded in the manifest");
  cmd->add_option("--out", cfg.out_dir, "run directory");
}

int do_ingest(const RunConfig& cfg, const std::string& out_file) {
  auto zeros = parse_zero_file(cfg.zeros_path, cfg.min_digits);
  double cutoff = effective_height_cutoff(cfg, zeros);
  ZeroDataset ds = weight_dataset(zeros, cfg.mode, cutoff);
  std::vector<ZetaZero> kept;
  kept.reserve(ds.zeros.size());
  for (const auto& w : ds.zeros) kept.push_back(w.base);
  std::sort(kept.begin(), kept.end(), [](const ZetaZero& a, const ZetaZero& b) {
    return Real::from_string(a.gamma_str, 128) < Real::from_string(b.gamma_str, 128);
  });
  write_zero_file(out_file, kept,
                  "zeta zero data: gamma alpha psi\nmode " + std::string(mode_name(cfg.mode)) +
                      ", height cutoff " + std::to_string(cutoff));
  std::cout << "ingested " << kept.size() << " zeros below height " << cutoff << " -> "
            << out_file << "\n";
  return kExitOk;
}

int do_report_direct(const RunConfig& cfg, const std::vector<std::string>& ys) {
  ZeroDataset ds = load_dataset(cfg);
  std::cout << "dataset: " << ds.zeros.size() << " zeros below height " << ds.height_cutoff
            << " (" << mode_name(cfg.mode) << " weights)\n";
  for (const auto& ystr : ys) {
    mpq_class y = parse_decimal_rational(ystr);
    IntervalValue h = cfg.mode == Mode::QN
                          ? eval_qN(y, ds, ds.height_cutoff, cfg.eval_precision_bits)
                          : eval_h(y, ds, cfg.eval_precision_bits);
    CandidateReport rep = to_bound(y, h, cfg.mode);
    std::cout << "y = " << ystr << "\n  h_" << mode_name(cfg.mode) << " in " << h.str(12)
              << "\n  hit: " << (rep.hit ? "yes" : "no");
    if (rep.bound_simple)
      std::cout << "\n  bound exponents: y+sqrt(y) = " << rep.bound_simple->str(20)
                << ", y+2sqrt(ky) = " << rep.bound_refined->str(20);
    if (rep.widened_alpha)
      std::cout << "\n  widening: alpha = " << rep.widened_alpha->str(8)
                << ", correction exp = " << rep.widened_correction_exp->str(20);
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice search for large values of the zeta-zero sums h_P/h_StR/q_N,\n"
               "with rigorous Mertens-counterexample bounds from certified hits."};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string cfg_path = scan_config_path(argc, argv);
  if (!cfg_path.empty()) {
    try {
      cfg = RunConfig::from_json_file(cfg_path);
    } catch (const Error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  std::string mode = mode_name(cfg.mode);
  std::string sign = sign_name(cfg.sign);

  std::string ingest_out;
  std::vector<std::string> direct_ys;
  std::string dump_basis_path, load_basis_path;
  long precision_digits = 0;

  CLI::App* c_ingest = app.add_subcommand("ingest", "validate and filter a zero-data file");
  c_ingest->add_option("--out-file", ingest_out, "normalized zero file to write")->required();
  CLI::App* c_build = app.add_subcommand("build", "construct the lattice and target");
  c_build->add_option("--dump-basis", dump_basis_path, "also write the basis to this path");
  CLI::App* c_reduce = app.add_subcommand("reduce", "progressive one-tour BKZ reduction");
  c_reduce->add_option("--load-basis", load_basis_path, "reduce this basis file instead");
  c_reduce->add_option("--dump-basis", dump_basis_path, "also write the reduced basis here");
  CLI::App* c_enum = app.add_subcommand("enumerate", "pruned BDD enumeration around the target");
  CLI::App* c_eval = app.add_subcommand("evaluate", "interval-evaluate candidates");
  CLI::App* c_report = app.add_subcommand("report", "summarize a run (or evaluate --y values)");
  c_report->add_option("--y", direct_ys, "evaluate these y values directly");
  CLI::App* c_run = app.add_subcommand("run", "full pipeline");

  for (CLI::App* c : {c_ingest, c_build, c_reduce, c_enum, c_eval, c_report, c_run})
    add_common(c, cfg, mode, sign, precision_digits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (precision_digits > 0)
    cfg.eval_precision_bits = static_cast<long>(precision_digits * 3.3220) + 16;
  try {
    cfg.mode = mode_from_name(mode);
    cfg.sign = sign_from_name(sign);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (c_ingest->parsed()) return do_ingest(cfg, ingest_out);
    if (c_report->parsed() && !direct_ys.empty()) return do_report_direct(cfg, direct_ys);

    try {
      cfg.validate();
    } catch (const Error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }

    if (c_build->parsed()) {
      stage_build(cfg);
      if (!dump_basis_path.empty()) {
        LatticeBasis b = load_basis_file(cfg.out_dir + "/" + artifact::kBasis);
        dump_basis_file(dump_basis_path, b);
      }
      std::cout << "built " << cfg.out_dir << "\n";
      return kExitOk;
    }
    if (c_reduce->parsed()) {
      if (!load_basis_path.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        LatticeBasis b = load_basis_file(load_basis_path);
        dump_basis_file(cfg.out_dir + "/" + artifact::kBasis, b);
      }
      stage_reduce(cfg);
      if (!dump_basis_path.empty()) {
        LatticeBasis r = load_basis_file(cfg.out_dir + "/" + artifact::kReduced);
        dump_basis_file(dump_basis_path, r);
      }
      std::cout << "reduced basis written to " << cfg.out_dir << "\n";
      return kExitOk;
    }
    if (c_enum->parsed()) {
      bool complete = stage_enumerate(cfg);
      std::cout << (complete ? "enumeration complete\n" : "enumeration INCOMPLETE (cap hit)\n");
      return complete ? kExitOk : kExitIncomplete;
    }
    if (c_eval->parsed()) {
      stage_evaluate(cfg);
      std::cout << "reports written\n";
      return kExitOk;
    }
    if (c_report->parsed()) {
      RunSummary s = stage_report(cfg);
      std::cout << "candidates: " << s.candidates << "\nhits: " << s.hits
                << "\nbest y: " << s.best_y << "\nbest h: " << s.best_h << "\n";
      if (!s.min_bound_refined.empty())
        std::cout << "best refined bound exponent: " << s.min_bound_refined << "\n";
      if (s.incomplete) std::cout << "NOTE: enumeration was incomplete\n";
      return s.incomplete ? kExitIncomplete : kExitOk;
    }
    if (c_run->parsed()) {
      int rc = run_pipeline(cfg);
      RunSummary s = stage_report(cfg);
      std::cout << "candidates: " << s.candidates << ", hits: " << s.hits << "\n";
      if (!s.best_y.empty()) std::cout << "best y: " << s.best_y << " h: " << s.best_h << "\n";
      return rc;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  }
  return kExitConfig;
}
