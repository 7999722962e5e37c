#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclic/bench.hpp"
#include "cyclic/csv.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/minimax.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/spectrum.hpp"
#include "cyclic/tuning.hpp"

using namespace cyclic;
using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<double> parse_number_list(const std::string& text, char sep,
                                      const std::string& what) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, sep)) {
    try {
      size_t pos = 0;
      double v = std::stod(cell, &pos);
      while (pos < cell.size() &&
             std::isspace(static_cast<unsigned char>(cell[pos]))) {
        ++pos;
      }
      if (pos != cell.size()) throw ParseError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(what + ": not a number: '" + cell + "'");
    }
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

SpectrumSet parse_spectrum_arg(const std::string& text) {
  std::vector<Interval> ivs;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    auto nums = parse_number_list(part, ',', "--spectrum");
    if (nums.size() != 2) {
      throw ParseError("--spectrum: each interval needs exactly 'lo,hi'");
    }
    ivs.push_back({nums[0], nums[1]});
  }
  if (ivs.empty()) throw ParseError("--spectrum: empty");
  return SpectrumSet(std::move(ivs));
}

SpectrumSet resolve_spectrum(const std::string& spec_str,
                             const std::string& eigs_csv) {
  if (!spec_str.empty() && !eigs_csv.empty()) {
    throw ValidationError("give either --spectrum or --eigs-csv, not both");
  }
  if (!spec_str.empty()) return parse_spectrum_arg(spec_str);
  if (!eigs_csv.empty()) return two_interval_fit(read_vector_csv(eigs_csv));
  throw ValidationError(
      "a spectrum is required: --spectrum \"mu1,L1;mu2,L2\" or --eigs-csv FILE");
}

ordered_json spectrum_json(const SpectrumSet& s) {
  ordered_json arr = ordered_json::array();
  for (const auto& iv : s.intervals) {
    arr.push_back(ordered_json::array({iv.lo, iv.hi}));
  }
  return arr;
}

ordered_json params_json(const CycleParams& p, const RateReport& rep) {
  ordered_json j;
  j["K"] = p.K();
  j["m"] = p.m;
  j["h"] = p.h;
  j["rate"] = rep.rate;
  j["sigma_star"] = rep.sigma_star;
  j["witness_lambda"] = rep.witness_lambda;
  j["regime"] = regime_name(rep.regime);
  return j;
}

void emit(const ordered_json& j, const std::string& out_file) {
  std::string text = j.dump(2) + "\n";
  if (!out_file.empty()) write_text_file(out_file, text);
  std::fputs(text.c_str(), stdout);
}

void warn(const std::string& msg) {
  std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

CycleParams tune_for_k(const SpectrumSet& s, int k, int lp_points) {
  if (k == 1) return tune_phb(s.mu(), s.L());
  if (k == 2) {
    try {
      return tune_K2(s);
    } catch (const ValidationError&) {
      // fall through to the LP pipeline for shapes outside the closed form
    }
  }
  return tune_general(s, k, lp_points).params;
}

int cmd_tune(const SpectrumSet& s, int k, int k_max, int lp_points,
             const std::string& out_file) {
  if (k < 0) throw ValidationError("--k must be >= 1 (omit to scan)");
  if (k > 0) {
    CycleParams p = tune_for_k(s, k, lp_points);
    emit(params_json(p, rate_report(p, s)), out_file);
    return 0;
  }
  if (k_max < 1) throw ValidationError("--k-max must be >= 1");
  ordered_json scan = ordered_json::array();
  bool have_best = false;
  CycleParams best;
  RateReport best_rep;
  for (int kk = 1; kk <= k_max; ++kk) {
    ordered_json row;
    row["K"] = kk;
    try {
      CycleParams p = tune_for_k(s, kk, lp_points);
      RateReport rep = rate_report(p, s);
      row["m"] = p.m;
      row["h"] = p.h;
      row["rate"] = rep.rate;
      row["regime"] = regime_name(rep.regime);
      if (!have_best || rep.rate < best_rep.rate) {
        have_best = true;
        best = p;
        best_rep = rep;
      }
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    scan.push_back(row);
  }
  if (!have_best) {
    throw NoSolutionFound("no cycle length in 1.." + std::to_string(k_max) +
                          " tuned successfully");
  }
  ordered_json j = params_json(best, best_rep);
  j["scan"] = scan;
  emit(j, out_file);
  return 0;
}

int cmd_rate(const SpectrumSet& s, double m, const std::string& h_text,
             const std::string& out_file) {
  CycleParams p;
  p.m = m;
  p.h = parse_number_list(h_text, ',', "--steps");
  RateReport rep = rate_report(p, s);
  emit(params_json(p, rep), out_file);
  return 0;
}

int cmd_sigma(const SpectrumSet& s, int k, int lp_points,
              const std::string& out_file) {
  SigmaLpResult lp = solve_sigma_lp(s, k, lp_points);
  EquioscResult eq = check_equioscillation(lp.sigma, s);
  bool strong = check_strong_optimality(lp.sigma, s);
  double m = momentum_from_sigma0(lp.sigma0, k);
  ordered_json j;
  j["K"] = k;
  j["coeffs"] = lp.sigma.coeffs;
  j["sigma0"] = lp.sigma0;
  j["points_used"] = lp.points_used;
  j["m"] = m;
  j["rate"] = std::sqrt(m);
  ordered_json pts = ordered_json::array();
  for (const auto& pt : eq.points) {
    ordered_json row;
    row["lambda"] = pt.lambda;
    row["sign"] = pt.sign;
    pts.push_back(row);
  }
  j["equioscillation"] = ordered_json{{"ok", eq.ok}, {"points", pts}};
  j["strong_optimality"] = strong;
  emit(j, out_file);
  return 0;
}

int cmd_sweep(const SpectrumSet& s, double m, int grid, double hmax, int jobs,
              const std::string& out_file) {
  double m_used = m > 0.0 ? m : tune_K2(s).m;
  HeatmapResult hm = sweep_heatmap(s, m_used, grid, hmax, jobs);
  write_text_file(out_file, heatmap_csv(hm));
  size_t n = hm.h_values.size();
  size_t arg = 0;
  for (size_t i = 1; i < n * n; ++i) {
    if (hm.rate[i] < hm.rate[arg]) arg = i;
  }
  ordered_json j;
  j["file"] = out_file;
  j["grid"] = grid;
  j["m"] = m_used;
  j["hmax"] = hm.h_values.back();
  j["min_rate"] = hm.rate[arg];
  j["argmin"] = ordered_json::array(
      {hm.h_values[arg / n], hm.h_values[arg % n]});
  emit(j, "");
  return 0;
}

int cmd_bench(ExperimentConfig cfg, const CLI::App* cmd, int flag_T,
              int flag_burn, int flag_jobs, long long flag_seed,
              const std::string& flag_outdir, int flag_lp) {
  auto override_or_warn = [&](const char* flag, bool provided, auto apply) {
    if (cmd->count(flag) == 0) return;
    if (provided) {
      warn(std::string("config value wins over ") + flag);
    } else {
      apply();
    }
  };
  override_or_warn("--iters", cfg.provided.T, [&] { cfg.T = flag_T; });
  override_or_warn("--burn-in", cfg.provided.burn_in,
                   [&] { cfg.burn_in = flag_burn; });
  override_or_warn("--jobs", cfg.provided.jobs, [&] { cfg.jobs = flag_jobs; });
  override_or_warn("--seed", cfg.provided.seed, [&] {
    if (flag_seed < 0) throw ValidationError("--seed must be >= 0");
    cfg.problem.seed = static_cast<uint64_t>(flag_seed);
  });
  override_or_warn("--output-dir", cfg.provided.output_dir,
                   [&] { cfg.output_dir = flag_outdir; });
  override_or_warn("--lp-points", cfg.provided.lp_points,
                   [&] { cfg.lp_points = flag_lp; });
  if (cfg.T < 1 || cfg.jobs < 1 || cfg.lp_points < 1 || cfg.burn_in >= cfg.T) {
    throw ValidationError("flag overrides left an inconsistent config");
  }

  ExperimentResult res = run_experiment(cfg);
  ordered_json j;
  j["status"] = res.complete ? "complete" : "partial";
  j["output_dir"] = cfg.output_dir;
  j["spectrum"] = spectrum_json(res.tuning_spectrum);
  ordered_json ms = ordered_json::array();
  for (const auto& mr : res.methods) {
    ordered_json row;
    row["method"] = mr.method;
    if (!mr.error.empty()) {
      row["error"] = mr.error;
    } else {
      row["K"] = mr.params.K();
      row["m"] = mr.params.m;
      row["h"] = mr.params.h;
      row["regime"] = regime_name(mr.report.regime);
      row["rate_theory"] = mr.report.rate;
      row["rate_empirical"] = mr.rate_empirical;
    }
    ms.push_back(row);
  }
  j["methods"] = ms;
  emit(j, "");
  if (!res.complete) {
    std::fprintf(stderr, "error: one or more methods failed; see %s/manifest.json\n",
                 cfg.output_dir.c_str());
    return 3;
  }
  return 0;
}

int cmd_spectrum(const std::string& eigs_csv, const std::string& out_file) {
  Vector eigs = read_vector_csv(eigs_csv);
  SpectrumSet fit = two_interval_fit(std::vector<double>(eigs.begin(), eigs.end()));
  GapParams gp = gap_params(fit);
  ordered_json j;
  j["count"] = eigs.size();
  j["intervals"] = spectrum_json(fit);
  j["mu"] = gp.mu;
  j["L"] = gp.L;
  j["kappa"] = gp.kappa;
  j["rho"] = gp.rho;
  j["R"] = gp.R;
  emit(j, out_file);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclical heavy-ball tuning, rate certificates, and benchmarks"};
  app.require_subcommand(1);

  std::string tn_spec, tn_eigs, tn_out;
  int tn_k = 0, tn_kmax = 4, tn_lp = 2000;
  auto* tune_cmd = app.add_subcommand("tune", "optimal cycle parameters for a spectrum");
  tune_cmd->add_option("--spectrum", tn_spec, "intervals \"mu1,L1;mu2,L2\"");
  tune_cmd->add_option("--eigs-csv", tn_eigs, "eigenvalue CSV, fitted to two intervals");
  tune_cmd->add_option("--k", tn_k, "cycle length; omit to scan 1..k-max");
  tune_cmd->add_option("--k-max", tn_kmax, "scan upper bound (default 4)");
  tune_cmd->add_option("--lp-points", tn_lp, "minimax LP discretization size");
  tune_cmd->add_option("-o,--output", tn_out, "also write the JSON to this file");

  std::string rt_spec, rt_eigs, rt_h, rt_out;
  double rt_m = 0.0;
  auto* rate_cmd = app.add_subcommand("rate", "worst-case factor of a given cycle");
  rate_cmd->add_option("--spectrum", rt_spec, "intervals \"mu1,L1;mu2,L2\"");
  rate_cmd->add_option("--eigs-csv", rt_eigs, "eigenvalue CSV, fitted to two intervals");
  rate_cmd->add_option("--m", rt_m, "momentum")->required();
  rate_cmd->add_option("--steps", rt_h, "step-size cycle \"h0,h1,...\"")->required();
  rate_cmd->add_option("-o,--output", rt_out, "also write the JSON to this file");

  std::string sg_spec, sg_eigs, sg_out;
  int sg_k = 2, sg_lp = 2000;
  auto* sigma_cmd = app.add_subcommand("sigma", "minimax link polynomial and certificates");
  sigma_cmd->add_option("--spectrum", sg_spec, "intervals \"mu1,L1;mu2,L2\"");
  sigma_cmd->add_option("--eigs-csv", sg_eigs, "eigenvalue CSV, fitted to two intervals");
  sigma_cmd->add_option("--k", sg_k, "polynomial degree")->required();
  sigma_cmd->add_option("--lp-points", sg_lp, "LP discretization size");
  sigma_cmd->add_option("-o,--output", sg_out, "also write the JSON to this file");

  std::string sw_spec, sw_eigs, sw_out = "heatmap.csv";
  int sw_grid = 200, sw_jobs = 1;
  double sw_hmax = 0.0, sw_m = 0.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "rate heatmap over a step-size grid");
  sweep_cmd->add_option("--spectrum", sw_spec, "intervals \"mu1,L1;mu2,L2\"");
  sweep_cmd->add_option("--eigs-csv", sw_eigs, "eigenvalue CSV, fitted to two intervals");
  sweep_cmd->add_option("--grid", sw_grid, "grid cells per axis (default 200)");
  sweep_cmd->add_option("--hmax", sw_hmax, "largest step-size; 0 = 2/L_1");
  sweep_cmd->add_option("--m", sw_m, "momentum; 0 = tuned two-cycle value");
  sweep_cmd->add_option("--jobs", sw_jobs, "worker threads");
  sweep_cmd->add_option("-o,--output", sw_out, "heatmap CSV path (default heatmap.csv)");

  std::string bn_config, bn_outdir;
  int bn_T = 0, bn_burn = 0, bn_jobs = 0, bn_lp = 0;
  long long bn_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment config");
  bench_cmd->add_option("--config", bn_config, "experiment JSON file")->required();
  bench_cmd->add_option("-T,--iters", bn_T, "iterations per method");
  bench_cmd->add_option("--burn-in", bn_burn, "iterations dropped from the rate fit");
  bench_cmd->add_option("--jobs", bn_jobs, "worker threads");
  bench_cmd->add_option("--seed", bn_seed, "problem seed");
  bench_cmd->add_option("--output-dir", bn_outdir, "artifact directory");
  bench_cmd->add_option("--lp-points", bn_lp, "LP discretization size");

  std::string sx_eigs, sx_out;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "fit two intervals to an eigenvalue list");
  spectrum_cmd->add_option("--eigs-csv", sx_eigs, "eigenvalue CSV")->required();
  spectrum_cmd->add_option("-o,--output", sx_out, "also write the JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage problems are validation failures
  }

  try {
    if (tune_cmd->parsed()) {
      return cmd_tune(resolve_spectrum(tn_spec, tn_eigs), tn_k, tn_kmax, tn_lp, tn_out);
    }
    if (rate_cmd->parsed()) {
      return cmd_rate(resolve_spectrum(rt_spec, rt_eigs), rt_m, rt_h, rt_out);
    }
    if (sigma_cmd->parsed()) {
      return cmd_sigma(resolve_spectrum(sg_spec, sg_eigs), sg_k, sg_lp, sg_out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(resolve_spectrum(sw_spec, sw_eigs), sw_m, sw_grid,
                       sw_hmax, sw_jobs, sw_out);
    }
    if (bench_cmd->parsed()) {
      ExperimentConfig cfg = parse_config(bn_config);
      for (const auto& w : cfg.warnings) warn(w);
      return cmd_bench(std::move(cfg), bench_cmd, bn_T, bn_burn, bn_jobs,
                       bn_seed, bn_outdir, bn_lp);
    }
    if (spectrum_cmd->parsed()) return cmd_spectrum(sx_eigs, sx_out);
    throw ValidationError("no subcommand");
  } catch (const FileNotFound& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
