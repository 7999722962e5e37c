#include "cyclic/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cyclic/csv.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/rng.hpp"
#include "cyclic/tuning.hpp"

namespace cyclic {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

[[noreturn]] void bad_field(const std::string& origin, const std::string& field,
                            const char* want) {
  throw ParseError(origin + ": field '" + field + "' must be " + want);
}

double as_number(const json& v, const std::string& origin,
                 const std::string& field) {
  if (!v.is_number()) bad_field(origin, field, "a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number_integer()) bad_field(origin, field, "an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& origin,
                      const std::string& field) {
  if (!v.is_string()) bad_field(origin, field, "a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where, std::vector<std::string>& warnings) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      warnings.push_back(where + ": unknown key '" + item.key() + "' ignored");
    }
  }
}

SpectrumSet parse_spectrum_json(const json& v, const std::string& origin) {
  if (!v.is_array() || v.empty()) {
    bad_field(origin, "spectrum", "a non-empty array of [lo, hi] pairs");
  }
  std::vector<Interval> ivs;
  for (const auto& pair : v) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      bad_field(origin, "spectrum", "a non-empty array of [lo, hi] pairs");
    }
    ivs.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return SpectrumSet(std::move(ivs));  // positivity/order checks live there
}

bool known_method(const std::string& name) {
  if (name == "gd" || name == "phb" || name == "cheby" || name == "cheby2") {
    return true;
  }
  if (name.size() > 2 && name.compare(0, 2, "hb") == 0 && name[2] != '0') {
    return std::all_of(name.begin() + 2, name.end(), [](unsigned char c) {
      return std::isdigit(c) != 0;
    });
  }
  return false;
}

void require_file(const std::string& path, const std::string& origin) {
  if (!std::filesystem::exists(path)) {
    throw FileNotFound(origin + ": file not found: " + path);
  }
}

void validate_semantics(const ExperimentConfig& cfg, const std::string& origin) {
  const ProblemConfig& pc = cfg.problem;
  if (cfg.T < 1) throw ValidationError(origin + ": T must be >= 1");
  if (cfg.burn_in >= cfg.T) {
    throw ValidationError(origin + ": burn_in must be below T");
  }
  if (cfg.warm_start_iters < 0) {
    throw ValidationError(origin + ": warm_start_iters must be >= 0");
  }
  if (cfg.jobs < 1) throw ValidationError(origin + ": jobs must be >= 1");
  if (cfg.lp_points < 1) throw ValidationError(origin + ": lp_points must be >= 1");
  if (cfg.heatmap.grid < 0 || cfg.heatmap.hmax < 0.0) {
    throw ValidationError(origin + ": heatmap grid/hmax must be >= 0");
  }
  if (pc.dim < 0 || pc.rows < 0 || pc.cols < 0 || pc.spikes < 0) {
    throw ValidationError(origin + ": dimensions must be >= 0");
  }
  if (!(pc.factor > 0.0)) {
    throw ValidationError(origin + ": spike factor must be positive");
  }
  if (pc.reg_scale < 0.0) {
    throw ValidationError(origin + ": reg_scale must be >= 0");
  }
  // The K = 2 closed form needs matching interval lengths; reject the
  // combination up front when the spectrum is stated in the config.
  bool wants_k2 = false;
  for (const auto& name : cfg.methods) {
    if (name == "hb2" || name == "cheby2") wants_k2 = true;
  }
  if (wants_k2 && pc.spectrum.intervals.size() == 2) {
    double la = pc.spectrum.intervals[0].hi - pc.spectrum.intervals[0].lo;
    double lb = pc.spectrum.intervals[1].hi - pc.spectrum.intervals[1].lo;
    if (std::abs(la - lb) > 1e-9 * std::max({la, lb, 1e-300})) {
      throw ValidationError(origin +
                            ": hb2/cheby2 need two equal-length intervals");
    }
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  json j = parse_json_text(text, origin);
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

  ExperimentConfig cfg;
  check_keys(j,
             {"problem", "methods", "K", "T", "burn_in", "warm_start_iters",
              "lp_points", "jobs", "output_dir", "heatmap"},
             origin, cfg.warnings);

  if (!j.contains("problem")) throw ParseError(origin + ": missing 'problem'");
  const json& pj = j["problem"];
  if (!pj.is_object()) bad_field(origin, "problem", "an object");
  check_keys(pj,
             {"type", "spectrum", "eigs", "eigs_csv", "dim", "rows", "cols",
              "spikes", "factor", "reg_scale", "data_csv", "labels_csv", "seed"},
             origin + ": problem", cfg.warnings);

  ProblemConfig& pc = cfg.problem;
  if (!pj.contains("type")) throw ParseError(origin + ": missing 'problem.type'");
  pc.type = as_string(pj["type"], origin, "problem.type");
  if (pc.type != "diag_quadratic" && pc.type != "least_squares" &&
      pc.type != "logistic") {
    throw ValidationError(origin + ": unknown problem type '" + pc.type + "'");
  }

  if (pj.contains("spectrum")) pc.spectrum = parse_spectrum_json(pj["spectrum"], origin);
  if (pj.contains("eigs")) {
    const json& ev = pj["eigs"];
    if (!ev.is_array()) bad_field(origin, "problem.eigs", "an array of numbers");
    for (const auto& e : ev) {
      double x = as_number(e, origin, "problem.eigs");
      if (!(x > 0.0)) {
        throw ValidationError(origin + ": eigenvalues must be positive, got " +
                              format_double(x));
      }
      pc.eigs.push_back(x);
    }
  }
  if (pj.contains("eigs_csv")) pc.eigs_csv = as_string(pj["eigs_csv"], origin, "problem.eigs_csv");
  if (pj.contains("dim")) pc.dim = as_int(pj["dim"], origin, "problem.dim");
  if (pj.contains("rows")) pc.rows = as_int(pj["rows"], origin, "problem.rows");
  if (pj.contains("cols")) pc.cols = as_int(pj["cols"], origin, "problem.cols");
  if (pj.contains("spikes")) pc.spikes = as_int(pj["spikes"], origin, "problem.spikes");
  if (pj.contains("factor")) pc.factor = as_number(pj["factor"], origin, "problem.factor");
  if (pj.contains("reg_scale")) pc.reg_scale = as_number(pj["reg_scale"], origin, "problem.reg_scale");
  if (pj.contains("data_csv")) pc.data_csv = as_string(pj["data_csv"], origin, "problem.data_csv");
  if (pj.contains("labels_csv")) pc.labels_csv = as_string(pj["labels_csv"], origin, "problem.labels_csv");
  if (pj.contains("seed")) {
    const json& sv = pj["seed"];
    if (!sv.is_number_integer()) bad_field(origin, "problem.seed", "an integer");
    long long s = sv.get<long long>();
    if (s < 0) throw ValidationError(origin + ": seed must be >= 0");
    pc.seed = static_cast<uint64_t>(s);
    cfg.provided.seed = true;
  }

  if (!j.contains("methods")) throw ParseError(origin + ": missing 'methods'");
  const json& mj = j["methods"];
  if (!mj.is_array()) bad_field(origin, "methods", "an array of method names");
  for (const auto& mv : mj) {
    std::string name = as_string(mv, origin, "methods");
    if (!known_method(name)) {
      throw ValidationError(origin + ": unknown method '" + name + "'");
    }
    if (std::find(cfg.methods.begin(), cfg.methods.end(), name) ==
        cfg.methods.end()) {
      cfg.methods.push_back(name);
    }
  }
  if (j.contains("K")) {
    const json& kj = j["K"];
    if (!kj.is_array()) bad_field(origin, "K", "an array of cycle lengths");
    for (const auto& kv : kj) {
      int k = as_int(kv, origin, "K");
      if (k < 1) throw ValidationError(origin + ": cycle lengths must be >= 1");
      std::string name = "hb" + std::to_string(k);
      if (std::find(cfg.methods.begin(), cfg.methods.end(), name) ==
          cfg.methods.end()) {
        cfg.methods.push_back(name);
      }
    }
  }
  if (cfg.methods.empty()) throw ValidationError(origin + ": no methods requested");

  if (j.contains("T")) {
    cfg.T = as_int(j["T"], origin, "T");
    cfg.provided.T = true;
  }
  if (j.contains("burn_in")) {
    cfg.burn_in = as_int(j["burn_in"], origin, "burn_in");
    if (cfg.burn_in < 0) throw ValidationError(origin + ": burn_in must be >= 0");
    cfg.provided.burn_in = true;
  }
  if (j.contains("warm_start_iters")) {
    cfg.warm_start_iters = as_int(j["warm_start_iters"], origin, "warm_start_iters");
  }
  if (j.contains("lp_points")) {
    cfg.lp_points = as_int(j["lp_points"], origin, "lp_points");
    cfg.provided.lp_points = true;
  }
  if (j.contains("jobs")) {
    cfg.jobs = as_int(j["jobs"], origin, "jobs");
    cfg.provided.jobs = true;
  }
  if (j.contains("output_dir")) {
    cfg.output_dir = as_string(j["output_dir"], origin, "output_dir");
    cfg.provided.output_dir = true;
  }
  if (j.contains("heatmap")) {
    const json& hj = j["heatmap"];
    if (!hj.is_object()) bad_field(origin, "heatmap", "an object");
    check_keys(hj, {"grid", "hmax"}, origin + ": heatmap", cfg.warnings);
    if (hj.contains("grid")) cfg.heatmap.grid = as_int(hj["grid"], origin, "heatmap.grid");
    if (hj.contains("hmax")) cfg.heatmap.hmax = as_number(hj["hmax"], origin, "heatmap.hmax");
  }

  validate_semantics(cfg, origin);

  for (const std::string* path : {&pc.eigs_csv, &pc.data_csv, &pc.labels_csv}) {
    if (!path->empty()) require_file(*path, origin);
  }

  if (const char* env = std::getenv("CYCLIC_MOMENTUM_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ParseError(std::string("CYCLIC_MOMENTUM_SEED: not an unsigned "
                                   "integer: '") + env + "'");
    }
    pc.seed = v;
    cfg.provided.seed = true;
    cfg.warnings.push_back("seed " + std::to_string(v) +
                           " taken from CYCLIC_MOMENTUM_SEED, overriding config");
  }

  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

Vector gaussian_vector(int n, uint64_t seed) {
  Rng rng(seed);
  Vector v(static_cast<size_t>(n));
  for (auto& e : v) e = rng.normal();
  return v;
}

double draw_in(const SpectrumSet& s, Rng& rng) {
  double u = rng.uniform(0.0, s.length());
  for (size_t i = 0; i < s.intervals.size(); ++i) {
    double len = s.intervals[i].hi - s.intervals[i].lo;
    if (u <= len || i + 1 == s.intervals.size()) {
      return s.intervals[i].lo + std::min(u, len);
    }
    u -= len;
  }
  return s.mu();
}

struct BuiltProblem {
  ObjectiveInstance obj;
  Vector x0;
  SpectrumSet tuning;
  Vector eig_list;  // ascending
};

// Derived seeds: the base seed drives the data/minimizer, +1 the start point,
// +2 synthetic labels, +3 synthetic regression targets.
BuiltProblem build_problem(const ProblemConfig& pc, int warm_start_iters) {
  if (pc.type == "diag_quadratic") {
    std::vector<double> eigs = pc.eigs;
    if (!pc.eigs_csv.empty()) {
      Vector file_eigs = read_vector_csv(pc.eigs_csv);
      eigs.insert(eigs.end(), file_eigs.begin(), file_eigs.end());
    }
    bool have_spectrum = !pc.spectrum.intervals.empty();
    if (have_spectrum) {
      for (const auto& iv : pc.spectrum.intervals) {
        for (double endpoint : {iv.lo, iv.hi}) {
          if (std::find(eigs.begin(), eigs.end(), endpoint) == eigs.end()) {
            eigs.push_back(endpoint);
          }
        }
      }
    }
    if (eigs.empty()) {
      throw ValidationError(
          "diag_quadratic needs eigenvalues: 'eigs', 'eigs_csv', or 'spectrum'");
    }
    int pins = static_cast<int>(eigs.size());
    int dim = pc.dim > 0 ? pc.dim : pins;
    if (dim < pins) {
      throw ValidationError("'dim' is below the pinned eigenvalue count");
    }
    if (dim > pins && !have_spectrum) {
      throw ValidationError("filling 'dim' beyond the pinned eigenvalues needs 'spectrum'");
    }
    Rng rng(pc.seed);
    while (static_cast<int>(eigs.size()) < dim) eigs.push_back(draw_in(pc.spectrum, rng));
    std::sort(eigs.begin(), eigs.end());
    BuiltProblem prob{make_diag_quadratic(eigs, pc.seed),
                      gaussian_vector(dim, pc.seed + 1),
                      have_spectrum ? pc.spectrum : two_interval_fit(eigs),
                      Vector(eigs.begin(), eigs.end())};
    return prob;
  }

  Matrix A;
  if (!pc.data_csv.empty()) {
    A = read_matrix_csv(pc.data_csv);
  } else {
    if (pc.rows <= 0 || pc.cols <= 0) {
      throw ValidationError("synthetic data needs positive 'rows' and 'cols'");
    }
    A = make_spiked_covariance(pc.cols, pc.rows, pc.spikes, pc.factor, pc.seed);
  }

  if (pc.type == "least_squares") {
    Vector b;
    if (!pc.labels_csv.empty()) {
      b = read_vector_csv(pc.labels_csv);
      if (static_cast<int>(b.size()) != A.rows) {
        throw ValidationError("targets length does not match data rows");
      }
    } else {
      b = matvec(A, gaussian_vector(A.cols, pc.seed + 3));
    }
    ObjectiveInstance obj = make_least_squares(A, b, pc.reg_scale);
    std::vector<double> ev = sym_eigvals(obj.hessian(Vector(A.cols, 0.0)));
    BuiltProblem prob{obj, gaussian_vector(A.cols, pc.seed + 1),
                      two_interval_fit(ev), Vector(ev.begin(), ev.end())};
    return prob;
  }

  // logistic: spectrum fitted at the optimum, start warm-started from zero
  std::vector<int> labels;
  if (!pc.labels_csv.empty()) {
    for (double v : read_vector_csv(pc.labels_csv)) {
      if (v != 1.0 && v != -1.0) {
        throw BadLabels("labels must be +-1, got " + format_double(v));
      }
      labels.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(labels.size()) != A.rows) {
      throw ValidationError("labels length does not match data rows");
    }
  } else {
    labels = make_sign_labels(A, pc.seed + 2);
  }
  ObjectiveInstance obj = make_logistic(A, labels, pc.reg_scale);
  Vector x_opt = find_optimum(obj);
  std::vector<double> ev = sym_eigvals(obj.hessian(x_opt));

  Vector x0(static_cast<size_t>(A.cols), 0.0);
  double L0 = power_iteration_sym(
      [&](const Vector& v) { return obj.hessian_vec(x0, v); }, A.cols);
  for (int i = 0; i < warm_start_iters; ++i) {
    Vector g = obj.gradient(x0);
    axpy(-1.0 / L0, g, x0);
  }
  BuiltProblem prob{obj, x0, two_interval_fit(ev), Vector(ev.begin(), ev.end())};
  return prob;
}

struct TunedMethod {
  CycleParams params;
  std::string schedule;
};

TunedMethod tune_method(const std::string& name, const SpectrumSet& s,
                        int lp_points) {
  const double mu = s.mu();
  const double L = s.L();
  if (name == "gd") return {CycleParams{{2.0 / (L + mu)}, 0.0}, ""};
  if (name == "phb") return {tune_phb(mu, L), ""};
  if (name == "cheby") return {tune_phb(mu, L), "cheby"};
  if (name == "cheby2") return {tune_K2(s), "cheby2"};
  if (name == "hb1") return {tune_phb(mu, L), ""};
  if (name == "hb2") return {tune_K2(s), ""};
  int k = std::stoi(name.substr(2));
  return {tune_general(s, k, lp_points).params, ""};
}

RunTrace run_method(const TunedMethod& tm, const ObjectiveInstance& obj,
                    const SpectrumSet& s, const Vector& x0, int T) {
  if (tm.schedule == "cheby") {
    return run_cheby_semi_iterative(obj, s.mu(), s.L(), x0, T);
  }
  if (tm.schedule == "cheby2") return run_cyclic_cheby2(obj, s, x0, T);
  return run_hbk(obj, tm.params, x0, T);
}

MethodResult evaluate_method(const std::string& name, const BuiltProblem& prob,
                             const ExperimentConfig& cfg) {
  MethodResult mr;
  mr.method = name;
  try {
    TunedMethod tm = tune_method(name, prob.tuning, cfg.lp_points);
    mr.params = tm.params;
    mr.schedule = tm.schedule;
    mr.report = rate_report(tm.params, prob.tuning);
    mr.trace = run_method(tm, prob.obj, prob.tuning, prob.x0, cfg.T);
    int burn = cfg.burn_in >= 0 ? cfg.burn_in : cfg.T / 10;
    try {
      mr.rate_empirical = empirical_rate(mr.trace, burn);
    } catch (const InsufficientData&) {
      // short or diverged traces cannot support a fit; summary shows nan
    }
  } catch (const std::exception& e) {
    mr.error = e.what();
  }
  return mr;
}

std::string trace_csv(const RunTrace& tr) {
  std::string out = "iteration,";
  out += tr.distance_metric ? "distance" : "grad_norm";
  out += '\n';
  for (size_t t = 0; t < tr.metric.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(tr.metric[t]);
    out += '\n';
  }
  return out;
}

std::string join_h(const std::vector<double>& h) {
  std::string out;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) out += ';';
    out += format_double(h[i]);
  }
  return out;
}

std::string summary_csv(const std::vector<MethodResult>& methods) {
  std::string out =
      "method,K,m,h_list,sigma_star,regime,rate_theory,rate_empirical\n";
  for (const auto& mr : methods) {
    if (!mr.error.empty()) continue;
    out += mr.method;
    out += ',';
    out += std::to_string(mr.params.K());
    out += ',';
    out += format_double(mr.params.m);
    out += ',';
    out += join_h(mr.params.h);
    out += ',';
    out += format_double(mr.report.sigma_star);
    out += ',';
    out += regime_name(mr.report.regime);
    out += ',';
    out += format_double(mr.report.rate);
    out += ',';
    out += format_double(mr.rate_empirical);
    out += '\n';
  }
  return out;
}

std::string eigen_csv(const Vector& eigs) {
  std::string out = "eigenvalue\n";
  for (double e : eigs) {
    out += format_double(e);
    out += '\n';
  }
  return out;
}

std::string manifest_json(const ExperimentResult& res) {
  ordered_json m;
  m["status"] = res.complete ? "complete" : "partial";
  ordered_json failures = ordered_json::object();
  for (const auto& mr : res.methods) {
    if (!mr.error.empty()) failures[mr.method] = mr.error;
  }
  m["failures"] = failures;
  ordered_json outputs = ordered_json::array();
  for (const auto& mr : res.methods) {
    if (mr.error.empty()) outputs.push_back("trace_" + mr.method + ".csv");
  }
  outputs.push_back("summary.csv");
  outputs.push_back("eigenvalues.csv");
  if (res.heatmap) outputs.push_back("heatmap.csv");
  m["outputs"] = outputs;
  return m.dump(2) + "\n";
}

}  // namespace

HeatmapResult sweep_heatmap(const SpectrumSet& s, double m, int grid,
                            double hmax, int jobs) {
  if (grid < 1) throw DegenerateInput("sweep_heatmap: grid must be >= 1");
  if (!(m > 0.0) || !(m < 1.0)) {
    throw InvalidMomentum("sweep_heatmap: momentum must satisfy 0 < m < 1");
  }
  if (hmax <= 0.0) {
    // Default range covers the stable steps for the first cluster; a single
    // interval is treated as two touching halves, matching tune_K2.
    double L1 = (s.intervals.size() == 1)
                    ? 0.5 * (s.intervals[0].lo + s.intervals[0].hi)
                    : s.intervals[0].hi;
    hmax = 2.0 / L1;
  }
  HeatmapResult hm;
  hm.m = m;
  hm.h_values.resize(static_cast<size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    hm.h_values[static_cast<size_t>(i)] = hmax * (i + 1) / grid;
  }
  hm.rate.assign(static_cast<size_t>(grid) * grid,
                 std::numeric_limits<double>::quiet_NaN());
  parallel_for(grid, jobs, [&](int i) {
    CycleParams p;
    p.m = m;
    p.h = {hm.h_values[static_cast<size_t>(i)], 0.0};
    for (int j = 0; j < grid; ++j) {
      p.h[1] = hm.h_values[static_cast<size_t>(j)];
      hm.rate[static_cast<size_t>(i) * grid + j] = rate_report(p, s).rate;
    }
  });
  return hm;
}

std::string heatmap_csv(const HeatmapResult& hm) {
  std::string out = "h0,h1,rate\n";
  const size_t n = hm.h_values.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      out += format_double(hm.h_values[i]);
      out += ',';
      out += format_double(hm.h_values[j]);
      out += ',';
      out += format_double(hm.rate[i * n + j]);
      out += '\n';
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  BuiltProblem prob = build_problem(cfg.problem, cfg.warm_start_iters);

  ExperimentResult res;
  res.tuning_spectrum = prob.tuning;
  res.eigenvalues = prob.eig_list;
  res.methods.resize(cfg.methods.size());
  parallel_for(static_cast<int>(cfg.methods.size()), cfg.jobs, [&](int i) {
    res.methods[static_cast<size_t>(i)] =
        evaluate_method(cfg.methods[static_cast<size_t>(i)], prob, cfg);
  });
  for (const auto& mr : res.methods) {
    if (!mr.error.empty()) res.complete = false;
  }

  if (cfg.heatmap.grid > 0) {
    double m = tune_K2(prob.tuning).m;
    res.heatmap = sweep_heatmap(prob.tuning, m, cfg.heatmap.grid,
                                cfg.heatmap.hmax, cfg.jobs);
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory: " + cfg.output_dir + ": " +
                  ec.message());
  }
  auto out_path = [&](const std::string& name) {
    return (fs::path(cfg.output_dir) / name).string();
  };
  for (const auto& mr : res.methods) {
    if (mr.error.empty()) {
      write_text_file(out_path("trace_" + mr.method + ".csv"), trace_csv(mr.trace));
    }
  }
  write_text_file(out_path("summary.csv"), summary_csv(res.methods));
  write_text_file(out_path("eigenvalues.csv"), eigen_csv(res.eigenvalues));
  if (res.heatmap) {
    write_text_file(out_path("heatmap.csv"), heatmap_csv(*res.heatmap));
  }
  write_text_file(out_path("manifest.json"), manifest_json(res));
  return res;
}

}  // namespace cyclic
