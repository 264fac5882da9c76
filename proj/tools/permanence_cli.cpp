// Command-line frontend: analyze / simulate / sweep / models.

#include "permanence/certificates.hpp"
#include "permanence/json_io.hpp"
#include "permanence/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace permanence;

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("PERMANENCE_LOG");
    if (!env) return LogLevel::Error;
    std::string s(env);
    if (s == "debug") return LogLevel::Debug;
    if (s == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[info] " << msg << "\n";
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CliError : std::runtime_error {
  int exit_code;
  CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CliError(2, std::string("malformed config JSON: ") + e.what());
  }
  return j;
}

SystemSpec spec_from_config(const json& config) {
  if (!config.contains("spec")) throw CliError(2, "config is missing the \"spec\" block");
  SystemSpec spec;
  try {
    spec = spec_from_json(config["spec"]);
  } catch (const std::exception& e) {
    throw CliError(2, std::string("invalid spec: ") + e.what());
  }
  auto errors = validate(spec);
  if (!errors.empty()) {
    std::string msg = "spec validation failed:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw CliError(2, msg);
  }
  return spec;
}

IntegratorOptions integrator_from_config(const json& config) {
  IntegratorOptions opts;
  if (!config.contains("integrator")) return opts;
  const json& j = config["integrator"];
  if (j.contains("rel_tol")) opts.rel_tol = j["rel_tol"].get<double>();
  if (j.contains("abs_tol")) opts.abs_tol = j["abs_tol"].get<double>();
  if (j.contains("t_max")) opts.t_max = j["t_max"].get<double>();
  if (j.contains("max_steps")) opts.max_steps = j["max_steps"].get<long>();
  if (j.contains("min_log_density")) opts.min_log_density = j["min_log_density"].get<double>();
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) || !(opts.t_max > 0.0)) {
    throw CliError(2, "integrator tolerances and t_max must be positive");
  }
  return opts;
}

// A parameter path addresses scalar entries of the spec: "b[i][j]" or
// "c[i]" with 1-based indices; a comma-separated list sets several entries
// to the same swept value.
struct ParamTarget {
  bool is_b = false;
  int i = 0, j = 0;
};

std::vector<ParamTarget> parse_param_path(const std::string& path, int n) {
  std::vector<ParamTarget> targets;
  std::stringstream ss(path);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    ParamTarget t;
    int consumed = 0;
    if (std::sscanf(piece.c_str(), "b[%d][%d]%n", &t.i, &t.j, &consumed) == 2 &&
        consumed == static_cast<int>(piece.size())) {
      t.is_b = true;
    } else if (std::sscanf(piece.c_str(), "c[%d]%n", &t.i, &consumed) == 1 &&
               consumed == static_cast<int>(piece.size())) {
      t.is_b = false;
      t.j = 1;
    } else {
      throw CliError(2, "unrecognized parameter path: \"" + piece + "\"");
    }
    if (t.i < 1 || t.i > n || t.j < 1 || t.j > n) {
      throw CliError(2, "parameter path out of range for this spec: \"" + piece + "\"");
    }
    targets.push_back(t);
  }
  if (targets.empty()) throw CliError(2, "empty parameter path");
  return targets;
}

void apply_param(SystemSpec& spec, const std::vector<ParamTarget>& targets, double value) {
  for (const auto& t : targets) {
    if (t.is_b) {
      spec.B(t.i - 1, t.j - 1) = value;
    } else {
      spec.c[t.i - 1] = value;
    }
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError(2, "cannot write to " + path.string());
  out << text;
}

int cmd_analyze(const std::string& config_path, const std::string& out_dir) {
  json config = load_config(config_path);
  SystemSpec spec = spec_from_config(config);
  Verdict v = analyze(spec);
  std::string text = verdict_to_json(v).dump(2) + "\n";
  std::cout << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "verdict.json", text);
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 unsigned long seed) {
  json config = load_config(config_path);
  SystemSpec spec = spec_from_config(config);
  IntegratorOptions opts = integrator_from_config(config);

  std::vector<Vec> starts;
  int stride = 1;
  if (config.contains("simulate")) {
    const json& sj = config["simulate"];
    if (sj.contains("stride")) stride = std::max(1, sj["stride"].get<int>());
    if (sj.contains("initial_conditions")) {
      for (const json& row : sj["initial_conditions"]) {
        if (static_cast<int>(row.size()) != spec.n) {
          throw CliError(2, "initial condition dimension mismatch");
        }
        Vec x0(spec.n);
        for (int i = 0; i < spec.n; ++i) x0[i] = row[i].get<double>();
        starts.push_back(x0);
      }
    } else if (sj.contains("n_samples")) {
      int ns = sj["n_samples"].get<int>();
      double hi = 0.0;
      for (int i = 0; i < spec.n; ++i) hi = std::max(hi, 2.0 * spec.c[i] / spec.B(i, i));
      const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
      for (int s = 0; s < ns; ++s) {
        Vec x0(spec.n);
        for (int i = 0; i < spec.n; ++i) {
          x0[i] = 0.01 + (hi - 0.01) * halton(seed + 1 + s, primes[i]);
        }
        starts.push_back(x0);
      }
    }
  }
  if (starts.empty()) throw CliError(2, "simulate requires initial_conditions or n_samples");
  if (out_dir.empty()) throw CliError(2, "simulate requires --out");
  fs::create_directories(out_dir);

  json summary;
  summary["trajectories"] = json::array();
  double delta_hat = std::numeric_limits<double>::infinity();
  double d_hat = 0.0;
  bool any_interior = false;
  for (size_t s = 0; s < starts.size(); ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "traj_%03zu.csv", s);
    json entry;
    entry["file"] = name;
    try {
      Trajectory traj = integrate(spec, starts[s], opts);
      std::ostringstream csv;
      csv << "t";
      for (int i = 0; i < spec.n; ++i) csv << ",x" << i + 1;
      csv << "\n";
      for (size_t p = 0; p < traj.times.size(); ++p) {
        if (p % stride != 0 && p + 1 != traj.times.size()) continue;
        csv << fmt_double(traj.times[p]);
        for (int i = 0; i < spec.n; ++i) csv << "," << fmt_double(traj.states[p][i]);
        csv << "\n";
      }
      write_text(fs::path(out_dir) / name, csv.str());

      double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
      for (size_t p = 0; p < traj.times.size(); ++p) {
        if (traj.times[p] < opts.t_max / 2.0) continue;
        tmin = std::min(tmin, traj.states[p].minCoeff());
        tmax = std::max(tmax, traj.states[p].maxCoeff());
      }
      if (starts[s].minCoeff() > 0.0) {
        any_interior = true;
        delta_hat = std::min(delta_hat, tmin);
        d_hat = std::max(d_hat, tmax);
      }
      entry["status"] = "ok";
      entry["rejected_steps"] = traj.flags.rejected_steps;
      entry["min_component"] = traj.flags.min_component;
      entry["near_extinction"] = traj.flags.near_extinction;
    } catch (const IntegrationError& e) {
      entry["status"] = std::string("failed: ") + e.what();
    }
    summary["trajectories"].push_back(entry);
  }
  if (any_interior) {
    summary["delta_hat"] = delta_hat;
    summary["D_hat"] = d_hat;
  }
  std::string text = summary.dump(2) + "\n";
  std::cout << text;
  write_text(fs::path(out_dir) / "summary.json", text);
  return 0;
}

struct SweepAxis {
  std::string path;
  std::vector<ParamTarget> targets;
  double min = 0.0, max = 0.0;
  int steps = 1;

  double value(int idx) const {
    if (steps == 1) return min;
    return min + (max - min) * idx / (steps - 1);
  }
};

int cmd_sweep(const std::string& config_path, const std::string& out_dir, unsigned long seed,
              int jobs) {
  json config = load_config(config_path);
  SystemSpec base = spec_from_config(config);
  if (!config.contains("sweep") || !config["sweep"].contains("parameters")) {
    throw CliError(2, "sweep requires a \"sweep\" block with \"parameters\"");
  }
  const json& sj = config["sweep"];
  bool empirical = sj.value("empirical", false);
  IntegratorOptions opts = integrator_from_config(config);
  int n_samples = sj.value("n_samples", 5);

  std::vector<SweepAxis> axes;
  for (const json& pj : sj["parameters"]) {
    SweepAxis axis;
    axis.path = pj.at("path").get<std::string>();
    axis.targets = parse_param_path(axis.path, base.n);
    axis.min = pj.at("min").get<double>();
    axis.max = pj.at("max").get<double>();
    axis.steps = pj.at("steps").get<int>();
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || axis.steps < 1) {
      throw CliError(2, "sweep ranges must be finite with steps >= 1");
    }
    axes.push_back(axis);
  }
  if (axes.empty() || axes.size() > 2) {
    throw CliError(2, "sweep supports grids over 1 or 2 parameters");
  }

  const int n1 = axes[0].steps;
  const int n2 = axes.size() == 2 ? axes[1].steps : 1;
  const int n_cells = n1 * n2;

  struct Cell {
    std::vector<double> values;
    std::string outcome;
    std::string margin, rho_s, delta_s;
  };
  std::vector<Cell> cells(n_cells);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= n_cells) break;
      int i1 = idx / n2, i2 = idx % n2;
      Cell& cell = cells[idx];
      cell.values.push_back(axes[0].value(i1));
      if (axes.size() == 2) cell.values.push_back(axes[1].value(i2));
      SystemSpec spec = base;
      apply_param(spec, axes[0].targets, axes[0].value(i1));
      if (axes.size() == 2) apply_param(spec, axes[1].targets, axes[1].value(i2));
      try {
        Verdict v = analyze(spec);
        cell.outcome = outcome_name(v.outcome);
        if (v.certificate) cell.margin = fmt_double(v.certificate->margin);
        if (v.rho_value) cell.rho_s = fmt_double(*v.rho_value);
        if (empirical) {
          PermanenceReport rep = empirical_permanence(spec, n_samples, opts, seed);
          cell.delta_s = fmt_double(rep.delta_hat);
        }
      } catch (const std::exception&) {
        cell.outcome = "Error";
      }
    }
  };

  if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, n_cells));
  log_info("sweep over " + std::to_string(n_cells) + " cells with " + std::to_string(jobs) +
           " workers");
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << axes[0].path;
  if (axes.size() == 2) csv << "," << axes[1].path;
  csv << ",outcome,margin,rho";
  if (empirical) csv << ",delta_hat";
  csv << "\n";
  for (const Cell& cell : cells) {
    for (size_t a = 0; a < cell.values.size(); ++a) {
      csv << (a ? "," : "") << fmt_double(cell.values[a]);
    }
    csv << "," << cell.outcome << "," << cell.margin << "," << cell.rho_s;
    if (empirical) csv << "," << cell.delta_s;
    csv << "\n";
  }
  if (out_dir.empty()) {
    std::cout << csv.str();
  } else {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "sweep.csv", csv.str());
    std::cout << "wrote " << (fs::path(out_dir) / "sweep.csv").string() << "\n";
  }
  return 0;
}

int cmd_models() {
  std::cout << "built-in growth families (per-capita form f(r, y), f(r, r) = 0):\n"
            << "  lotka_volterra: f(r,y) = r - y\n"
            << "  gompertz: f(r,y) = ln(r/y)\n"
            << "  leslie_gower: f(r,y) = (1+r)/(1+y) - 1\n"
            << "  ricker: f(r,y) = exp(r-y) - 1\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permanence analysis of competitive Kolmogorov systems"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format = "json";
  unsigned long seed = 42;
  int jobs = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "path to the run configuration JSON");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for all sampling (default 42)");
    sub->add_option("--jobs", jobs, "worker pool size (default: logical cores)");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "decide permanence of a spec");
  add_common(analyze_cmd, true);
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "integrate trajectories to CSV");
  add_common(simulate_cmd, true);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "verdicts over a parameter grid");
  add_common(sweep_cmd, true);
  CLI::App* models_cmd = app.add_subcommand("models", "list built-in growth families");
  add_common(models_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(config_path, out_dir);
    if (simulate_cmd->parsed()) return cmd_simulate(config_path, out_dir, seed);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_dir, seed, jobs);
    if (models_cmd->parsed()) return cmd_models();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
