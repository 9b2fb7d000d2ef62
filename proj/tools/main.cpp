// main.cpp - command line interface: sweeps, maximum traces, oracle self-check
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "xychain/model.hpp"
#include "xychain/oracle.hpp"
#include "xychain/sweep.hpp"
#include "xychain/version.hpp"

namespace {

using nlohmann::json;
using namespace xychain;

struct CliValues {
  std::string config_path;
  int n_sites = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  double q = 0.0;
  double a = 0.0;
  double kt = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  int h_steps = 0;
  std::vector<double> h_list;
  int r_max = 0;
  std::string out;
  bool emit_plot_script = false;
  std::string sigma_convention;
  std::string boundary;
  int threads = 0;
  // maxtrace / oracle-check extras
  std::vector<double> a_values;
  std::vector<double> kt_values;
  std::string trace_regime;
  int instances = 60;
};

struct CommonOpts {
  CLI::Option* config = nullptr;
  CLI::Option* n_sites = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* q = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* kt = nullptr;
  CLI::Option* h_min = nullptr;
  CLI::Option* h_max = nullptr;
  CLI::Option* h_steps = nullptr;
  CLI::Option* h_list = nullptr;
  CLI::Option* r_max = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* emit_plot = nullptr;
  CLI::Option* sigma = nullptr;
  CLI::Option* boundary = nullptr;
  CLI::Option* threads = nullptr;
};

CommonOpts add_common_options(CLI::App* cmd, CliValues& v) {
  CommonOpts o;
  o.config = cmd->add_option("--config", v.config_path, "JSON configuration file");
  o.n_sites = cmd->add_option("--n-sites", v.n_sites, "chain length N");
  o.samples = cmd->add_option("--samples", v.samples, "number of disorder samples");
  o.seed = cmd->add_option("--seed", v.seed, "master seed");
  o.q = cmd->add_option("--q", v.q, "field distribution shape q in [1,3)");
  o.a = cmd->add_option("--a", v.a, "field distribution width a >= 0");
  o.kt = cmd->add_option("--kt", v.kt, "temperature kT > 0");
  o.h_min = cmd->add_option("--h-min", v.h_min, "first h grid point");
  o.h_max = cmd->add_option("--h-max", v.h_max, "last h grid point");
  o.h_steps = cmd->add_option("--h-steps", v.h_steps, "number of h grid points");
  o.h_list = cmd->add_option("--h-list", v.h_list, "explicit h grid (overrides min/max/steps)");
  o.r_max = cmd->add_option("--r-max", v.r_max, "largest pair separation");
  o.out = cmd->add_option("--out", v.out, "output CSV path");
  o.emit_plot = cmd->add_flag("--emit-plot-script", v.emit_plot_script,
                              "write a plotting script next to the CSV");
  o.sigma = cmd->add_option("--sigma-convention", v.sigma_convention,
                            "q=1 width convention: literal|prose");
  o.boundary = cmd->add_option("--boundary", v.boundary, "periodic|open");
  o.threads = cmd->add_option("--threads", v.threads, "worker threads for disorder sampling");
  return o;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

void apply_config_file(const std::string& path, Config& cfg, std::vector<double>& h_list,
                       double& h_min, double& h_max, int& h_steps) {
  const json j = load_json(path);
  if (j.contains("chain")) {
    const json& c = j["chain"];
    if (c.contains("n_sites")) cfg.chain.n_sites = c["n_sites"].get<int>();
    if (c.contains("coupling")) cfg.chain.coupling = c["coupling"].get<double>();
    if (c.contains("temperature")) cfg.chain.temperature = c["temperature"].get<double>();
    if (c.contains("boundary"))
      cfg.chain.boundary = boundary_from_string(c["boundary"].get<std::string>());
  }
  if (j.contains("disorder")) {
    const json& d = j["disorder"];
    if (d.contains("q")) cfg.disorder.q = d["q"].get<double>();
    if (d.contains("a")) cfg.disorder.scale_a = d["a"].get<double>();
    if (d.contains("n_samples")) cfg.disorder.n_samples = d["n_samples"].get<long>();
    if (d.contains("master_seed")) cfg.disorder.master_seed = d["master_seed"].get<std::uint64_t>();
    if (d.contains("sigma_convention"))
      cfg.disorder.sigma_convention =
          sigma_convention_from_string(d["sigma_convention"].get<std::string>());
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (s.contains("r_max")) cfg.sweep.r_max = s["r_max"].get<int>();
    if (s.contains("h_list")) h_list = s["h_list"].get<std::vector<double>>();
    if (s.contains("h_min")) h_min = s["h_min"].get<double>();
    if (s.contains("h_max")) h_max = s["h_max"].get<double>();
    if (s.contains("h_steps")) h_steps = s["h_steps"].get<int>();
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("h grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = lo + (hi - lo) * k / (n - 1);
  return grid;
}

// Defaults -> config file -> explicit CLI flags, in increasing precedence.
Config resolve_config(const CliValues& v, const CommonOpts& o, Regime regime) {
  Config cfg;
  cfg.chain.n_sites = 100;
  cfg.disorder.n_samples = 1000;
  cfg.sweep.regime = regime;

  double h_min = 0.0, h_max = 1.5;
  int h_steps = 31;
  std::vector<double> h_list;
  if (o.config->count()) apply_config_file(v.config_path, cfg, h_list, h_min, h_max, h_steps);

  if (o.n_sites->count()) cfg.chain.n_sites = v.n_sites;
  if (o.samples->count()) cfg.disorder.n_samples = v.samples;
  if (o.seed->count()) cfg.disorder.master_seed = v.seed;
  if (o.q->count()) cfg.disorder.q = v.q;
  if (o.a->count()) cfg.disorder.scale_a = v.a;
  if (o.kt->count()) cfg.chain.temperature = v.kt;
  if (o.sigma->count())
    cfg.disorder.sigma_convention = sigma_convention_from_string(v.sigma_convention);
  if (o.boundary->count()) cfg.chain.boundary = boundary_from_string(v.boundary);
  if (o.r_max->count()) cfg.sweep.r_max = v.r_max;
  if (o.h_list->count()) h_list = v.h_list;
  if (o.h_min->count()) h_min = v.h_min;
  if (o.h_max->count()) h_max = v.h_max;
  if (o.h_steps->count()) h_steps = v.h_steps;

  cfg.sweep.h_grid = h_list.empty() ? linspace(h_min, h_max, h_steps) : h_list;
  if (regime != Regime::uniform_finite_t) cfg.chain.temperature = 0.0;
  validate(cfg);
  return cfg;
}

int resolve_threads(const CliValues& v, const CommonOpts& o) {
  if (o.threads->count()) return std::max(1, v.threads);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void report(const SweepResult& result, const std::string& out, bool plot) {
  emit(result, out, plot);
  std::cout << "wrote " << result.rows.size() << " rows to " << out;
  if (plot) std::cout << " (+ plot script)";
  std::cout << "\n";
  if (result.parity_fallbacks > 0)
    std::cerr << "note: " << result.parity_fallbacks
              << " parity-resolution fallbacks (degenerate fillings)\n";
}

int run_sweep_command(const CliValues& v, const CommonOpts& o, Regime regime) {
  const Config cfg = resolve_config(v, o, regime);
  SweepResult result;
  switch (regime) {
    case Regime::uniform_zero_t: result = run_uniform_zero_t(cfg.chain, cfg.sweep); break;
    case Regime::uniform_finite_t: result = run_uniform_finite_t(cfg.chain, cfg.sweep); break;
    case Regime::random_zero_t:
      result = run_random_zero_t(cfg.chain, cfg.disorder, cfg.sweep, resolve_threads(v, o));
      break;
  }
  std::string out = v.out;
  if (out.empty()) out = std::string("xychain_") + to_string(regime) + ".csv";
  report(result, out, v.emit_plot_script);
  return 0;
}

int run_maxtrace(const CliValues& v, const CommonOpts& o) {
  const bool thermal_family = (v.trace_regime == "thermal");
  if (!thermal_family && v.trace_regime != "random")
    throw std::invalid_argument("maxtrace --regime must be thermal or random");
  const std::vector<double>& controls = thermal_family ? v.kt_values : v.a_values;
  if (controls.empty())
    throw std::invalid_argument(thermal_family ? "maxtrace needs at least one --kt"
                                               : "maxtrace needs at least one --a");

  std::vector<SweepResult> family;
  for (double control : controls) {
    CliValues member = v;
    CommonOpts opts = o;
    if (thermal_family) {
      if (control == 0.0) {
        Config cfg = resolve_config(member, opts, Regime::uniform_zero_t);
        family.push_back(run_uniform_zero_t(cfg.chain, cfg.sweep));
        continue;
      }
      Config cfg = resolve_config(member, opts, Regime::uniform_finite_t);
      cfg.chain.temperature = control;
      validate(cfg);
      family.push_back(run_uniform_finite_t(cfg.chain, cfg.sweep));
    } else {
      Config cfg = resolve_config(member, opts, Regime::random_zero_t);
      cfg.disorder.scale_a = control;
      validate(cfg);
      family.push_back(
          run_random_zero_t(cfg.chain, cfg.disorder, cfg.sweep, resolve_threads(v, o)));
    }
  }

  const auto table = max_concurrence_trace(family);
  std::ostringstream body;
  body << "control,r,max_concurrence,argmax_h\n";
  for (const MaxTraceRow& row : table)
    body << row.control << ',' << row.r << ',' << row.max_concurrence << ',' << row.argmax_h
         << '\n';
  if (v.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(v.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + v.out);
    f << body.str();
    std::cout << "wrote " << table.size() << " rows to " << v.out << "\n";
  }
  return 0;
}

int run_oracle_check(const CliValues& v) {
  const int sizes[] = {4, 6, 8, 10};
  const double temperatures[] = {0.0, 0.1, 0.5};
  const Boundary boundaries[] = {Boundary::periodic, Boundary::open};
  const double qs[] = {1.0, 2.0};
  const double as[] = {0.0, 0.3, 1.0};

  std::mt19937_64 rng(v.seed ^ 0x9e3779b97f4a7c15ULL);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };

  double worst = 0.0;
  int done = 0, resampled = 0;
  while (done < v.instances) {
    ChainSpec chain;
    chain.n_sites = sizes[rng() % 4];
    chain.boundary = boundaries[rng() % 2];
    chain.temperature = temperatures[rng() % 3];
    chain.uniform_field = uniform(0.0, 1.5);

    DisorderSpec disorder;
    disorder.q = qs[rng() % 2];
    disorder.scale_a = as[rng() % 3];
    disorder.n_samples = 1;
    disorder.master_seed = rng();

    const FieldSample field = sample_field(disorder, chain.n_sites, 0);
    const int r_cap = chain.n_sites / 2 - 1;
    try {
      const double dev = max_pipeline_deviation(chain, field, r_cap);
      worst = std::max(worst, dev);
      ++done;
    } catch (const std::runtime_error&) {
      ++resampled;  // degenerate / ill-conditioned instance
      if (resampled > 10 * v.instances)
        throw std::runtime_error("oracle-check: excessive resampling, check instance generator");
    }
  }
  std::cout << "oracle-check: " << done << " instances, max |pipeline - exact| = " << worst
            << " (" << resampled << " resampled)\n";
  if (worst >= 1e-9) {
    std::cerr << "oracle-check FAILED: deviation above 1e-9\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise concurrence of the isotropic spin-1/2 XY chain in uniform, thermal "
               "and random transverse fields"};
  app.set_version_flag("--version", xychain::kVersionTag);
  app.require_subcommand(1);

  CliValues values;

  CLI::App* uniform = app.add_subcommand("uniform", "uniform field, T = 0 (closed forms)");
  CommonOpts uniform_opts = add_common_options(uniform, values);

  CLI::App* thermal = app.add_subcommand("thermal", "uniform field at temperature --kt");
  CommonOpts thermal_opts = add_common_options(thermal, values);

  CLI::App* random_cmd = app.add_subcommand("random", "random field, T = 0, disorder averaged");
  CommonOpts random_opts = add_common_options(random_cmd, values);

  CLI::App* maxtrace = app.add_subcommand(
      "maxtrace", "max over h of C(r) as a function of a control grid (repeat --a or --kt)");
  CommonOpts maxtrace_opts = add_common_options(maxtrace, values);
  maxtrace->add_option("--regime", values.trace_regime, "family type: thermal|random")
      ->required();
  // control grids reuse the --a/--kt names as repeatable options
  maxtrace->get_option("--a")->expected(-1)->each([&values](const std::string& s) {
    values.a_values.push_back(std::stod(s));
  });
  maxtrace->get_option("--kt")->expected(-1)->each([&values](const std::string& s) {
    values.kt_values.push_back(std::stod(s));
  });

  CLI::App* oracle_check = app.add_subcommand("oracle-check",
                                              "compare the free-fermion pipeline against exact "
                                              "diagonalization on random small chains");
  oracle_check->group("");  // hidden
  oracle_check->add_option("--instances", values.instances, "number of random instances");
  oracle_check->add_option("--seed", values.seed, "instance generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (uniform->parsed()) return run_sweep_command(values, uniform_opts, Regime::uniform_zero_t);
    if (thermal->parsed()) return run_sweep_command(values, thermal_opts, Regime::uniform_finite_t);
    if (random_cmd->parsed())
      return run_sweep_command(values, random_opts, Regime::random_zero_t);
    if (maxtrace->parsed()) return run_maxtrace(values, maxtrace_opts);
    if (oracle_check->parsed()) return run_oracle_check(values);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
