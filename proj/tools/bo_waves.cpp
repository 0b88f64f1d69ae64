// Command-line laboratory driver: one subcommand per experiment plus `all`.
// Writes <out>/manifest.json, <out>/<experiment>.csv and <out>/verdicts.json.
// Exit codes: 0 all required verdicts pass, 1 some verdict failed,
// 2 configuration error, 3 divergence during a solve.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "bo/experiments.hpp"
#include "bo/io.hpp"
#include "bo/kernels.hpp"

namespace {

using namespace bo;
namespace fs = std::filesystem;

struct CommonOpts {
  std::vector<double> lambdas;
  std::vector<int> n_list;
  double delta = 0.5;
  double s = 1.0;
  double omega = 1.0;
  std::vector<double> alphas;
  std::vector<double> t_grid;
  double L = 0.0;
  std::size_t N = 0;
  double dt = 0.0;
  std::string out;
  bool serial = false;
  bool dump_fields = false;
  Tolerances tol;
};

std::string default_out() {
  if (const char* env = std::getenv("BO_WAVES_OUT")) return env;
  return "bo_out";
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--lambda", o.lambdas, "frequency ladder (comma separated)")
      ->delimiter(',');
  cmd->add_option("--n", o.n_list, "dyadic ladder n (lambda = 2^n)")
      ->delimiter(',');
  cmd->add_option("--delta", o.delta, "scaling exponent in (0,1)");
  cmd->add_option("--s", o.s, "Sobolev index");
  cmd->add_option("--omega", o.omega, "modulation speed");
  cmd->add_option("--alpha", o.alphas, "phase offsets")->delimiter(',');
  cmd->add_option("--t-grid", o.t_grid, "sample times in [0,1]")
      ->delimiter(',');
  cmd->add_option("--L", o.L, "override box half-length");
  cmd->add_option("--N", o.N, "override grid size (power of two)");
  cmd->add_option("--dt", o.dt, "override solver time step");
  cmd->add_option("--out", o.out, "output directory")
      ->default_val(default_out());
  cmd->add_flag("--serial", o.serial, "run the serial reference kernels");
  cmd->add_flag("--dump-fields", o.dump_fields,
                "export initial-data fields next to the CSVs");
  cmd->add_option("--tol-hsnorm", o.tol.hsnorm_rel);
  cmd->add_option("--tol-hsnorm-alpha", o.tol.hsnorm_alpha_rel);
  cmd->add_option("--tol-commutator-slope", o.tol.commutator_slope_bound);
  cmd->add_option("--tol-commutator-alpha", o.tol.commutator_alpha_rel);
  cmd->add_option("--tol-residual-slope", o.tol.residual_slope_tol);
  cmd->add_option("--tol-f5", o.tol.f5_abs);
  cmd->add_option("--tol-ulow-slope", o.tol.ulow_slope_tol);
  cmd->add_option("--tol-ulow-const", o.tol.ulow_const_rel);
  cmd->add_option("--tol-tracking-cstab", o.tol.tracking_cstab_rel);
  cmd->add_option("--tol-separation", o.tol.separation_rel);
  cmd->add_option("--tol-sep-d0-slope", o.tol.sep_d0_slope_tol);
  cmd->add_option("--tol-uniform", o.tol.uniform_bound_rel);
  cmd->add_option("--tol-soliton", o.tol.soliton_l2);
}

std::string echo_tolerances(const Tolerances& t) {
  std::ostringstream os;
  os.precision(17);
  os << "hsnorm=" << t.hsnorm_rel << " hsnorm-alpha=" << t.hsnorm_alpha_rel
     << " commutator-slope=" << t.commutator_slope_bound
     << " commutator-alpha=" << t.commutator_alpha_rel
     << " residual-slope=" << t.residual_slope_tol << " f5=" << t.f5_abs
     << " ulow-slope=" << t.ulow_slope_tol
     << " ulow-const=" << t.ulow_const_rel
     << " tracking-cstab=" << t.tracking_cstab_rel
     << " separation=" << t.separation_rel
     << " sep-d0-slope=" << t.sep_d0_slope_tol
     << " uniform=" << t.uniform_bound_rel << " soliton=" << t.soliton_l2;
  return os.str();
}

template <typename T>
std::string echo_list(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

struct Runner {
  CommonOpts& o;
  BumpProfile bp = BumpProfile::make();
  SolveCache cache;
  std::vector<ExperimentResult> results;
  std::vector<io::ManifestEntry> entries;

  GridOverride grid_override() const { return {o.L, o.N}; }
  SolverOverride solver_override() const { return {o.dt}; }

  void run_one(const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    std::ostringstream cfgecho;
    cfgecho.precision(17);

    if (name == "hsnorm-limit") {
      HsNormConfig cfg;
      if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
      cfg.delta = o.delta;
      if (!o.alphas.empty()) cfg.alphas = o.alphas;
      cfg.grid = grid_override();
      cfgecho << "lambda=" << echo_list(cfg.lambdas) << "\ndelta=" << cfg.delta
              << "\nalpha=" << echo_list(cfg.alphas) << "\ns=0,1";
      res = exp_hsnorm_limit(bp, cfg, o.tol);
    } else if (name == "commutator") {
      CommutatorConfig cfg;
      if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
      cfg.delta = o.delta;
      if (!o.alphas.empty()) cfg.alphas = o.alphas;
      cfg.grid = grid_override();
      cfgecho << "lambda=" << echo_list(cfg.lambdas) << "\ndelta=" << cfg.delta
              << "\nalpha=" << echo_list(cfg.alphas);
      res = exp_commutator_decay(bp, cfg, o.tol);
    } else if (name == "residual" || name == "residual-ap1" ||
               name == "residual-ap2") {
      ResidualConfig cfg;
      cfg.refined = name == "residual-ap2";
      if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
      cfg.delta = o.delta;
      cfg.s = o.s;
      cfg.omega = o.omega;
      if (!o.t_grid.empty()) cfg.times = o.t_grid;
      cfg.grid = grid_override();
      cfg.solver = solver_override();
      cfgecho << "ansatz=" << (cfg.refined ? "ap2" : "ap1")
              << "\nlambda=" << echo_list(cfg.lambdas)
              << "\ndelta=" << cfg.delta << "\ns=" << cfg.s
              << "\nomega=" << cfg.omega << "\nt=" << echo_list(cfg.times);
      res = exp_residual_scaling(bp, cfg, o.tol);
    } else if (name == "ulow") {
      UlowConfig cfg;
      if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
      cfg.delta = o.delta;
      cfg.omega = o.omega;
      if (!o.t_grid.empty()) cfg.times = o.t_grid;
      cfg.grid = grid_override();
      cfg.solver = solver_override();
      cfgecho << "lambda=" << echo_list(cfg.lambdas) << "\ndelta=" << cfg.delta
              << "\nomega=" << cfg.omega << "\nt=" << echo_list(cfg.times);
      res = exp_ulow_bounds(bp, cfg, o.tol);
    } else if (name == "ansatz-error") {
      AnsatzErrorConfig cfg;
      if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
      cfg.delta = o.delta;
      cfg.s = o.s;
      cfg.omegas = {std::abs(o.omega), -std::abs(o.omega)};
      if (!o.t_grid.empty()) cfg.times = o.t_grid;
      cfg.grid = grid_override();
      cfg.solver = solver_override();
      cfgecho << "lambda=" << echo_list(cfg.lambdas) << "\ndelta=" << cfg.delta
              << "\ns=" << cfg.s << "\nomega=+-" << std::abs(o.omega)
              << "\nt=" << echo_list(cfg.times);
      res = exp_ansatz_error(bp, cfg, o.tol, cache);
    } else if (name == "separation") {
      SeparationConfig cfg;
      if (!o.n_list.empty()) {
        cfg.n_list = o.n_list;
      } else if (!o.lambdas.empty()) {
        cfg.n_list.clear();
        for (double lam : o.lambdas)
          cfg.n_list.push_back(
              static_cast<int>(std::llround(std::log2(lam))));
      }
      cfg.delta = o.delta;
      cfg.s = o.s;
      cfg.omega = std::abs(o.omega);
      if (!o.t_grid.empty()) cfg.times = o.t_grid;
      cfg.grid = grid_override();
      cfg.solver = solver_override();
      cfgecho << "n=" << echo_list(cfg.n_list) << "\ndelta=" << cfg.delta
              << "\ns=" << cfg.s << "\nomega=+-" << cfg.omega
              << "\nt=" << echo_list(cfg.times);
      res = exp_separation(bp, cfg, o.tol, cache);
      if (o.dump_fields && !cfg.n_list.empty()) {
        PacketSpec spec{std::pow(2.0, cfg.n_list.front()), cfg.delta, cfg.s,
                        cfg.omega, 0.0};
        GridPtr g = packet_grid(spec, cfg.grid);
        io::export_field(interaction_initial_data(bp, spec, g),
                         fs::path(o.out) / "separation_initial_plus.csv");
      }
    } else if (name == "soliton-check") {
      SolitonConfig cfg;
      if (o.L > 0.0) cfg.half_length = o.L;
      if (o.N > 0) cfg.size = o.N;
      cfg.solver = solver_override();
      cfgecho << "c=" << cfg.c << "\nL=" << cfg.half_length
              << "\nN=" << cfg.size;
      res = exp_soliton_check(cfg, o.tol);
      if (o.dump_fields) {
        GridPtr g = make_grid(cfg.half_length,
                              cfg.size ? cfg.size : (1u << 14));
        io::export_field(soliton_field(g, cfg.c, 0.0),
                         fs::path(o.out) / "soliton_initial.csv");
      }
    } else {
      throw ConfigError("unknown experiment: " + name);
    }

    io::write_records_csv(o.out, res);
    io::ManifestEntry e;
    e.experiment = res.name;
    e.resolved_config = cfgecho.str();
    e.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    entries.push_back(std::move(e));
    for (const auto& v : res.verdicts) {
      std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << res.name << "/"
                << v.name << ": measured=" << io::format17(v.measured)
                << " target=" << io::format17(v.target);
      if (v.tol > 0.0) std::cout << " tol=" << io::format17(v.tol);
      std::cout << " -- " << v.detail << "\n";
    }
    results.push_back(std::move(res));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bo-waves: a desk-scale Benjamin-Ono wave-interaction lab"};
  app.set_config("--config", "", "flat key=value configuration file");
  app.require_subcommand(1);

  CommonOpts opts;
  const std::vector<std::string> names = {
      "hsnorm-limit", "commutator",   "residual", "ulow",
      "ansatz-error", "separation",   "soliton-check", "all"};
  std::string ansatz = "ap1";
  for (const auto& n : names) {
    CLI::App* sub = app.add_subcommand(n);
    add_common(sub, opts);
    if (n == "residual")
      sub->add_option("--ansatz", ansatz, "ap1 or ap2")
          ->check(CLI::IsMember({"ap1", "ap2"}));
    sub->allow_config_extras(true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bo::kernels::set_backend(opts.serial ? bo::kernels::Backend::Serial
                                       : bo::kernels::Backend::OpenMP);

  Runner runner{opts};
  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "all") {
      // ansatz-error and separation share their solves: align the t grids
      if (opts.t_grid.empty()) opts.t_grid = {0.25, 0.5, 0.75, 1.0};
      runner.run_one("hsnorm-limit");
      runner.run_one("commutator");
      runner.run_one("residual-ap1");
      runner.run_one("residual-ap2");
      runner.run_one("ulow");
      runner.run_one("ansatz-error");
      runner.run_one("separation");
      runner.run_one("soliton-check");
    } else if (sub == "residual") {
      runner.run_one(ansatz == "ap2" ? "residual-ap2" : "residual-ap1");
    } else {
      runner.run_one(sub);
    }
    io::write_verdicts(opts.out, runner.results);
    io::write_manifest(opts.out, runner.results, runner.entries,
                       echo_tolerances(opts.tol));
  } catch (const bo::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    io::write_verdicts(opts.out, runner.results);  // partial results
    io::write_manifest(opts.out, runner.results, runner.entries,
                       echo_tolerances(opts.tol));
    return 3;
  } catch (const bo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  return io::all_required_pass(runner.results) ? 0 : 1;
}
