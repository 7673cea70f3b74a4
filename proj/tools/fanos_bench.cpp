// Copyright 2026 The FANoS Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fanos-bench: command-line runner for the benchmark protocol.
//
//   fanos-bench rosenbrock-sweep --out results/rosenbrock --jobs 8
//   fanos-bench quadratic-sweep  --out results/quadratic
//   fanos-bench ablations        --lr 1e-3 --out results/ablations
//   fanos-bench thermostat-diag  --out results/thermostat
//   fanos-bench stability-report --out results/stability

#include <CLI11.hpp>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fanos/harness.hpp"
#include "fanos/report.hpp"

namespace {

struct CommonOptions {
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  int seeds = 0;  // 0: use the subcommand default
  std::int64_t budget = 3000;
};

struct FanosOverrides {
  fanos::FanosConfig cfg;
  double clip = 1.0;
  bool no_clip = false;

  fanos::FanosConfig resolve() const {
    fanos::FanosConfig c = cfg;
    if (no_clip) {
      c.grad_clip.reset();
    } else {
      c.grad_clip = clip;
    }
    c.lr = 1e-3;  // placeholder; every trial sets its own
    c.validate();
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_seeds) {
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "Parallel trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_seeds) {
    cmd->add_option("--seeds", o.seeds, "Number of seeds (0..n-1)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--budget", o.budget, "Gradient evaluations per trial")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

void add_fanos(CLI::App* cmd, FanosOverrides& f) {
  auto* g = cmd;
  g->add_option("--beta", f.cfg.beta, "FANoS squared-gradient EMA rate")
      ->capture_default_str();
  g->add_option("--q", f.cfg.q, "FANoS thermostat inertia Q")->capture_default_str();
  g->add_option("--t-max", f.cfg.t_max, "FANoS initial target temperature")
      ->capture_default_str();
  g->add_option("--t-min", f.cfg.t_min, "FANoS final target temperature")
      ->capture_default_str();
  g->add_option("--tau", f.cfg.tau, "FANoS target schedule time constant")
      ->capture_default_str();
  g->add_option("--rho-t", f.cfg.rho_t, "FANoS temperature EMA rate")
      ->capture_default_str();
  g->add_option("--zeta-max", f.cfg.zeta_max, "FANoS friction clip bound")
      ->capture_default_str();
  g->add_option("--clip", f.clip, "FANoS global gradient-norm clip threshold")
      ->capture_default_str();
  g->add_flag("--no-clip", f.no_clip, "Disable FANoS gradient clipping");
}

std::vector<std::uint64_t> seed_list(int n) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
  return seeds;
}

fanos::OutputFormat parse_format(const std::string& f) {
  return f == "json" ? fanos::OutputFormat::kJson : fanos::OutputFormat::kCsv;
}

void report_files(const fanos::SweepFiles& files) {
  for (const auto& p : files.written) std::cout << "wrote " << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FANoS benchmark harness"};
  app.require_subcommand(1);

  // rosenbrock-sweep
  CommonOptions rosen_opts;
  FanosOverrides rosen_fanos;
  std::vector<double> rosen_lrs = fanos::SweepPlan::rosenbrock_default().lrs;
  std::vector<std::string> rosen_methods = fanos::rosenbrock_methods();
  bool rosen_traces = false;
  auto* rosen = app.add_subcommand(
      "rosenbrock-sweep",
      "Rosenbrock-100D learning-rate sweep (default: 7 methods x 6 lrs x 10 seeds)");
  add_common(rosen, rosen_opts, true);
  add_fanos(rosen, rosen_fanos);
  rosen->add_option("--lrs", rosen_lrs, "Learning rates")->capture_default_str();
  rosen->add_option("--methods", rosen_methods, "Methods")->capture_default_str();
  rosen->add_flag("--traces", rosen_traces, "Also write subsampled loss traces");

  // quadratic-sweep
  CommonOptions quad_opts;
  FanosOverrides quad_fanos;
  std::vector<double> quad_kappas = fanos::SweepPlan::quadratic_default().kappas;
  bool quad_traces = false;
  auto* quad = app.add_subcommand(
      "quadratic-sweep",
      "Ill-conditioned quadratic sweep (default: 5 methods at fixed lrs x 5 kappas x 3 seeds)");
  add_common(quad, quad_opts, true);
  add_fanos(quad, quad_fanos);
  quad->add_option("--kappas", quad_kappas, "Condition numbers")->capture_default_str();
  quad->add_flag("--traces", quad_traces, "Also write subsampled loss traces");

  // ablations
  CommonOptions abl_opts;
  FanosOverrides abl_fanos;
  double abl_lr = 1e-3;
  auto* abl = app.add_subcommand("ablations",
                                 "FANoS ablation variants on Rosenbrock-100D");
  add_common(abl, abl_opts, true);
  add_fanos(abl, abl_fanos);
  abl->add_option("--lr", abl_lr, "Learning rate shared by all variants")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // thermostat-diag
  CommonOptions diag_opts;
  FanosOverrides diag_fanos;
  fanos::DiagnosticsPlan diag_plan;
  auto* diag = app.add_subcommand(
      "thermostat-diag", "Per-step thermostat traces for a good and a bad lr");
  add_common(diag, diag_opts, false);
  add_fanos(diag, diag_fanos);
  diag->add_option("--lr-good", diag_plan.lr_good, "Well-tuned learning rate")
      ->capture_default_str();
  diag->add_option("--lr-bad", diag_plan.lr_bad, "Poorly tuned learning rate")
      ->capture_default_str();
  diag->add_option("--steps", diag_plan.steps, "Steps per regime")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  diag->add_option("--seed", diag_plan.seed, "Initial-point seed")->capture_default_str();

  // stability-report
  CommonOptions stab_opts;
  double stab_upper = 5.0;
  int stab_points = 100;
  auto* stab = app.add_subcommand(
      "stability-report",
      "Determinant, trace and spectral radius of one oscillator step");
  add_common(stab, stab_opts, false);
  stab->add_option("--h-omega-max", stab_upper, "Largest h*omega on the grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stab->add_option("--points", stab_points, "Grid points on (0, max]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rosen) {
      fanos::SweepPlan plan = fanos::SweepPlan::rosenbrock_default();
      plan.methods = rosen_methods;
      plan.lrs = rosen_lrs;
      if (rosen_opts.seeds > 0) plan.seeds = seed_list(rosen_opts.seeds);
      plan.budget = rosen_opts.budget;
      plan.jobs = rosen_opts.jobs;
      plan.fanos = rosen_fanos.resolve();
      const auto result = fanos::run_sweep(plan);
      std::vector<fanos::SweepSummary> best;
      for (const auto& [m, s] : result.best) best.push_back(s);
      std::cout << fanos::render_summary_table(best, false, true);
      report_files(fanos::write_sweep(result, plan.benchmark, rosen_opts.out,
                                      parse_format(rosen_opts.format),
                                      rosen_traces));
    } else if (*quad) {
      fanos::SweepPlan plan = fanos::SweepPlan::quadratic_default();
      plan.kappas = quad_kappas;
      if (quad_opts.seeds > 0) plan.seeds = seed_list(quad_opts.seeds);
      plan.budget = quad_opts.budget;
      plan.jobs = quad_opts.jobs;
      plan.fanos = quad_fanos.resolve();
      const auto result = fanos::run_sweep(plan);
      std::cout << fanos::render_summary_table(result.summaries, true, false);
      report_files(fanos::write_sweep(result, plan.benchmark, quad_opts.out,
                                      parse_format(quad_opts.format), quad_traces));
    } else if (*abl) {
      fanos::AblationPlan plan;
      plan.lr = abl_lr;
      plan.seeds = seed_list(abl_opts.seeds > 0 ? abl_opts.seeds : 10);
      plan.budget = abl_opts.budget;
      plan.jobs = abl_opts.jobs;
      plan.fanos = abl_fanos.resolve();
      const auto result = fanos::run_ablations(plan);
      std::cout << fanos::render_summary_table(result.summaries, false, false);
      report_files(fanos::write_ablations(result, abl_opts.out,
                                          parse_format(abl_opts.format)));
    } else if (*diag) {
      diag_plan.fanos = diag_fanos.resolve();
      const auto result = fanos::run_thermostat_diagnostics(diag_plan);
      report_files(fanos::write_thermostat_diagnostics(result, diag_opts.out));
    } else if (*stab) {
      const auto rows =
          fanos::run_stability_report(fanos::h_omega_grid(stab_upper, stab_points));
      report_files(fanos::write_stability_report(rows, stab_opts.out,
                                                 parse_format(stab_opts.format)));
    }
  } catch (const std::exception& e) {
    std::cerr << "fanos-bench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
