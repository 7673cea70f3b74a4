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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fanos/objectives.hpp"
#include "fanos/optim.hpp"
#include "fanos/stats.hpp"

namespace fanos {

enum class Algorithm { kSgdMomentum, kRmsprop, kAdamW, kLbfgs, kFanos };

/// Baseline hyperparameters; defaults follow torch.optim.
struct BaselineParams {
  double momentum = 0.9;
  double rms_alpha = 0.99;
  double rms_eps = 1e-8;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double weight_decay = 0.01;
  int lbfgs_history = 100;
};

/// A named optimizer configuration. The learning rate is supplied per trial.
struct MethodSpec {
  std::string name;
  Algorithm algorithm = Algorithm::kFanos;
  std::optional<double> grad_clip;  // global-norm clip applied by the harness
  BaselineParams baseline;
  FanosConfig fanos;  // lr is overwritten per trial
};

/// Registered names: "SGD+Mom", "RMSProp", "RMSProp+clip", "AdamW",
/// "AdamW+clip", "LBFGS", "FANoS-RMS". Throws std::invalid_argument for
/// anything else.
MethodSpec method_by_name(const std::string& name,
                          const FanosConfig& fanos_base = {},
                          const BaselineParams& baseline = {});

/// The seven methods of the Rosenbrock sweep, in table order.
std::vector<std::string> rosenbrock_methods();
/// The five methods of the quadratic sweep with their fixed learning rates.
std::vector<std::pair<std::string, double>> quadratic_methods();

enum class Benchmark { kRosenbrock, kQuadratic };

struct ProblemSpec {
  Benchmark benchmark = Benchmark::kRosenbrock;
  std::size_t dim = 100;
  double kappa = 1.0;  // quadratic only
};

std::string benchmark_name(Benchmark b);

/// Initial point shared by every method at a given seed: entries uniform in
/// [-2, 2) from the torch-compatible stream of `seed`.
Vector initial_point(std::size_t dim, std::uint64_t seed);

/// Objective instance for one trial. Quadratics regenerate their eigenbasis
/// from (seed) so each seed sees its own matrix.
std::unique_ptr<Objective> make_objective(const ProblemSpec& problem,
                                          std::uint64_t seed);

struct TrialOptions {
  std::int64_t budget = 3000;
  bool record_thermostat = false;
  std::size_t max_trace_points = 500;
  double divergence_threshold = kDefaultDivergenceThreshold;
};

/// Runs `method` from x0 for exactly `budget` gradient evaluations (L-BFGS:
/// at most `budget`, probes included). The final loss is the objective value
/// at the last evaluated iterate. A non-finite or above-threshold loss, or a
/// non-finite gradient, ends the trial early as divergent.
TrialRecord run_trial(const MethodSpec& method, Objective& objective,
                      std::span<const double> x0, double lr, std::uint64_t seed,
                      const TrialOptions& opts);

/// Convenience overload that builds the objective and initial point.
TrialRecord run_trial(const MethodSpec& method, const ProblemSpec& problem,
                      double lr, std::uint64_t seed, const TrialOptions& opts);

/// Keeps at most `max_points` evenly spaced entries, always including the
/// first and last.
std::vector<std::pair<std::int64_t, double>> subsample_trace(
    const std::vector<std::pair<std::int64_t, double>>& trace,
    std::size_t max_points);

struct SweepPlan {
  Benchmark benchmark = Benchmark::kRosenbrock;
  std::size_t dim = 100;
  std::vector<std::string> methods;
  std::vector<double> lrs;  // swept for every method when per_method_lr is empty
  std::map<std::string, double> per_method_lr;
  std::vector<std::uint64_t> seeds;
  std::vector<double> kappas;  // quadratic only
  std::int64_t budget = 3000;
  FanosConfig fanos;
  BaselineParams baseline;
  int jobs = 1;

  /// Seven methods, six learning rates, ten seeds, 3000 evaluations.
  static SweepPlan rosenbrock_default();
  /// Five methods at fixed learning rates, kappa in 1e2..1e6, three seeds.
  static SweepPlan quadratic_default();

  void validate() const;
};

struct SweepResult {
  std::vector<TrialRecord> trials;  // plan order: kappa, method, lr, seed
  std::vector<SweepSummary> summaries;
  std::map<std::string, SweepSummary> best;  // per method (Rosenbrock)
};

SweepResult run_sweep(const SweepPlan& plan);

/// The eight ablation variants, each a delta on `base`.
std::vector<MethodSpec> ablation_variants(const FanosConfig& base = {});

struct AblationPlan {
  double lr = 1e-3;
  std::vector<std::uint64_t> seeds;
  std::int64_t budget = 3000;
  FanosConfig fanos;
  int jobs = 1;
};

SweepResult run_ablations(const AblationPlan& plan);

struct DiagnosticsPlan {
  double lr_good = 3e-2;
  double lr_bad = 1e-3;
  std::int64_t steps = 3000;
  std::uint64_t seed = 0;
  FanosConfig fanos;
};

struct DiagnosticsResult {
  TrialRecord good;
  TrialRecord bad;
};

DiagnosticsResult run_thermostat_diagnostics(const DiagnosticsPlan& plan);

struct StabilityRow {
  double h_omega = 0.0;
  Integrator integrator = Integrator::kSemiImplicit;
  StabilitySpectrum spectrum;
};

/// Evenly spaced grid (0, upper] with `points` entries.
std::vector<double> h_omega_grid(double upper, int points);

/// One row per (h*omega, integrator), with omega = 1.
std::vector<StabilityRow> run_stability_report(const std::vector<double>& grid);

/// Runs tasks 0..n-1 on `jobs` threads; each task writes only its own slot.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& task);

}  // namespace fanos
