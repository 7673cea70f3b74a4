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

#include "fanos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fanos/lbfgs.hpp"
#include "fanos/random.hpp"

namespace fanos {

MethodSpec method_by_name(const std::string& name,
                          const FanosConfig& fanos_base,
                          const BaselineParams& baseline) {
  MethodSpec m;
  m.name = name;
  m.baseline = baseline;
  m.fanos = fanos_base;
  if (name == "SGD+Mom") {
    m.algorithm = Algorithm::kSgdMomentum;
  } else if (name == "RMSProp") {
    m.algorithm = Algorithm::kRmsprop;
  } else if (name == "RMSProp+clip") {
    m.algorithm = Algorithm::kRmsprop;
    m.grad_clip = 1.0;
  } else if (name == "AdamW") {
    m.algorithm = Algorithm::kAdamW;
  } else if (name == "AdamW+clip") {
    m.algorithm = Algorithm::kAdamW;
    m.grad_clip = 1.0;
  } else if (name == "LBFGS") {
    m.algorithm = Algorithm::kLbfgs;
  } else if (name == "FANoS-RMS") {
    // Clipping for FANoS lives inside its own step (FanosConfig::grad_clip).
    m.algorithm = Algorithm::kFanos;
    m.fanos.mass_mode = MassMode::kRms;
  } else {
    throw std::invalid_argument("unknown method: " + name);
  }
  return m;
}

std::vector<std::string> rosenbrock_methods() {
  return {"AdamW",   "AdamW+clip",   "FANoS-RMS", "LBFGS",
          "RMSProp", "RMSProp+clip", "SGD+Mom"};
}

std::vector<std::pair<std::string, double>> quadratic_methods() {
  return {{"AdamW", 1e-2},
          {"FANoS-RMS", 1e-3},
          {"LBFGS", 1e-1},
          {"RMSProp", 1e-3},
          {"SGD+Mom", 1e-3}};
}

std::string benchmark_name(Benchmark b) {
  return b == Benchmark::kRosenbrock ? "rosenbrock100" : "quadratic";
}

Vector initial_point(std::size_t dim, std::uint64_t seed) {
  return uniform_initial_point(dim, static_cast<std::uint32_t>(seed), -2.0f,
                               2.0f);
}

std::unique_ptr<Objective> make_objective(const ProblemSpec& problem,
                                          std::uint64_t seed) {
  if (problem.benchmark == Benchmark::kRosenbrock) {
    return std::make_unique<Rosenbrock>(problem.dim);
  }
  auto q = std::make_shared<const QuadraticProblem>(
      make_quadratic(problem.kappa, problem.dim, seed));
  return std::make_unique<QuadraticObjective>(std::move(q));
}

std::vector<std::pair<std::int64_t, double>> subsample_trace(
    const std::vector<std::pair<std::int64_t, double>>& trace,
    std::size_t max_points) {
  if (trace.size() <= max_points || max_points < 2) {
    if (max_points == 1 && !trace.empty()) return {trace.back()};
    return trace;
  }
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(max_points);
  const std::size_t last = trace.size() - 1;
  for (std::size_t j = 0; j < max_points; ++j) {
    // Integer arithmetic keeps the picks platform independent.
    const std::size_t idx = (j * last + (max_points - 1) / 2) / (max_points - 1);
    if (out.empty() || trace[idx].first != out.back().first) {
      out.push_back(trace[idx]);
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

// Advances one first-order optimizer by one step.
class FirstOrderRunner {
 public:
  FirstOrderRunner(const MethodSpec& method, std::span<const double> x0,
                   double lr)
      : method_(method), lr_(lr) {
    Vector theta(x0.begin(), x0.end());
    switch (method.algorithm) {
      case Algorithm::kSgdMomentum:
        baseline_ = make_sgd_momentum_state(std::move(theta));
        break;
      case Algorithm::kRmsprop:
        baseline_ = make_rmsprop_state(std::move(theta));
        break;
      case Algorithm::kAdamW:
        baseline_ = make_adamw_state(std::move(theta));
        break;
      case Algorithm::kFanos:
        fanos_cfg_ = method.fanos;
        fanos_cfg_.lr = lr;
        fanos_cfg_.validate();
        fanos_ = make_fanos_state(std::move(theta), fanos_cfg_);
        break;
      case Algorithm::kLbfgs:
        throw std::logic_error("L-BFGS is not a first-order step method");
    }
  }

  const Vector& theta() const {
    if (method_.algorithm == Algorithm::kFanos) return fanos_.theta;
    return std::visit([](const auto& s) -> const Vector& { return s.theta; },
                      baseline_);
  }

  const FanosState& fanos_state() const { return fanos_; }

  void step(Vector& g) {
    if (method_.grad_clip) {
      if (!all_finite(g)) throw NonFiniteGradient();
      clip_gradient_inplace(g, *method_.grad_clip);
    }
    const BaselineParams& b = method_.baseline;
    switch (method_.algorithm) {
      case Algorithm::kSgdMomentum:
        baseline_ = sgd_momentum_step(
            std::get<SgdMomentumState>(std::move(baseline_)), g, lr_, b.momentum);
        break;
      case Algorithm::kRmsprop:
        baseline_ = rmsprop_step(std::get<RmspropState>(std::move(baseline_)), g,
                                 lr_, b.rms_alpha, b.rms_eps);
        break;
      case Algorithm::kAdamW:
        baseline_ = adamw_step(std::get<AdamwState>(std::move(baseline_)), g, lr_,
                               b.adam_beta1, b.adam_beta2, b.adam_eps,
                               b.weight_decay);
        break;
      case Algorithm::kFanos:
        fanos_ = fanos_step(std::move(fanos_), g, fanos_cfg_);
        break;
      case Algorithm::kLbfgs:
        break;
    }
  }

 private:
  const MethodSpec& method_;
  double lr_;
  BaselineState baseline_;
  FanosConfig fanos_cfg_;
  FanosState fanos_;
};

void finish_record(TrialRecord& rec,
                   std::vector<std::pair<std::int64_t, double>>& trace,
                   std::optional<double> last_loss, bool diverged,
                   const TrialOptions& opts) {
  diverged = diverged || !last_loss ||
             trace_diverged(trace, opts.divergence_threshold);
  rec.final_loss = diverged ? std::nullopt : last_loss;
  rec.loss_trace = subsample_trace(trace, opts.max_trace_points);
}

}  // namespace

TrialRecord run_trial(const MethodSpec& method, Objective& objective,
                      std::span<const double> x0, double lr, std::uint64_t seed,
                      const TrialOptions& opts) {
  if (opts.budget < 1) throw std::invalid_argument("run_trial: budget must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("run_trial: lr must be positive");
  require_same_size(objective.dimension(), x0.size(), "run_trial");

  const auto start = Clock::now();
  TrialRecord rec;
  rec.method = method.name;
  rec.lr = lr;
  rec.seed = seed;
  const std::int64_t evals_before = objective.eval_count();

  std::vector<std::pair<std::int64_t, double>> trace;
  std::optional<double> last_loss;
  bool diverged = false;

  if (method.algorithm == Algorithm::kLbfgs) {
    LbfgsConfig cfg;
    cfg.history_size = method.baseline.lbfgs_history;
    cfg.lr = lr;
    cfg.budget = opts.budget;
    const LbfgsResult res = lbfgs_minimize(objective, x0, cfg);
    for (const auto& p : res.trace) trace.emplace_back(p.evals, p.value);
    last_loss = res.final_value;
    diverged = res.diverged;
  } else {
    FirstOrderRunner runner(method, x0, lr);
    Vector g(x0.size(), 0.0);
    for (std::int64_t step = 0; step < opts.budget; ++step) {
      const double f = objective.evaluate(runner.theta(), g);
      trace.emplace_back(step, f);
      last_loss = f;
      if (is_divergent_loss(f, opts.divergence_threshold)) {
        diverged = true;
        break;
      }
      try {
        runner.step(g);
      } catch (const NonFiniteGradient&) {
        diverged = true;
        break;
      }
      if (opts.record_thermostat && method.algorithm == Algorithm::kFanos) {
        const FanosState& st = runner.fanos_state();
        rec.thermostat_trace.push_back(
            {step, st.zeta, st.last_t_inst, st.t_ema, st.last_t_target});
      }
    }
  }

  rec.eval_count = objective.eval_count() - evals_before;
  finish_record(rec, trace, last_loss, diverged, opts);
  rec.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return rec;
}

TrialRecord run_trial(const MethodSpec& method, const ProblemSpec& problem,
                      double lr, std::uint64_t seed, const TrialOptions& opts) {
  auto objective = make_objective(problem, seed);
  const Vector x0 = initial_point(problem.dim, seed);
  TrialRecord rec = run_trial(method, *objective, x0, lr, seed, opts);
  if (problem.benchmark == Benchmark::kQuadratic) rec.kappa = problem.kappa;
  return rec;
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SweepPlan SweepPlan::rosenbrock_default() {
  SweepPlan p;
  p.benchmark = Benchmark::kRosenbrock;
  p.methods = rosenbrock_methods();
  p.lrs = {1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  for (std::uint64_t s = 0; s < 10; ++s) p.seeds.push_back(s);
  return p;
}

SweepPlan SweepPlan::quadratic_default() {
  SweepPlan p;
  p.benchmark = Benchmark::kQuadratic;
  for (const auto& [name, lr] : quadratic_methods()) {
    p.methods.push_back(name);
    p.per_method_lr[name] = lr;
  }
  p.kappas = {1e2, 1e3, 1e4, 1e5, 1e6};
  p.seeds = {0, 1, 2};
  return p;
}

void SweepPlan::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("sweep plan: " + what);
  };
  if (methods.empty()) fail("no methods");
  if (seeds.empty()) fail("no seeds");
  if (budget < 1) fail("budget must be >= 1");
  if (jobs < 1) fail("jobs must be >= 1");
  if (dim < 2) fail("dimension must be >= 2");
  for (const auto& m : methods) {
    method_by_name(m);
    if (per_method_lr.empty()) continue;
    if (!per_method_lr.contains(m)) fail("no learning rate for method " + m);
  }
  if (per_method_lr.empty() && lrs.empty()) fail("no learning rates");
  for (double lr : lrs) {
    if (!(lr > 0.0)) fail("learning rates must be positive");
  }
  for (const auto& [m, lr] : per_method_lr) {
    if (!(lr > 0.0)) fail("learning rates must be positive");
  }
  if (benchmark == Benchmark::kQuadratic) {
    if (kappas.empty()) fail("quadratic sweep needs at least one kappa");
    for (double k : kappas) {
      if (!(k >= 1.0)) fail("kappa must be >= 1");
    }
  }
  FanosConfig probe = fanos;
  probe.validate();
}

namespace {

struct TrialTask {
  const MethodSpec* method;
  ProblemSpec problem;
  double lr;
  std::uint64_t seed;
};

SweepResult execute(const std::vector<TrialTask>& tasks, std::int64_t budget,
                    int jobs) {
  SweepResult out;
  out.trials.resize(tasks.size());
  TrialOptions opts;
  opts.budget = budget;
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const TrialTask& t = tasks[i];
    out.trials[i] = run_trial(*t.method, t.problem, t.lr, t.seed, opts);
  });
  out.summaries = summarize_all(out.trials);
  out.best = best_lr(out.summaries);
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
  plan.validate();
  std::vector<MethodSpec> specs;
  for (const auto& m : plan.methods) {
    specs.push_back(method_by_name(m, plan.fanos, plan.baseline));
  }
  std::vector<double> kappas = plan.kappas;
  if (plan.benchmark == Benchmark::kRosenbrock) kappas = {1.0};

  std::vector<TrialTask> tasks;
  for (double kappa : kappas) {
    for (const auto& spec : specs) {
      std::vector<double> lrs = plan.lrs;
      if (!plan.per_method_lr.empty()) lrs = {plan.per_method_lr.at(spec.name)};
      for (double lr : lrs) {
        for (std::uint64_t seed : plan.seeds) {
          tasks.push_back({&spec, {plan.benchmark, plan.dim, kappa}, lr, seed});
        }
      }
    }
  }
  return execute(tasks, plan.budget, plan.jobs);
}

std::vector<MethodSpec> ablation_variants(const FanosConfig& base) {
  auto variant = [&](std::string name, auto&& edit) {
    MethodSpec m;
    m.name = std::move(name);
    m.algorithm = Algorithm::kFanos;
    m.fanos = base;
    edit(m.fanos);
    return m;
  };
  return {
      variant("FANoS-Baseline", [](FanosConfig&) {}),
      variant("A2-FixedFriction-0", [](FanosConfig& c) { c.fixed_friction = 0.0; }),
      variant("A2-FixedFriction-1", [](FanosConfig& c) { c.fixed_friction = 1.0; }),
      variant("A2-FixedFriction-5", [](FanosConfig& c) { c.fixed_friction = 5.0; }),
      variant("explicit_euler",
              [](FanosConfig& c) { c.integrator = Integrator::kExplicitEuler; }),
      variant("identity_mass",
              [](FanosConfig& c) { c.mass_mode = MassMode::kIdentity; }),
      variant("no_T_schedule",
              [](FanosConfig& c) { c.schedule_mode = ScheduleMode::kConstant; }),
      variant("no_grad_clip", [](FanosConfig& c) { c.grad_clip.reset(); }),
  };
}

SweepResult run_ablations(const AblationPlan& plan) {
  if (plan.seeds.empty()) throw std::invalid_argument("ablations: no seeds");
  if (!(plan.lr > 0.0)) throw std::invalid_argument("ablations: lr must be positive");
  if (plan.budget < 1) throw std::invalid_argument("ablations: budget must be >= 1");
  const std::vector<MethodSpec> variants = ablation_variants(plan.fanos);
  std::vector<TrialTask> tasks;
  for (const auto& v : variants) {
    for (std::uint64_t seed : plan.seeds) {
      tasks.push_back({&v, {Benchmark::kRosenbrock, 100, 1.0}, plan.lr, seed});
    }
  }
  return execute(tasks, plan.budget, plan.jobs);
}

DiagnosticsResult run_thermostat_diagnostics(const DiagnosticsPlan& plan) {
  if (plan.steps < 1) throw std::invalid_argument("diagnostics: steps must be >= 1");
  const MethodSpec method = method_by_name("FANoS-RMS", plan.fanos);
  TrialOptions opts;
  opts.budget = plan.steps;
  opts.record_thermostat = true;
  const ProblemSpec problem{Benchmark::kRosenbrock, 100, 1.0};
  DiagnosticsResult out;
  out.good = run_trial(method, problem, plan.lr_good, plan.seed, opts);
  out.bad = run_trial(method, problem, plan.lr_bad, plan.seed, opts);
  return out;
}

std::vector<double> h_omega_grid(double upper, int points) {
  if (!(upper > 0.0) || points < 1) {
    throw std::invalid_argument("h_omega_grid: need upper > 0 and points >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = upper * (i + 1) / points;
  }
  return grid;
}

std::vector<StabilityRow> run_stability_report(const std::vector<double>& grid) {
  std::vector<StabilityRow> rows;
  rows.reserve(grid.size() * 2);
  for (double h_omega : grid) {
    for (Integrator integ : {Integrator::kSemiImplicit, Integrator::kExplicitEuler}) {
      rows.push_back({h_omega, integ, stability_spectrum({h_omega, 1.0, integ})});
    }
  }
  return rows;
}

}  // namespace fanos
