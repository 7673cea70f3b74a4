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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fanos {

/// Loss above which a trajectory counts as divergent.
inline constexpr double kDefaultDivergenceThreshold = 1e10;

struct ThermostatSample {
  std::int64_t step = 0;
  double zeta = 0.0;
  double t_inst = 0.0;
  double t_ema = 0.0;
  double t_target = 0.0;
};

/// One (method, lr, seed) run. `final_loss` is empty iff the run diverged.
struct TrialRecord {
  std::string method;
  double lr = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> kappa;  // quadratic sweep only
  std::optional<double> final_loss;
  std::vector<std::pair<std::int64_t, double>> loss_trace;  // (step, loss)
  std::int64_t eval_count = 0;
  std::vector<ThermostatSample> thermostat_trace;
  double wall_time = 0.0;  // seconds

  bool divergent() const { return !final_loss.has_value(); }
};

/// True when `loss` is non-finite or above the threshold.
bool is_divergent_loss(double loss,
                       double threshold = kDefaultDivergenceThreshold);

/// Divergent iff any traced loss is divergent.
bool trace_diverged(std::span<const std::pair<std::int64_t, double>> trace,
                    double threshold = kDefaultDivergenceThreshold);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
};

struct BootstrapOptions {
  double level = 0.95;
  int resamples = 10000;
  std::uint64_t seed = 0;
};

/// Percentile bootstrap of the mean. Quantiles use linear interpolation
/// between order statistics of the resampled means.
ConfidenceInterval bootstrap_ci(std::span<const double> values,
                                const BootstrapOptions& opts = {});

struct SweepSummary {
  std::string method;
  double lr = 0.0;
  std::optional<double> kappa;
  int n_seeds = 0;
  // Absent when every seed diverged.
  std::optional<double> mean;
  std::optional<double> stddev;
  std::optional<ConfidenceInterval> ci;
  double divergence_rate = 0.0;
};

/// Mean, sample standard deviation and bootstrap CI of the non-divergent
/// final losses. Records are ordered by seed first, so the result does not
/// depend on input order. Throws on an empty list or mixed (method, lr, kappa).
SweepSummary summarize(std::span<const TrialRecord> records,
                       const BootstrapOptions& opts = {});

/// Groups records by (method, lr, kappa) and summarizes each group, sorted
/// by that key.
std::vector<SweepSummary> summarize_all(std::span<const TrialRecord> records,
                                        const BootstrapOptions& opts = {});

/// Per method, the summary with the smallest mean; fully divergent cells are
/// skipped and ties go to the smaller lr. A method whose every cell diverged
/// maps to its smallest-lr summary, which carries no mean.
std::map<std::string, SweepSummary> best_lr(
    std::span<const SweepSummary> summaries);

}  // namespace fanos
