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

#include "fanos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "fanos/random.hpp"

namespace fanos {

namespace {

// Linear interpolation between order statistics (numpy's default).
double quantile_sorted(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double kappa_key(const std::optional<double>& k) { return k.value_or(0.0); }

}  // namespace

bool is_divergent_loss(double loss, double threshold) {
  return !std::isfinite(loss) || loss > threshold;
}

bool trace_diverged(std::span<const std::pair<std::int64_t, double>> trace,
                    double threshold) {
  return std::any_of(trace.begin(), trace.end(), [&](const auto& p) {
    return is_divergent_loss(p.second, threshold);
  });
}

ConfidenceInterval bootstrap_ci(std::span<const double> values,
                                const BootstrapOptions& opts) {
  if (values.empty()) throw std::invalid_argument("bootstrap_ci: empty input");
  if (!(opts.level > 0.0 && opts.level < 1.0)) {
    throw std::invalid_argument("bootstrap_ci: level must lie in (0, 1)");
  }
  if (opts.resamples < 1) {
    throw std::invalid_argument("bootstrap_ci: resamples must be >= 1");
  }
  const std::size_t n = values.size();
  std::mt19937_64 engine(opts.seed);
  std::vector<double> means(static_cast<std::size_t>(opts.resamples));
  for (double& m : means) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += values[uniform_index(engine, n)];
    m = acc / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double alpha = 1.0 - opts.level;
  ConfidenceInterval ci{quantile_sorted(means, alpha / 2.0),
                        quantile_sorted(means, 1.0 - alpha / 2.0)};
  // A resampled mean can stray from [min, max] by one ulp through rounding.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  ci.low = std::clamp(ci.low, *lo, *hi);
  ci.high = std::clamp(ci.high, *lo, *hi);
  return ci;
}

SweepSummary summarize(std::span<const TrialRecord> records,
                       const BootstrapOptions& opts) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  const TrialRecord& first = records.front();
  for (const auto& r : records) {
    if (r.method != first.method || r.lr != first.lr || r.kappa != first.kappa) {
      throw std::invalid_argument("summarize: records from different cells");
    }
  }
  std::vector<const TrialRecord*> ordered;
  for (const auto& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TrialRecord* a, const TrialRecord* b) {
                     return a->seed < b->seed;
                   });

  std::vector<double> finals;
  for (const auto* r : ordered) {
    if (r->final_loss) finals.push_back(*r->final_loss);
  }

  SweepSummary s;
  s.method = first.method;
  s.lr = first.lr;
  s.kappa = first.kappa;
  s.n_seeds = static_cast<int>(records.size());
  s.divergence_rate = static_cast<double>(records.size() - finals.size()) /
                      static_cast<double>(records.size());
  if (finals.empty()) return s;

  double sum = 0.0;
  for (double v : finals) sum += v;
  const double mean = sum / static_cast<double>(finals.size());
  double ss = 0.0;
  for (double v : finals) ss += (v - mean) * (v - mean);
  s.mean = mean;
  s.stddev = finals.size() > 1
              ? std::sqrt(ss / static_cast<double>(finals.size() - 1))
              : 0.0;
  s.ci = bootstrap_ci(finals, opts);
  return s;
}

std::vector<SweepSummary> summarize_all(std::span<const TrialRecord> records,
                                        const BootstrapOptions& opts) {
  using Key = std::tuple<std::string, double, double>;
  std::map<Key, std::vector<TrialRecord>> cells;
  for (const auto& r : records) {
    cells[{r.method, kappa_key(r.kappa), r.lr}].push_back(r);
  }
  std::vector<SweepSummary> out;
  out.reserve(cells.size());
  for (const auto& [key, group] : cells) out.push_back(summarize(group, opts));
  return out;
}

std::map<std::string, SweepSummary> best_lr(
    std::span<const SweepSummary> summaries) {
  std::map<std::string, SweepSummary> best;
  for (const auto& s : summaries) {
    auto it = best.find(s.method);
    if (it == best.end()) {
      best.emplace(s.method, s);
      continue;
    }
    SweepSummary& cur = it->second;
    const bool better =
        s.mean && (!cur.mean || *s.mean < *cur.mean ||
                   (*s.mean == *cur.mean && s.lr < cur.lr));
    const bool both_divergent_smaller_lr = !s.mean && !cur.mean && s.lr < cur.lr;
    if (better || both_divergent_smaller_lr) cur = s;
  }
  return best;
}

}  // namespace fanos
