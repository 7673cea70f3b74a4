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

#include "fanos/lbfgs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace fanos {

void LbfgsConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("LbfgsConfig: ") + what);
  };
  require(history_size >= 1, "history_size must be >= 1");
  require(lr > 0.0, "lr must be positive");
  require(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0,
          "Wolfe constants must satisfy 0 < c1 < c2 < 1");
  require(max_ls_evals >= 1, "max_ls_evals must be >= 1");
  require(budget >= 1, "budget must be >= 1");
}

CurvaturePairDeque::CurvaturePairDeque(std::size_t capacity)
    : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("CurvaturePairDeque: capacity must be >= 1");
  }
}

bool CurvaturePairDeque::push(Vector s, Vector y) {
  require_same_size(s.size(), y.size(), "CurvaturePairDeque::push");
  const double ys = dot(y, s);
  if (!(ys > 0.0) || !std::isfinite(ys)) return false;
  if (pairs_.size() == capacity_) pairs_.pop_front();
  pairs_.push_back({std::move(s), std::move(y), 1.0 / ys});
  return true;
}

Vector CurvaturePairDeque::descent_direction(std::span<const double> g) const {
  Vector q(g.begin(), g.end());
  std::vector<double> alpha(pairs_.size());
  for (std::size_t i = pairs_.size(); i-- > 0;) {
    const Pair& p = pairs_[i];
    alpha[i] = p.rho * dot(p.s, q);
    axpy(-alpha[i], p.y, q);
  }
  if (!pairs_.empty()) {
    const Pair& newest = pairs_.back();
    const double gamma = dot(newest.s, newest.y) / dot(newest.y, newest.y);
    for (double& qi : q) qi *= gamma;
  }
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const Pair& p = pairs_[i];
    const double beta = p.rho * dot(p.y, q);
    axpy(alpha[i] - beta, p.s, q);
  }
  for (double& qi : q) qi = -qi;
  return q;
}

namespace {

// Minimizer of the cubic through (x1, f1, g1) and (x2, f2, g2), clamped to
// [lo, hi]. Falls back to the midpoint when the cubic has no minimizer.
double cubic_minimizer(double x1, double f1, double g1, double x2, double f2,
                       double g2, double lo, double hi) {
  const double d1 = g1 + g2 - 3.0 * (f1 - f2) / (x1 - x2);
  const double d2_square = d1 * d1 - g1 * g2;
  if (d2_square >= 0.0) {
    const double d2 = std::sqrt(d2_square);
    double min_pos;
    if (x1 <= x2) {
      min_pos = x2 - (x2 - x1) * ((g2 + d2 - d1) / (g2 - g1 + 2.0 * d2));
    } else {
      min_pos = x1 - (x1 - x2) * ((g1 + d2 - d1) / (g1 - g2 + 2.0 * d2));
    }
    if (std::isfinite(min_pos)) return std::min(std::max(min_pos, lo), hi);
  }
  return 0.5 * (lo + hi);
}

struct Probe {
  double t = 0.0;
  double f = 0.0;
  double slope = 0.0;
  Vector x;
  Vector g;
};

enum class SearchStatus { kWolfe, kFailed, kBudget };

struct SearchResult {
  SearchStatus status;
  Probe point;  // t == 0 means "stay"
};

class BudgetedObjective {
 public:
  BudgetedObjective(Objective& objective, std::int64_t budget)
      : objective_(objective), budget_(budget) {}

  bool can_evaluate() const { return used_ < budget_; }
  std::int64_t used() const { return used_; }

  double evaluate(std::span<const double> x, std::span<double> g) {
    ++used_;
    return objective_.evaluate(x, g);
  }

 private:
  Objective& objective_;
  std::int64_t budget_;
  std::int64_t used_ = 0;
};

class StrongWolfeSearch {
 public:
  StrongWolfeSearch(BudgetedObjective& fn, const LbfgsConfig& cfg,
                    std::span<const double> x, std::span<const double> d,
                    double f0, std::span<const double> g0, double slope0)
      : fn_(fn), cfg_(cfg), x_(x), d_(d), f0_(f0), slope0_(slope0) {
    origin_.t = 0.0;
    origin_.f = f0;
    origin_.slope = slope0;
    origin_.x.assign(x.begin(), x.end());
    origin_.g.assign(g0.begin(), g0.end());
  }

  SearchResult run(double t) {
    if (!fn_.can_evaluate()) return out_of_budget();
    const double d_norm = max_abs(d_);
    Probe prev = origin_;
    Probe cur = probe(t);

    std::array<Probe, 2> bracket;
    bool have_pair = false;
    bool done = false;
    int extrapolations = 0;
    while (true) {
      if (!std::isfinite(cur.f) || !armijo(cur) ||
          (extrapolations > 1 && cur.f >= prev.f)) {
        bracket = {prev, cur};
        have_pair = true;
        break;
      }
      if (curvature(cur)) {
        return {SearchStatus::kWolfe, cur};
      }
      if (cur.slope >= 0.0) {
        bracket = {prev, cur};
        have_pair = true;
        break;
      }
      if (probes_ >= cfg_.max_ls_evals || !fn_.can_evaluate()) break;
      const double min_step = cur.t + 0.01 * (cur.t - prev.t);
      const double max_step = cur.t * 10.0;
      const double next = cubic_minimizer(prev.t, prev.f, prev.slope, cur.t,
                                          cur.f, cur.slope, min_step, max_step);
      prev = std::move(cur);
      cur = probe(next);
      ++extrapolations;
    }
    if (!have_pair) {
      if (!fn_.can_evaluate()) return out_of_budget();
      bracket = {origin_, cur};
    }

    bool insufficient_progress = false;
    int low = bracket[0].f <= bracket[1].f ? 0 : 1;
    while (!done) {
      int high = 1 - low;
      const double b_min = std::min(bracket[0].t, bracket[1].t);
      const double b_max = std::max(bracket[0].t, bracket[1].t);
      if ((b_max - b_min) * d_norm < cfg_.bracket_tolerance) break;
      if (probes_ >= cfg_.max_ls_evals) break;
      if (!fn_.can_evaluate()) return out_of_budget();

      double t_new;
      if (std::isfinite(bracket[0].f) && std::isfinite(bracket[1].f)) {
        t_new = cubic_minimizer(bracket[0].t, bracket[0].f, bracket[0].slope,
                                bracket[1].t, bracket[1].f, bracket[1].slope,
                                b_min, b_max);
      } else {
        t_new = 0.5 * (b_min + b_max);
      }
      // Keep the trial away from the bracket ends.
      const double margin = 0.1 * (b_max - b_min);
      if (std::min(b_max - t_new, t_new - b_min) < margin) {
        if (insufficient_progress || t_new >= b_max || t_new <= b_min) {
          t_new = std::abs(t_new - b_max) < std::abs(t_new - b_min)
                      ? b_max - margin
                      : b_min + margin;
          insufficient_progress = false;
        } else {
          insufficient_progress = true;
        }
      } else {
        insufficient_progress = false;
      }

      Probe trial = probe(t_new);
      if (!std::isfinite(trial.f) || !armijo(trial) ||
          trial.f >= bracket[low].f) {
        bracket[high] = std::move(trial);
        low = bracket[0].f <= bracket[1].f ? 0 : 1;
      } else {
        if (curvature(trial)) {
          done = true;
        } else if (trial.slope * (bracket[high].t - bracket[low].t) >= 0.0) {
          bracket[high] = bracket[low];
        }
        bracket[low] = std::move(trial);
      }
    }
    if (done) return {SearchStatus::kWolfe, bracket[low]};
    return {SearchStatus::kFailed, bracket[low]};
  }

 private:
  bool armijo(const Probe& p) const {
    return p.f <= f0_ + cfg_.wolfe_c1 * p.t * slope0_;
  }
  bool curvature(const Probe& p) const {
    return std::abs(p.slope) <= -cfg_.wolfe_c2 * slope0_;
  }

  Probe probe(double t) {
    Probe p;
    p.t = t;
    p.x.assign(x_.begin(), x_.end());
    axpy(t, d_, p.x);
    p.g.assign(x_.size(), 0.0);
    p.f = fn_.evaluate(p.x, p.g);
    p.slope = dot(p.g, d_);
    ++probes_;
    if (std::isfinite(p.f) && armijo(p) && (!best_ || p.f < best_->f)) {
      best_ = p;
    }
    return p;
  }

  SearchResult out_of_budget() const {
    return {SearchStatus::kBudget, best_ ? *best_ : origin_};
  }

  BudgetedObjective& fn_;
  const LbfgsConfig& cfg_;
  std::span<const double> x_;
  std::span<const double> d_;
  double f0_;
  double slope0_;
  Probe origin_;
  std::optional<Probe> best_;
  int probes_ = 0;
};

}  // namespace

LbfgsResult lbfgs_minimize(Objective& objective, std::span<const double> x0,
                           const LbfgsConfig& cfg) {
  cfg.validate();
  require_same_size(objective.dimension(), x0.size(), "lbfgs_minimize");

  BudgetedObjective fn(objective, cfg.budget);
  LbfgsResult out;
  Vector x(x0.begin(), x0.end());
  Vector g(x.size(), 0.0);
  double f = fn.evaluate(x, g);
  out.trace.push_back({fn.used(), f});
  if (!std::isfinite(f) || !all_finite(g)) {
    out.diverged = true;
    out.theta = std::move(x);
    out.final_value = f;
    out.eval_count = fn.used();
    return out;
  }

  CurvaturePairDeque history(static_cast<std::size_t>(cfg.history_size));
  while (true) {
    if (norm2(g) < cfg.gradient_tolerance) {
      out.converged = true;
      break;
    }
    if (!fn.can_evaluate()) break;

    Vector d = history.empty() ? Vector(g.size()) : history.descent_direction(g);
    if (history.empty()) {
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
    }
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      history.clear();
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
      slope = dot(g, d);
    }

    // Raw -g gets the configured scale; a scaled quasi-Newton direction
    // starts from the unit step.
    const double t0 = history.empty() ? cfg.lr : 1.0;
    StrongWolfeSearch search(fn, cfg, x, d, f, g, slope);
    SearchResult step = search.run(t0);
    ++out.iterations;

    if (step.status == SearchStatus::kFailed) {
      ++out.line_search_failures;
      history.clear();
      if (fn.can_evaluate()) {
        Vector xs = x;
        axpy(-cfg.lr, g, xs);
        Vector gs(x.size(), 0.0);
        const double fs = fn.evaluate(xs, gs);
        if (fs < f) {
          x = std::move(xs);
          g = std::move(gs);
          f = fs;
        }
      }
    } else if (step.point.t > 0.0) {
      Probe& p = step.point;
      if (step.status == SearchStatus::kWolfe) {
        out.accepted_steps.push_back({p.t, f, slope, p.f, p.slope});
        Vector s(x.size()), y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          s[i] = p.x[i] - x[i];
          y[i] = p.g[i] - g[i];
        }
        history.push(std::move(s), std::move(y));
      }
      x = std::move(p.x);
      g = std::move(p.g);
      f = p.f;
    }
    out.trace.push_back({fn.used(), f});
    if (step.status == SearchStatus::kBudget) break;
  }

  out.theta = std::move(x);
  out.final_value = f;
  out.eval_count = fn.used();
  return out;
}

}  // namespace fanos
