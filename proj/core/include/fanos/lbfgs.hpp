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
#include <deque>
#include <span>
#include <vector>

#include "fanos/objectives.hpp"
#include "fanos/vector_ops.hpp"

namespace fanos {

struct LbfgsConfig {
  int history_size = 100;
  double lr = 1.0;  // trial step along -g; scaled directions start at 1
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_ls_evals = 25;
  std::int64_t budget = 3000;  // objective + gradient evaluations, probes included
  double gradient_tolerance = 1e-12;
  // Line search gives up once |bracket width| * max|d| drops below this.
  double bracket_tolerance = 1e-12;

  void validate() const;
};

/// Bounded history of curvature pairs (s, y) with rho = 1 / (y^T s). Pairs
/// with y^T s <= 0 are refused, so every stored pair is positive.
class CurvaturePairDeque {
 public:
  explicit CurvaturePairDeque(std::size_t capacity);

  /// Returns false (and stores nothing) when y^T s is not positive.
  bool push(Vector s, Vector y);
  void clear() { pairs_.clear(); }
  std::size_t size() const { return pairs_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return pairs_.empty(); }

  /// Two-loop recursion: returns -H g, where H is the implicit inverse
  /// Hessian seeded with gamma = s^T y / y^T y of the newest pair.
  Vector descent_direction(std::span<const double> g) const;

  struct Pair {
    Vector s;
    Vector y;
    double rho;
  };
  const std::deque<Pair>& pairs() const { return pairs_; }

 private:
  std::size_t capacity_;
  std::deque<Pair> pairs_;
};

/// Bookkeeping for one accepted line-search step, kept so callers can
/// re-check the strong Wolfe conditions.
struct LineSearchStep {
  double t = 0.0;
  double f0 = 0.0;
  double slope0 = 0.0;  // g0^T d
  double f = 0.0;
  double slope = 0.0;  // g(t)^T d
};

struct LbfgsTracePoint {
  std::int64_t evals = 0;
  double value = 0.0;
};

struct LbfgsResult {
  Vector theta;
  double final_value = 0.0;
  std::int64_t eval_count = 0;
  bool diverged = false;   // non-finite objective at the starting point
  bool converged = false;  // gradient norm fell below tolerance
  int iterations = 0;
  int line_search_failures = 0;
  std::vector<LbfgsTracePoint> trace;  // one point per outer iteration
  std::vector<LineSearchStep> accepted_steps;
};

/// Minimizes `objective` from x0 with L-BFGS and a strong-Wolfe line search
/// (bracketing plus cubic-interpolation zoom). Every objective call counts
/// against cfg.budget and the budget is never exceeded. A failed line search
/// falls back to a steepest-descent step of length lr (kept only if it
/// lowers f) and clears the history.
LbfgsResult lbfgs_minimize(Objective& objective, std::span<const double> x0,
                           const LbfgsConfig& cfg);

}  // namespace fanos
