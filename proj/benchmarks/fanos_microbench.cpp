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

#include <benchmark/benchmark.h>

#include <memory>

#include "fanos/harness.hpp"
#include "fanos/lbfgs.hpp"
#include "fanos/objectives.hpp"
#include "fanos/optim.hpp"

namespace {

using namespace fanos;

Vector gradient_at(std::size_t d) {
  Vector x = initial_point(d, 0), g(d);
  rosenbrock(x, g);
  return g;
}

void BM_FanosStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  FanosConfig cfg;
  const Vector g = gradient_at(d);
  FanosState st = make_fanos_state(initial_point(d, 1), cfg);
  for (auto _ : state) {
    st = fanos_step(std::move(st), g, cfg);
    benchmark::DoNotOptimize(st.theta.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FanosStep)->Arg(100)->Arg(10000);

void BM_SgdMomentumStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector g = gradient_at(d);
  auto st = make_sgd_momentum_state(initial_point(d, 1));
  for (auto _ : state) {
    st = sgd_momentum_step(std::move(st), g, 1e-4, 0.9);
    benchmark::DoNotOptimize(st.theta.data());
  }
}
BENCHMARK(BM_SgdMomentumStep)->Arg(100);

void BM_RmspropStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector g = gradient_at(d);
  auto st = make_rmsprop_state(initial_point(d, 1));
  for (auto _ : state) {
    st = rmsprop_step(std::move(st), g, 1e-3, 0.99, 1e-8);
    benchmark::DoNotOptimize(st.theta.data());
  }
}
BENCHMARK(BM_RmspropStep)->Arg(100);

void BM_AdamwStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector g = gradient_at(d);
  auto st = make_adamw_state(initial_point(d, 1));
  for (auto _ : state) {
    st = adamw_step(std::move(st), g, 1e-3, 0.9, 0.999, 1e-8, 0.01);
    benchmark::DoNotOptimize(st.theta.data());
  }
}
BENCHMARK(BM_AdamwStep)->Arg(100);

void BM_RosenbrockEval(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector x = initial_point(d, 2);
  Vector g(d);
  for (auto _ : state) benchmark::DoNotOptimize(rosenbrock(x, g));
}
BENCHMARK(BM_RosenbrockEval)->Arg(100)->Arg(10000);

void BM_QuadraticEval(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const QuadraticProblem q = make_quadratic(1e4, d, 0);
  const Vector x = initial_point(d, 2);
  Vector g(d);
  for (auto _ : state) benchmark::DoNotOptimize(q.value_and_gradient(x, g));
}
BENCHMARK(BM_QuadraticEval)->Arg(100)->Arg(400);

void BM_MakeQuadratic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_quadratic(1e6, 100, 0).basis.data());
  }
}
BENCHMARK(BM_MakeQuadratic);

void BM_LbfgsRosenbrock(benchmark::State& state) {
  LbfgsConfig cfg;
  cfg.lr = 0.1;
  cfg.budget = state.range(0);
  const Vector x0 = initial_point(100, 0);
  for (auto _ : state) {
    Rosenbrock f(100);
    benchmark::DoNotOptimize(lbfgs_minimize(f, x0, cfg).final_value);
  }
}
BENCHMARK(BM_LbfgsRosenbrock)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_FanosTrial(benchmark::State& state) {
  const MethodSpec m = method_by_name("FANoS-RMS");
  TrialOptions opts;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(m, ProblemSpec{}, 3e-2, 0, opts).final_loss);
  }
}
BENCHMARK(BM_FanosTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
