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

#include "fanos/optim.hpp"

#include <algorithm>
#include <cmath>

namespace fanos {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("FanosConfig: ") + what);
}

void check_gradient(std::size_t dim, std::span<const double> g,
                    const char* who) {
  require_same_size(dim, g.size(), who);
  if (!all_finite(g)) throw NonFiniteGradient();
}

}  // namespace

void FanosConfig::validate() const {
  require(lr > 0.0 && std::isfinite(lr), "lr must be positive");
  require(beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1)");
  require(eps > 0.0, "eps must be positive");
  require(q > 0.0, "q must be positive");
  require(t_min >= 0.0 && t_max >= 0.0, "temperatures must be non-negative");
  require(t_min <= t_max, "t_min must not exceed t_max");
  require(tau > 0.0, "tau must be positive");
  require(rho_t >= 0.0 && rho_t < 1.0, "rho_t must lie in [0, 1)");
  require(zeta_max > 0.0, "zeta_max must be positive");
  require(!grad_clip || *grad_clip > 0.0, "grad_clip must be positive");
  require(!fixed_friction || std::isfinite(*fixed_friction),
          "fixed friction must be finite");
}

FanosState make_fanos_state(Vector theta, const FanosConfig& cfg) {
  FanosState st;
  const std::size_t d = theta.size();
  st.theta = std::move(theta);
  st.v.assign(d, 0.0);
  st.s.assign(d, 0.0);
  st.zeta = cfg.fixed_friction.value_or(0.0);
  st.t_ema = cfg.t_max;
  st.k = 0;
  return st;
}

Vector clip_gradient(std::span<const double> g, double c) {
  Vector out(g.begin(), g.end());
  clip_gradient_inplace(out, c);
  return out;
}

void clip_gradient_inplace(std::span<double> g, double c) {
  const double scale = std::min(1.0, c / (norm2(g) + 1e-12));
  if (scale < 1.0) {
    for (double& x : g) x *= scale;
  }
}

double target_temperature(std::int64_t k, const FanosConfig& cfg) {
  if (cfg.schedule_mode == ScheduleMode::kConstant) return cfg.t_max;
  return cfg.t_min + (cfg.t_max - cfg.t_min) *
                         std::exp(-static_cast<double>(k) / cfg.tau);
}

FanosState fanos_step(FanosState st, std::span<const double> grad,
                      const FanosConfig& cfg) {
  const std::size_t d = st.theta.size();
  check_gradient(d, grad, "fanos_step");

  Vector g(grad.begin(), grad.end());
  if (cfg.grad_clip) clip_gradient_inplace(g, *cfg.grad_clip);

  const double h = cfg.lr;
  const double damping = 1.0 - h * st.zeta;
  const bool identity = cfg.mass_mode == MassMode::kIdentity;
  const bool semi_implicit = cfg.integrator == Integrator::kSemiImplicit;

  double kinetic = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    st.s[i] = cfg.beta * st.s[i] + (1.0 - cfg.beta) * g[i] * g[i];
    const double m = identity ? 1.0 : std::sqrt(st.s[i]) + cfg.eps;
    const double v_old = st.v[i];
    const double v_new = damping * v_old - h * g[i] / m;
    st.v[i] = v_new;
    st.theta[i] += h * (semi_implicit ? v_new : v_old);
    kinetic += m * v_new * v_new;
  }

  const double t_inst = kinetic / static_cast<double>(d);
  st.t_ema = cfg.rho_t * st.t_ema + (1.0 - cfg.rho_t) * t_inst;
  const double t_target = target_temperature(st.k, cfg);
  if (cfg.fixed_friction) {
    st.zeta = *cfg.fixed_friction;
  } else {
    st.zeta = std::clamp(st.zeta + (h / cfg.q) * (st.t_ema - t_target),
                         -cfg.zeta_max, cfg.zeta_max);
  }
  st.last_t_inst = t_inst;
  st.last_t_target = t_target;
  ++st.k;
  return st;
}

SgdMomentumState make_sgd_momentum_state(Vector theta) {
  SgdMomentumState st;
  st.buffer.assign(theta.size(), 0.0);
  st.theta = std::move(theta);
  return st;
}

RmspropState make_rmsprop_state(Vector theta) {
  RmspropState st;
  st.square_avg.assign(theta.size(), 0.0);
  st.theta = std::move(theta);
  return st;
}

AdamwState make_adamw_state(Vector theta) {
  AdamwState st;
  st.exp_avg.assign(theta.size(), 0.0);
  st.exp_avg_sq.assign(theta.size(), 0.0);
  st.theta = std::move(theta);
  return st;
}

SgdMomentumState sgd_momentum_step(SgdMomentumState st,
                                   std::span<const double> g, double lr,
                                   double mu) {
  check_gradient(st.theta.size(), g, "sgd_momentum_step");
  for (std::size_t i = 0; i < g.size(); ++i) {
    st.buffer[i] = mu * st.buffer[i] + g[i];
    st.theta[i] -= lr * st.buffer[i];
  }
  return st;
}

RmspropState rmsprop_step(RmspropState st, std::span<const double> g,
                          double lr, double alpha, double eps) {
  check_gradient(st.theta.size(), g, "rmsprop_step");
  for (std::size_t i = 0; i < g.size(); ++i) {
    st.square_avg[i] = alpha * st.square_avg[i] + (1.0 - alpha) * g[i] * g[i];
    st.theta[i] -= lr * g[i] / (std::sqrt(st.square_avg[i]) + eps);
  }
  return st;
}

AdamwState adamw_step(AdamwState st, std::span<const double> g, double lr,
                      double beta1, double beta2, double eps,
                      double weight_decay) {
  check_gradient(st.theta.size(), g, "adamw_step");
  ++st.step;
  const double t = static_cast<double>(st.step);
  const double bc1 = 1.0 - std::pow(beta1, t);
  const double bc2_sqrt = std::sqrt(1.0 - std::pow(beta2, t));
  const double step_size = lr / bc1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    st.theta[i] *= 1.0 - lr * weight_decay;
    st.exp_avg[i] = beta1 * st.exp_avg[i] + (1.0 - beta1) * g[i];
    st.exp_avg_sq[i] = beta2 * st.exp_avg_sq[i] + (1.0 - beta2) * g[i] * g[i];
    const double denom = std::sqrt(st.exp_avg_sq[i]) / bc2_sqrt + eps;
    st.theta[i] -= step_size * st.exp_avg[i] / denom;
  }
  return st;
}

}  // namespace fanos
