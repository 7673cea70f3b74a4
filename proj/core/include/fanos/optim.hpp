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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "fanos/vector_ops.hpp"

namespace fanos {

/// Thrown when a step receives a gradient with NaN/Inf entries. The harness
/// turns this into a divergent trial.
class NonFiniteGradient : public std::runtime_error {
 public:
  NonFiniteGradient() : std::runtime_error("non-finite gradient") {}
};

enum class MassMode { kRms, kIdentity };
enum class Integrator { kSemiImplicit, kExplicitEuler };
enum class ScheduleMode { kExponential, kConstant };

/// Hyperparameters of the friction-adaptive thermostat optimizer. Defaults
/// are the released configuration.
struct FanosConfig {
  double lr = 1e-3;          // step size h
  double beta = 0.999;       // EMA rate of squared gradients
  double eps = 1e-8;         // added after the square root
  double q = 1.0;            // thermostat inertia
  double t_max = 1e-3;       // initial target temperature
  double t_min = 0.0;        // asymptotic target temperature
  double tau = 20000.0;      // target schedule time constant (steps)
  double rho_t = 0.9;        // EMA rate of the kinetic-energy proxy
  double zeta_max = 10.0;    // friction clip bound
  std::optional<double> grad_clip = 1.0;  // global-norm threshold; nullopt disables

  MassMode mass_mode = MassMode::kRms;
  Integrator integrator = Integrator::kSemiImplicit;
  ScheduleMode schedule_mode = ScheduleMode::kExponential;
  // nullopt: thermostat-driven friction. Otherwise friction is pinned to
  // this value and the thermostat only tracks T_ema for diagnostics.
  std::optional<double> fixed_friction;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

struct FanosState {
  Vector theta;
  Vector v;
  Vector s;
  double zeta = 0.0;
  double t_ema = 0.0;
  std::int64_t k = 0;
  // Diagnostics from the most recent step; not read by the update.
  double last_t_inst = 0.0;
  double last_t_target = 0.0;
};

/// Fresh state at theta: v = 0, s = 0, T_ema = T_max, zeta = 0 (or the
/// pinned value in fixed-friction mode).
FanosState make_fanos_state(Vector theta, const FanosConfig& cfg);

/// Scales g by min{1, c / (||g|| + 1e-12)}.
Vector clip_gradient(std::span<const double> g, double c);
void clip_gradient_inplace(std::span<double> g, double c);

/// T0(k) = T_min + (T_max - T_min) exp(-k / tau); constant mode returns T_max.
double target_temperature(std::int64_t k, const FanosConfig& cfg);

/// One optimizer step. The order of operations is fixed:
///   optional clip; s <- beta s + (1-beta) g^2; m <- sqrt(s) + eps (or 1);
///   v <- (1 - h zeta) v - h g/m; theta <- theta + h v (new v, or old v for
///   explicit Euler); T_inst from the post-update m and v; T_ema EMA;
///   zeta <- clip(zeta + h/Q (T_ema - T0(k))); k <- k + 1.
///
/// (1 - h zeta) is not guarded. With zeta_max = 10 it reaches zero at
/// h = 0.1 and can turn negative for larger steps.
FanosState fanos_step(FanosState state, std::span<const double> g,
                      const FanosConfig& cfg);

// Baselines follow the PyTorch update formulas so that swept learning rates
// mean the same thing as in torch.optim.

struct SgdMomentumState {
  Vector theta;
  Vector buffer;  // b <- mu b + g (no dampening, no Nesterov)
};

struct RmspropState {
  Vector theta;
  Vector square_avg;  // sq <- alpha sq + (1 - alpha) g^2, no bias correction
};

struct AdamwState {
  Vector theta;
  Vector exp_avg;
  Vector exp_avg_sq;
  std::int64_t step = 0;
};

using BaselineState = std::variant<SgdMomentumState, RmspropState, AdamwState>;

SgdMomentumState make_sgd_momentum_state(Vector theta);
RmspropState make_rmsprop_state(Vector theta);
AdamwState make_adamw_state(Vector theta);

/// b <- mu b + g; theta <- theta - lr b.
SgdMomentumState sgd_momentum_step(SgdMomentumState state,
                                   std::span<const double> g, double lr,
                                   double mu);

/// sq <- alpha sq + (1 - alpha) g^2; theta <- theta - lr g / (sqrt(sq) + eps).
RmspropState rmsprop_step(RmspropState state, std::span<const double> g,
                          double lr, double alpha, double eps);

/// Decoupled weight decay theta <- theta (1 - lr wd), then the bias-corrected
/// Adam step theta <- theta - (lr / bc1) m / (sqrt(v) / sqrt(bc2) + eps) with
/// bc_i = 1 - beta_i^t.
AdamwState adamw_step(AdamwState state, std::span<const double> g, double lr,
                      double beta1, double beta2, double eps,
                      double weight_decay);

}  // namespace fanos
