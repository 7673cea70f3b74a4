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

#include <array>
#include <cstdint>
#include <memory>
#include <span>

#include "fanos/optim.hpp"
#include "fanos/vector_ops.hpp"

namespace fanos {

/// A differentiable objective with an evaluation counter. One instance
/// belongs to one trial; the counter is not synchronized.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;

  /// Writes the gradient into `grad` and returns the value. Every call
  /// counts as one evaluation.
  double evaluate(std::span<const double> x, std::span<double> grad);

  std::int64_t eval_count() const { return eval_count_; }
  void reset_count() { eval_count_ = 0; }

 protected:
  virtual double value_and_gradient(std::span<const double> x,
                                    std::span<double> grad) const = 0;

 private:
  std::int64_t eval_count_ = 0;
};

/// f(x) = sum_{i<d-1} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2.
class Rosenbrock final : public Objective {
 public:
  explicit Rosenbrock(std::size_t dim);
  std::size_t dimension() const override { return dim_; }

 protected:
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

 private:
  std::size_t dim_;
};

/// Counter-free Rosenbrock evaluation. Throws std::invalid_argument for
/// d < 2 or mismatched spans.
double rosenbrock(std::span<const double> x, std::span<double> grad);

/// A = U diag(lambda) U^T with U orthogonal and lambda log-spaced on [1, kappa].
struct QuadraticProblem {
  std::size_t dim = 0;
  double kappa = 1.0;
  Vector basis;        // row-major d x d, columns are eigenvectors
  Vector eigenvalues;  // ascending

  double u(std::size_t row, std::size_t col) const {
    return basis[row * dim + col];
  }

  /// f = 1/2 x^T A x and g = A x, computed through the eigenbasis.
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const;
};

/// The eigenbasis is the Q factor of a seeded standard-normal matrix with
/// columns sign-fixed so that diag(R) > 0.
QuadraticProblem make_quadratic(double kappa, std::size_t dim,
                                std::uint64_t seed);

class QuadraticObjective final : public Objective {
 public:
  explicit QuadraticObjective(std::shared_ptr<const QuadraticProblem> problem);
  std::size_t dimension() const override { return problem_->dim; }
  const QuadraticProblem& problem() const { return *problem_; }

 protected:
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

 private:
  std::shared_ptr<const QuadraticProblem> problem_;
};

// Linear stability of one step on the harmonic oscillator f = w^2 x^2 / 2.

struct StabilityCase {
  double h = 0.0;
  double omega = 0.0;
  Integrator integrator = Integrator::kSemiImplicit;
};

struct StabilitySpectrum {
  double det = 0.0;
  double trace = 0.0;
  double spectral_radius = 0.0;
};

/// Update matrix acting on (x, v):
///   semi-implicit  [[1 - h^2 w^2, h], [-h w^2, 1]]
///   explicit Euler [[1, h], [-h w^2, 1]]
std::array<double, 4> update_matrix(const StabilityCase& c);

StabilitySpectrum stability_spectrum(const StabilityCase& c);

}  // namespace fanos
