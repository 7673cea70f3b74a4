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

#include "fanos/objectives.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "fanos/random.hpp"

namespace fanos {

double Objective::evaluate(std::span<const double> x, std::span<double> grad) {
  require_same_size(dimension(), x.size(), "Objective::evaluate");
  require_same_size(dimension(), grad.size(), "Objective::evaluate");
  ++eval_count_;
  return value_and_gradient(x, grad);
}

double rosenbrock(std::span<const double> x, std::span<double> grad) {
  const std::size_t d = x.size();
  if (d < 2) throw std::invalid_argument("rosenbrock: dimension must be >= 2");
  require_same_size(d, grad.size(), "rosenbrock");
  double f = 0.0;
  for (std::size_t i = 0; i < d; ++i) grad[i] = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double valley = x[i + 1] - x[i] * x[i];
    const double offset = 1.0 - x[i];
    f += 100.0 * valley * valley + offset * offset;
    grad[i] += -400.0 * x[i] * valley - 2.0 * offset;
    grad[i + 1] += 200.0 * valley;
  }
  return f;
}

Rosenbrock::Rosenbrock(std::size_t dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("Rosenbrock: dimension must be >= 2");
}

double Rosenbrock::value_and_gradient(std::span<const double> x,
                                      std::span<double> grad) const {
  return rosenbrock(x, grad);
}

double QuadraticProblem::value_and_gradient(std::span<const double> x,
                                            std::span<double> grad) const {
  require_same_size(dim, x.size(), "QuadraticProblem");
  require_same_size(dim, grad.size(), "QuadraticProblem");
  // z = U^T x, f = 1/2 sum lambda z^2, g = U (lambda z).
  Vector z(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) acc += u(i, j) * x[i];
    z[j] = acc;
  }
  double f = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    f += 0.5 * eigenvalues[j] * z[j] * z[j];
    z[j] *= eigenvalues[j];
  }
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc += u(i, j) * z[j];
    grad[i] = acc;
  }
  return f;
}

QuadraticProblem make_quadratic(double kappa, std::size_t dim,
                                std::uint64_t seed) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("make_quadratic: kappa must be >= 1");
  }
  if (dim < 2) throw std::invalid_argument("make_quadratic: dimension must be >= 2");

  const auto n = static_cast<Eigen::Index>(dim);
  NormalStream normals(stream_key("quadratic/basis", seed));
  Eigen::MatrixXd gaussian(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) gaussian(r, c) = normals.next();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }

  QuadraticProblem p;
  p.dim = dim;
  p.kappa = kappa;
  p.basis.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      p.basis[i * dim + j] =
          q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  // lambda_i = kappa^(i / (d - 1)); endpoints exact.
  p.eigenvalues.resize(dim);
  const double log_kappa = std::log(kappa);
  for (std::size_t i = 0; i < dim; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(dim - 1);
    p.eigenvalues[i] = std::exp(t * log_kappa);
  }
  p.eigenvalues.front() = 1.0;
  p.eigenvalues.back() = kappa;
  return p;
}

QuadraticObjective::QuadraticObjective(
    std::shared_ptr<const QuadraticProblem> problem)
    : problem_(std::move(problem)) {
  if (!problem_) throw std::invalid_argument("QuadraticObjective: null problem");
}

double QuadraticObjective::value_and_gradient(std::span<const double> x,
                                              std::span<double> grad) const {
  return problem_->value_and_gradient(x, grad);
}

std::array<double, 4> update_matrix(const StabilityCase& c) {
  const double h = c.h;
  const double w2 = c.omega * c.omega;
  if (c.integrator == Integrator::kSemiImplicit) {
    return {1.0 - h * h * w2, h, -h * w2, 1.0};
  }
  return {1.0, h, -h * w2, 1.0};
}

StabilitySpectrum stability_spectrum(const StabilityCase& c) {
  if (!(c.h > 0.0) || !(c.omega > 0.0)) {
    throw std::invalid_argument("stability_spectrum: h and omega must be positive");
  }
  const auto a = update_matrix(c);
  StabilitySpectrum out;
  out.det = a[0] * a[3] - a[1] * a[2];
  out.trace = a[0] + a[3];
  const double disc = out.trace * out.trace - 4.0 * out.det;
  if (disc < 0.0) {
    // Complex pair; both eigenvalues have modulus sqrt(det).
    out.spectral_radius = std::sqrt(out.det);
  } else {
    const double root = std::sqrt(disc);
    out.spectral_radius = std::max(std::abs(out.trace + root),
                                   std::abs(out.trace - root)) /
                          2.0;
  }
  return out;
}

}  // namespace fanos
