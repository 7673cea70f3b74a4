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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <memory>
#include <random>

#include "fanos/objectives.hpp"
#include "fanos/optim.hpp"

namespace fanos {
namespace {

Vector random_point(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Vector x(d);
  for (double& v : x) v = u(rng);
  return x;
}

// Max abs difference between the analytic gradient and central differences.
double fd_error(Objective& f, const Vector& x, double step) {
  Vector g(x.size()), scratch(x.size());
  f.evaluate(x, g);
  double worst = 0.0;
  Vector xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    const double fp = f.evaluate(xp, scratch);
    xp[i] = x[i] - step;
    const double fm = f.evaluate(xp, scratch);
    xp[i] = x[i];
    worst = std::max(worst, std::abs((fp - fm) / (2.0 * step) - g[i]));
  }
  return worst;
}

Eigen::MatrixXd dense_matrix(const QuadraticProblem& q) {
  const auto d = static_cast<Eigen::Index>(q.dim);
  Eigen::MatrixXd u(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) u(r, c) = q.u(r, c);
  }
  const Eigen::VectorXd lam =
      Eigen::Map<const Eigen::VectorXd>(q.eigenvalues.data(), d);
  return u * lam.asDiagonal() * u.transpose();
}

// ---- Rosenbrock -----------------------------------------------------------

TEST(Rosenbrock, GlobalMinimizer) {
  Vector g(100);
  EXPECT_EQ(rosenbrock(Vector(100, 1.0), g), 0.0);
  for (double v : g) EXPECT_EQ(v, 0.0);
}

TEST(Rosenbrock, Origin) {
  Vector g(100);
  EXPECT_EQ(rosenbrock(Vector(100, 0.0), g), 99.0);
}

TEST(Rosenbrock, RejectsTinyDimension) {
  Vector g(1);
  EXPECT_THROW(rosenbrock(Vector{1.0}, g), std::invalid_argument);
  EXPECT_THROW(Rosenbrock(1), std::invalid_argument);
}

TEST(Rosenbrock, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  Rosenbrock f(100);
  for (int p = 0; p < 20; ++p) {
    EXPECT_LE(fd_error(f, random_point(rng, 100), 1e-6), 1e-4) << "point " << p;
  }
}

TEST(Objective, CountsEveryEvaluation) {
  Rosenbrock f(4);
  Vector g(4);
  for (int i = 0; i < 7; ++i) f.evaluate(Vector(4, 0.5), g);
  EXPECT_EQ(f.eval_count(), 7);
  f.reset_count();
  EXPECT_EQ(f.eval_count(), 0);
}

// ---- quadratics -----------------------------------------------------------

TEST(Quadratic, IsotropicWhenKappaIsOne) {
  const QuadraticProblem q = make_quadratic(1.0, 8, 3);
  std::mt19937_64 rng(1);
  const Vector x = random_point(rng, 8);
  Vector g(8);
  const double f = q.value_and_gradient(x, g);
  EXPECT_NEAR(f, 0.5 * squared_norm(x), 1e-13);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(g[i], x[i], 1e-14);
  for (double l : q.eigenvalues) EXPECT_EQ(l, 1.0);
}

TEST(Quadratic, ZeroAtOrigin) {
  const QuadraticProblem q = make_quadratic(1e3, 20, 0);
  Vector g(20, 1.0);
  EXPECT_EQ(q.value_and_gradient(Vector(20, 0.0), g), 0.0);
  for (double v : g) EXPECT_EQ(v, 0.0);
}

TEST(Quadratic, MeasuredConditionNumber) {
  const QuadraticProblem q = make_quadratic(1e4, 100, 0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(q));
  ASSERT_EQ(es.info(), Eigen::Success);
  const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  EXPECT_NEAR(cond, 1e4, 1e-6 * 1e4);
  EXPECT_NEAR(q.eigenvalues.back() / q.eigenvalues.front(), 1e4, 1e-9 * 1e4);
}

TEST(Quadratic, OrthonormalBasis) {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const QuadraticProblem q = make_quadratic(1e6, 100, seed);
    double worst = 0.0;
    for (std::size_t a = 0; a < q.dim; ++a) {
      for (std::size_t b = 0; b < q.dim; ++b) {
        double s = 0.0;
        for (std::size_t r = 0; r < q.dim; ++r) s += q.u(r, a) * q.u(r, b);
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    }
    EXPECT_LE(worst, 1e-10);
  }
}

TEST(Quadratic, LogSpacedEigenvalues) {
  const QuadraticProblem q = make_quadratic(1e5, 100, 4);
  const double step = std::log(1e5) / 99.0;
  EXPECT_EQ(q.eigenvalues.front(), 1.0);
  EXPECT_NEAR(q.eigenvalues.back(), 1e5, 1e-9 * 1e5);
  for (std::size_t i = 0; i < q.dim; ++i) {
    EXPECT_NEAR(std::log(q.eigenvalues[i]), step * static_cast<double>(i), 1e-12);
  }
}

TEST(Quadratic, GradientMatchesDenseProduct) {
  const QuadraticProblem q = make_quadratic(1e3, 50, 9);
  const Eigen::MatrixXd a = dense_matrix(q);
  std::mt19937_64 rng(2);
  const Vector x = random_point(rng, 50);
  Vector g(50);
  const double f = q.value_and_gradient(x, g);
  const Eigen::VectorXd ex = Eigen::Map<const Eigen::VectorXd>(x.data(), 50);
  const Eigen::VectorXd ag = a * ex;
  EXPECT_NEAR(f, 0.5 * ex.dot(ag), 1e-10 * std::abs(f));
  for (Eigen::Index i = 0; i < 50; ++i) EXPECT_NEAR(g[i], ag[i], 1e-9);
}

TEST(Quadratic, SeedDeterminesBasis) {
  const QuadraticProblem a = make_quadratic(1e2, 30, 5);
  const QuadraticProblem b = make_quadratic(1e2, 30, 5);
  const QuadraticProblem c = make_quadratic(1e2, 30, 6);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_NE(a.basis, c.basis);
}

TEST(Quadratic, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  for (double kappa : {1.0, 1e2, 1e4}) {
    QuadraticObjective f(
        std::make_shared<const QuadraticProblem>(make_quadratic(kappa, 100, 1)));
    for (int p = 0; p < 20; ++p) {
      EXPECT_LE(fd_error(f, random_point(rng, 100), 1e-6), 1e-4)
          << "kappa " << kappa << " point " << p;
    }
  }
}

TEST(Quadratic, Errors) {
  EXPECT_THROW(make_quadratic(0.5, 10, 0), std::invalid_argument);
  EXPECT_THROW(make_quadratic(10.0, 1, 0), std::invalid_argument);
}

// ---- stability ------------------------------------------------------------

double eigen_radius(const std::array<double, 4>& m) {
  Eigen::Matrix2d a;
  a << m[0], m[1], m[2], m[3];
  return a.eigenvalues().cwiseAbs().maxCoeff();
}

TEST(Stability, Examples) {
  const auto si = stability_spectrum({1.0, 1.0, Integrator::kSemiImplicit});
  EXPECT_NEAR(si.det, 1.0, 1e-15);
  EXPECT_NEAR(si.trace, 1.0, 1e-15);
  EXPECT_NEAR(si.spectral_radius, 1.0, 1e-15);

  const StabilityCase ee_case{1.0, 1.0, Integrator::kExplicitEuler};
  const auto ee = stability_spectrum(ee_case);
  EXPECT_NEAR(ee.det, 2.0, 1e-15);
  EXPECT_NEAR(ee.spectral_radius, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(eigen_radius(update_matrix(ee_case)), std::sqrt(2.0), 1e-14);

  const StabilityCase hot{3.0, 1.0, Integrator::kSemiImplicit};
  const auto s3 = stability_spectrum(hot);
  EXPECT_NEAR(s3.trace, -7.0, 1e-15);
  // Real pair from the quadratic formula: (7 + sqrt(45)) / 2.
  EXPECT_NEAR(s3.spectral_radius, 6.854101966249684544, 1e-14);
  EXPECT_NEAR(eigen_radius(update_matrix(hot)), s3.spectral_radius, 1e-12);
}

TEST(Stability, UpdateMatrices) {
  const auto si = update_matrix({0.5, 2.0, Integrator::kSemiImplicit});
  EXPECT_EQ(si, (std::array<double, 4>{0.0, 0.5, -2.0, 1.0}));
  const auto ee = update_matrix({0.5, 2.0, Integrator::kExplicitEuler});
  EXPECT_EQ(ee, (std::array<double, 4>{1.0, 0.5, -2.0, 1.0}));
}

TEST(Stability, SymplecticUnitCircleSweep) {
  for (int i = 1; i <= 100; ++i) {
    const double hw = 2.0 * i / 101.0;
    const auto s = stability_spectrum({hw, 1.0, Integrator::kSemiImplicit});
    EXPECT_NEAR(s.det, 1.0, 1e-12) << hw;
    EXPECT_NEAR(s.spectral_radius, 1.0, 1e-12) << hw;
  }
}

TEST(Stability, ExplicitEulerAlwaysExpands) {
  for (int i = 1; i <= 100; ++i) {
    const double h = 5.0 * i / 100.0;
    for (double omega : {0.3, 1.0, 2.0}) {
      const auto s = stability_spectrum({h, omega, Integrator::kExplicitEuler});
      EXPECT_NEAR(s.spectral_radius, std::sqrt(1.0 + h * h * omega * omega), 1e-12);
      EXPECT_GT(s.spectral_radius, 1.0);
    }
  }
}

TEST(Stability, Errors) {
  EXPECT_THROW(stability_spectrum({0.0, 1.0, Integrator::kSemiImplicit}),
               std::invalid_argument);
  EXPECT_THROW(stability_spectrum({1.0, -1.0, Integrator::kExplicitEuler}),
               std::invalid_argument);
}

// Undamped oscillator through the collapsed FANoS step.
double oscillator_energy_ratio(Integrator integrator, int steps, double limit) {
  FanosConfig cfg;
  cfg.lr = 0.5;
  cfg.grad_clip.reset();
  cfg.fixed_friction = 0.0;
  cfg.mass_mode = MassMode::kIdentity;
  cfg.integrator = integrator;
  FanosState st = make_fanos_state(Vector{1.0}, cfg);
  const double e0 = 0.5;
  double worst = 1.0;
  for (int k = 0; k < steps; ++k) {
    st = fanos_step(std::move(st), Vector{st.theta[0]}, cfg);
    const double e = 0.5 * st.v[0] * st.v[0] + 0.5 * st.theta[0] * st.theta[0];
    worst = std::max(worst, std::max(e / e0, e0 / e));
    if (worst > limit) break;
  }
  return worst;
}

TEST(Stability, EnergyBoundedUnderSymplecticEuler) {
  EXPECT_LE(oscillator_energy_ratio(Integrator::kSemiImplicit, 100000, 1e300), 2.0);
}

TEST(Stability, EnergyBlowsUpUnderExplicitEuler) {
  EXPECT_GT(oscillator_energy_ratio(Integrator::kExplicitEuler, 10000, 10.0), 10.0);
}

}  // namespace
}  // namespace fanos
