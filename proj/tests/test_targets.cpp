/* Copyright 2026 The rotorctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rotor/dynamics.hpp"
#include "rotor/targets.hpp"

namespace {

using rotor::RotorBasis;
using rotor::RotorKind;
using rotor::RotorState;

const double kPi = std::numbers::pi;

std::vector<double> theta_grid(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = kPi * i / (n - 1);
  return t;
}

TEST(Targets, ClassicalExamples) {
  const auto half = rotor::classical_optimum(0.5);
  EXPECT_EQ(half.theta_max, 0.0);
  EXPECT_EQ(half.cos_val, 1.0);
  EXPECT_EQ(half.cos2_val, 1.0);

  const auto iso = rotor::classical_optimum(std::sqrt(3.0) / 2.0);
  EXPECT_NEAR(iso.cos_val, 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(iso.cos2_val, 1.0 / 3.0, 1e-12);

  const auto two = rotor::classical_optimum(2.0);
  EXPECT_EQ(two.cos_val, 0.25);
  EXPECT_EQ(two.cos2_val, 0.0625);
  EXPECT_EQ(two.f_max, 0.125);

  const auto small = rotor::classical_optimum(0.25);
  EXPECT_EQ(small.theta_max, 0.0);
  EXPECT_EQ(small.f_max, 0.75);

  EXPECT_THROW(rotor::classical_optimum(0.0), rotor::DomainError);
  EXPECT_THROW(rotor::classical_optimum(-1.0), rotor::DomainError);
}

TEST(Targets, ClassicalMatchesBruteForce) {
  // Maximize u - a u^2 on a fine grid of u in [-1, 1].
  for (double a : {0.1, 0.5, 0.7, 1.0, 2.0, 3.0}) {
    double best = -1e9;
    for (int i = 0; i <= 200000; ++i) {
      const double u = -1.0 + 2.0 * i / 200000.0;
      best = std::max(best, u - a * u * u);
    }
    EXPECT_NEAR(rotor::classical_optimum(a).f_max, best, 1e-9) << "a = " << a;
  }
}

TEST(Targets, ClassicalScanRegions) {
  const std::vector<double> grid = {0.5, std::sqrt(3.0) / 2.0, 2.0};
  const auto rows = rotor::classical_scan(grid);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(rows[i].a, grid[i]);

  for (double a = std::sqrt(3.0) / 2.0; a < 10.0; a += 0.01)
    EXPECT_LE(rotor::classical_optimum(a).cos2_val, 1.0 / 3.0 + 1e-15);
  for (double a = 0.5; a <= std::sqrt(3.0) / 2.0; a += 0.01)
    EXPECT_GE(rotor::classical_optimum(a).cos2_val, 1.0 / 3.0);
  EXPECT_THROW(rotor::classical_scan({}), rotor::DomainError);
}

TEST(Targets, ProjectedMeritMatrix) {
  const auto b0 = RotorBasis::build(RotorKind::linear, 0, 0);
  EXPECT_NEAR(rotor::projected_merit_matrix(b0, 1.7).entries(0, 0), -1.7 / 3.0, 1e-15);

  const auto b1 = RotorBasis::build(RotorKind::linear, 1, 0);
  const auto f0 = rotor::projected_merit_matrix(b1, 0.0).entries;
  EXPECT_EQ(f0(0, 0), 0.0);
  EXPECT_EQ(f0(1, 1), 0.0);
  EXPECT_NEAR(f0(0, 1), 1.0 / std::sqrt(3.0), 1e-15);

  const auto f2 = rotor::projected_merit_matrix(b1, 2.0).entries;
  EXPECT_NEAR(f2(0, 0), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(f2(1, 1), -6.0 / 5.0, 1e-15);
  EXPECT_NEAR(f2(1, 0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(f2(1, 0), f2(0, 1));
}

TEST(Targets, TargetStateExamples) {
  const auto t0 = rotor::target_state(2.0, 0);
  EXPECT_NEAR(t0.lambda_max, -2.0 / 3.0, 1e-15);
  EXPECT_EQ(t0.coefficients.size(), 1);
  EXPECT_EQ(t0.coefficients(0), 1.0);

  const auto t1 = rotor::target_state(0.0, 1);
  EXPECT_NEAR(t1.lambda_max, 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(t1.coefficients(0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(t1.coefficients(1), 1.0 / std::sqrt(2.0), 1e-14);

  const auto t = rotor::target_state(2.0, 10);
  EXPECT_GT(t.cos_exp, 0.2);
  EXPECT_LT(t.cos2_exp, 1.0 / 3.0);
}

TEST(Targets, TargetStateInvariants) {
  for (double a : {0.3, 1.0, 2.0, 3.0})
    for (int j = 0; j <= 14; ++j) {
      const auto t = rotor::target_state(a, j);
      EXPECT_NEAR(t.coefficients.norm(), 1.0, 1e-12);
      EXPECT_NEAR(t.lambda_max, t.cos_exp - a * t.cos2_exp, 1e-12);
      EXPECT_GT(t.coefficients(0), 0.0);
      const Eigen::VectorXd fv = rotor::projected_merit_matrix(t.basis, a).entries * t.coefficients;
      EXPECT_LT((fv - t.lambda_max * t.coefficients).norm(), 1e-12);
    }
}

TEST(Targets, LambdaMonotoneAndBounded) {
  for (double a : {1.0, 2.0, 3.0}) {
    double prev = -1e9;
    for (int j = 0; j <= 14; ++j) {
      const double l = rotor::target_state(a, j).lambda_max;
      EXPECT_GE(l, prev - 1e-14);
      EXPECT_LE(l, 1.0 / (4.0 * a));
      prev = l;
    }
  }
}

TEST(Targets, CloseToClassicalAtJmax10) {
  const auto t = rotor::target_state(2.0, 10);
  EXPECT_NEAR(t.cos_exp, 0.25, 0.05);
  EXPECT_NEAR(t.cos2_exp, 0.0625, 0.05);
  // The merit value itself still sits about a quarter below 1/(4a) here.
  EXPECT_LT(t.lambda_max, 0.125);
  EXPECT_GT(t.lambda_max, 0.09);
}

TEST(Targets, LambdaApproachesClassicalLimit) {
  EXPECT_NEAR(rotor::target_state(2.0, 80).lambda_max, 0.125, 0.01 * 0.125);
  EXPECT_NEAR(rotor::target_state(1.0, 80).lambda_max, 0.25, 0.01 * 0.25);
}

TEST(Targets, ParityMixing) {
  for (int j = 2; j <= 14; ++j) {
    const auto t = rotor::target_state(2.0, j);
    bool even = false;
    bool odd = false;
    for (Eigen::Index i = 0; i < t.coefficients.size(); ++i) {
      if (std::abs(t.coefficients(i)) <= 1e-3) continue;
      (t.basis.j_at(i) % 2 == 0 ? even : odd) = true;
    }
    EXPECT_TRUE(even && odd) << "j_max = " << j;
  }
}

TEST(Targets, TargetStateIsDeterministic) {
  for (double a : {0.0, 0.5, 1.0})
    for (int j : {1, 4, 9}) {
      const auto x = rotor::target_state(a, j);
      const auto y = rotor::target_state(a, j);
      EXPECT_EQ(x.coefficients, y.coefficients);
    }
}

TEST(Targets, SignRule) {
  Eigen::VectorXd v(4);
  v << 1e-12, -0.3, 0.5, 0.1;
  rotor::detail::fix_sign(v);
  EXPECT_GT(v(1), 0.0);
  EXPECT_LT(v(0), 0.0);
}

TEST(Targets, ExpectationExamples) {
  const auto b = RotorBasis::build(RotorKind::linear, 5, 0);
  const auto g = rotor::expectations(RotorState::basis_state(b, 0));
  EXPECT_NEAR(g.cos_theta, 0.0, 1e-15);
  EXPECT_NEAR(g.cos2_theta, 1.0 / 3.0, 1e-15);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(b.size());
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  const auto e = rotor::expectations(RotorState::from_real(b, v));
  EXPECT_NEAR(e.cos_theta, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(e.cos2_theta, 7.0 / 15.0, 1e-15);
}

TEST(Targets, ThermalExpectations) {
  rotor::MoleculeParams co{"CO", RotorKind::linear, rotor::units::wavenumber_to_au(1.9313), 0.0,
                           rotor::units::debye_to_au(0.112), {}};
  for (double T : {0.0, 5.0, 30.0, 200.0}) {
    const auto ens = rotor::boltzmann_ensemble(co, T, 48);
    const auto e = rotor::expectations(ens);
    EXPECT_NEAR(e.cos_theta, 0.0, 1e-6) << T;
    EXPECT_NEAR(e.cos2_theta, 1.0 / 3.0, 1e-6) << T;
  }
}

TEST(Targets, ExpectationErrors) {
  rotor::RotorEnsemble empty;
  EXPECT_THROW(rotor::expectations(empty), rotor::DomainError);
  rotor::ObservableSet obs(RotorBasis::build(RotorKind::linear, 3, 0));
  EXPECT_THROW(obs.evaluate(Eigen::VectorXcd::Zero(2)), rotor::DomainError);
}

TEST(Targets, DensityExamples) {
  const auto th = theta_grid(181);
  const auto b = RotorBasis::build(RotorKind::linear, 3, 0);
  const auto p0 = rotor::angular_density(RotorState::basis_state(b, 0), th);
  const auto p1 = rotor::angular_density(RotorState::basis_state(b, 1), th);
  for (std::size_t i = 0; i < th.size(); ++i) {
    EXPECT_NEAR(p0[i], 0.5 * std::sin(th[i]), 1e-14);
    EXPECT_NEAR(p1[i], 1.5 * std::pow(std::cos(th[i]), 2) * std::sin(th[i]), 1e-14);
  }
}

TEST(Targets, DensityOfTargetIsABowl) {
  const auto th = theta_grid(3601);
  const auto t = rotor::target_state(2.0, 10);
  const auto p = rotor::angular_density(t.state(), th);
  EXPECT_NEAR(rotor::oracle::trapezoid(th, p), 1.0, 1e-6);
  const auto arg = std::max_element(p.begin(), p.end()) - p.begin();
  EXPECT_GT(th[arg], kPi / 3.0);
  EXPECT_LT(th[arg], kPi / 2.0);
  std::vector<double> th_up(th.begin(), th.begin() + 1801);
  std::vector<double> p_up(p.begin(), p.begin() + 1801);
  EXPECT_GT(rotor::oracle::trapezoid(th_up, p_up), 0.8);
}

TEST(Targets, DensityMatchesMatrixExpectations) {
  // Gauss-Legendre in x = cos(theta) of |psi|^2 x^n, with the density
  // divided by sin(theta).
  for (double a : {0.5, 2.0, 3.0})
    for (int j : {1, 5, 10}) {
      const auto t = rotor::target_state(a, j);
      auto moment = [&](int n) {
        return rotor::oracle::gauss_legendre([&](double x) {
          const double th = std::acos(x);
          const std::vector<double> one{th};
          const double s = std::sin(th);
          return rotor::angular_density(t.state(), one)[0] / s * std::pow(x, n);
        });
      };
      EXPECT_NEAR(moment(0), 1.0, 1e-8);
      EXPECT_NEAR(moment(1), t.cos_exp, 1e-8);
      EXPECT_NEAR(moment(2), t.cos2_exp, 1e-8);
    }
}

TEST(Targets, DensityRejectsOtherBlocks) {
  const std::vector<double> th{0.1};
  EXPECT_THROW(rotor::angular_density(
                   RotorState::basis_state(RotorBasis::build(RotorKind::linear, 3, 1), 1), th),
               rotor::UnsupportedInputError);
  EXPECT_THROW(
      rotor::angular_density(
          RotorState::basis_state(RotorBasis::build(RotorKind::symmetric_top, 3, 0, 0), 1), th),
      rotor::UnsupportedInputError);
}

TEST(Targets, ScanOrdering) {
  const std::vector<double> as{0.5, 2.0};
  const std::vector<int> js{1, 3};
  const auto rows = rotor::target_scan(as, js);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].a, 0.5);
  EXPECT_EQ(rows[1].j_max, 3);
  EXPECT_EQ(rows[2].a, 2.0);
  EXPECT_EQ(rows[2].j_max, 1);
  EXPECT_EQ(rows[3].lambda_max, rotor::target_state(2.0, 3).lambda_max);
}

}  // namespace
