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

#pragma once

// Figure of merit F = cos(theta) - a cos^2(theta) for simultaneous orientation
// and planar delocalization: its classical optimum, the target state that
// maximizes <F> inside a truncated rotational space, and state diagnostics.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rotor/basis.hpp"
#include "rotor/errors.hpp"
#include "rotor/state.hpp"

namespace rotor {

struct MeritParams {
  double a = 2.0;
  int j_max = 10;

  void validate() const {
    if (!(a >= 0.0)) throw DomainError("merit weight a must be non-negative");
    if (j_max < 0) throw DomainError("j_max must be non-negative");
  }
};

struct ClassicalOptimum {
  double a = 0.0;
  double theta_max = 0.0;
  double cos_val = 0.0;
  double cos2_val = 0.0;
  double f_max = 0.0;
};

/// Maximizer of f(u) = u - a u^2 over u = cos(theta) in [-1, 1].
inline ClassicalOptimum classical_optimum(double a) {
  if (!(a > 0.0)) throw DomainError("classical optimum requires a > 0");
  ClassicalOptimum out;
  out.a = a;
  if (a >= 0.5) {
    out.cos_val = 1.0 / (2.0 * a);
    out.theta_max = std::acos(out.cos_val);
    out.f_max = 1.0 / (4.0 * a);
  } else {
    out.cos_val = 1.0;
    out.theta_max = 0.0;
    out.f_max = 1.0 - a;
  }
  out.cos2_val = out.cos_val * out.cos_val;
  return out;
}

inline std::vector<ClassicalOptimum> classical_scan(std::span<const double> a_grid) {
  if (a_grid.empty()) throw DomainError("classical scan needs at least one value of a");
  std::vector<ClassicalOptimum> rows;
  rows.reserve(a_grid.size());
  for (double a : a_grid) rows.push_back(classical_optimum(a));
  return rows;
}

inline OperatorMatrix projected_merit_matrix(const RotorBasis& basis, double a) {
  OperatorMatrix f = cos_theta_matrix(basis);
  f.entries -= a * cos_squared_matrix(basis).entries;
  return f;
}

struct Expectations {
  double cos_theta = 0.0;
  double cos2_theta = 0.0;
};

/// cos(theta) and cos^2(theta) matrices for one block, built once and reused.
class ObservableSet {
 public:
  explicit ObservableSet(const RotorBasis& basis)
      : cos_(cos_theta_matrix(basis).entries), cos2_(cos_squared_matrix(basis).entries) {}

  const Eigen::MatrixXd& cos_theta() const { return cos_; }
  const Eigen::MatrixXd& cos2_theta() const { return cos2_; }

  Expectations evaluate(const Eigen::VectorXcd& c) const {
    if (c.size() != cos_.rows()) throw DomainError("state size does not match observable basis");
    return {c.dot(cos_ * c).real(), c.dot(cos2_ * c).real()};
  }

 private:
  Eigen::MatrixXd cos_;
  Eigen::MatrixXd cos2_;
};

inline Expectations expectations(const RotorState& state) {
  return ObservableSet(state.basis).evaluate(state.c);
}

/// Tr[rho O] for the mixture, summed in member order.
inline Expectations expectations(const RotorEnsemble& ensemble) {
  if (ensemble.members.empty()) throw DomainError("empty ensemble");
  std::map<std::tuple<int, int, int, int>, ObservableSet> cache;
  const auto& ref = ensemble.members.front().state.basis;
  Expectations sum;
  for (const auto& mb : ensemble.members) {
    const auto& b = mb.state.basis;
    if (b.kind() != ref.kind() || b.j_cap() != ref.j_cap())
      throw DomainError("ensemble members live in different truncations");
    const auto key = std::make_tuple(int(b.kind()), b.j_cap(), b.k(), b.m());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, ObservableSet(b)).first;
    const auto e = it->second.evaluate(mb.state.c);
    sum.cos_theta += mb.weight * e.cos_theta;
    sum.cos2_theta += mb.weight * e.cos2_theta;
  }
  return sum;
}

struct TargetState {
  RotorBasis basis;
  Eigen::VectorXd coefficients;
  double lambda_max = 0.0;
  double cos_exp = 0.0;
  double cos2_exp = 0.0;
  double a = 0.0;

  RotorState state() const { return RotorState::from_real(basis, coefficients); }
};

namespace detail {

inline void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace detail

/// Top eigenvector of P F P on the m = 0 block with j <= j_max.
///
/// The sign is fixed so that the first coefficient above 1e-10 in magnitude is
/// positive. If the top eigenvalue is degenerate the lexicographically largest
/// sign-fixed eigenvector wins.
inline TargetState target_state(double a, int j_max) {
  MeritParams{a, j_max}.validate();
  const auto basis = RotorBasis::build(RotorKind::linear, j_max, 0);
  const auto f = projected_merit_matrix(basis, a);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.entries);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on projected F");
  const Eigen::Index n = f.size();
  const double top = es.eigenvalues()(n - 1);
  const double tol = 1e-12 * std::max(1.0, std::abs(top));

  Eigen::VectorXd best = es.eigenvectors().col(n - 1);
  detail::fix_sign(best);
  for (Eigen::Index i = n - 2; i >= 0 && top - es.eigenvalues()(i) <= tol; --i) {
    Eigen::VectorXd cand = es.eigenvectors().col(i);
    detail::fix_sign(cand);
    if (std::lexicographical_compare(best.begin(), best.end(), cand.begin(), cand.end()))
      best = cand;
  }

  TargetState t{basis, best, top, 0.0, 0.0, a};
  const auto e = expectations(t.state());
  t.cos_exp = e.cos_theta;
  t.cos2_exp = e.cos2_theta;
  return t;
}

struct TargetScanRow {
  double a = 0.0;
  int j_max = 0;
  double lambda_max = 0.0;
  double cos_exp = 0.0;
  double cos2_exp = 0.0;
};

/// Row-major over (a, j_max) in input order.
inline std::vector<TargetScanRow> target_scan(std::span<const double> a_grid,
                                              std::span<const int> j_grid) {
  std::vector<TargetScanRow> rows;
  rows.reserve(a_grid.size() * j_grid.size());
  for (double a : a_grid)
    for (int j : j_grid) {
      const auto t = target_state(a, j);
      rows.push_back({a, j, t.lambda_max, t.cos_exp, t.cos2_exp});
    }
  return rows;
}

/// Angular probability P(theta) = 2 pi sin(theta) |sum_j c_j Y_j0(theta)|^2
/// of an m = 0 linear-rotor state; integrates to one over [0, pi].
inline std::vector<double> angular_density(const RotorState& state,
                                           std::span<const double> theta_grid) {
  if (state.basis.kind() != RotorKind::linear || state.basis.m() != 0)
    throw UnsupportedInputError("angular density is defined for linear m = 0 states only");
  std::vector<double> p;
  p.reserve(theta_grid.size());
  const Eigen::Index n = state.c.size();
  for (double theta : theta_grid) {
    const double x = std::cos(theta);
    // Legendre recurrence (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}
    double p_prev = 0.0;
    double p_cur = 1.0;
    cplx amp = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      amp += state.c(l) * std::sqrt(2.0 * l + 1.0) * p_cur;
      const double p_next = ((2.0 * l + 1.0) * x * p_cur - l * p_prev) / (l + 1.0);
      p_prev = p_cur;
      p_cur = p_next;
    }
    p.push_back(0.5 * std::sin(theta) * std::norm(amp));
  }
  return p;
}

}  // namespace rotor
