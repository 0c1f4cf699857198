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

// Truncated rotational bases and the operator matrices acting on them.
//
// A linearly polarized field along z conserves m, and the body-frame
// projection k of a symmetric top is conserved as well, so every basis here
// is a single (k, m) block: states |j,k,m> with max(|k|,|m|) <= j <= j_cap,
// ordered by ascending j.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rotor/errors.hpp"
#include "rotor/molecule.hpp"

namespace rotor {

class RotorBasis {
 public:
  /// The single state |0,0> of a linear rotor.
  RotorBasis() = default;

  static RotorBasis build(RotorKind kind, int j_cap, int m_fixed, int k_fixed = 0) {
    if (j_cap < 0) throw DomainError("j_cap must be non-negative");
    if (std::abs(m_fixed) > j_cap)
      throw DomainError("|m| = " + std::to_string(std::abs(m_fixed)) + " exceeds j_cap = " +
                        std::to_string(j_cap));
    if (kind == RotorKind::linear && k_fixed != 0)
      throw DomainError("linear rotor basis cannot carry k != 0");
    if (std::abs(k_fixed) > j_cap)
      throw DomainError("|k| = " + std::to_string(std::abs(k_fixed)) + " exceeds j_cap = " +
                        std::to_string(j_cap));
    return RotorBasis(kind, j_cap, m_fixed, k_fixed);
  }

  RotorKind kind() const { return kind_; }
  int j_cap() const { return j_cap_; }
  int m() const { return m_; }
  int k() const { return k_; }
  int j_min() const { return std::max(std::abs(m_), std::abs(k_)); }
  Eigen::Index size() const { return j_cap_ - j_min() + 1; }

  int j_at(Eigen::Index i) const { return j_min() + static_cast<int>(i); }

  std::optional<Eigen::Index> index_of(int j) const {
    if (j < j_min() || j > j_cap_) return std::nullopt;
    return static_cast<Eigen::Index>(j - j_min());
  }

  /// Same block with a different truncation.
  RotorBasis with_j_cap(int j_cap) const { return build(kind_, j_cap, m_, k_); }

  bool same_block(const RotorBasis& other) const {
    return kind_ == other.kind_ && m_ == other.m_ && k_ == other.k_;
  }

  friend bool operator==(const RotorBasis&, const RotorBasis&) = default;

  std::string label() const {
    std::string s = std::string(to_string(kind_)) + "(j<=" + std::to_string(j_cap_);
    if (kind_ == RotorKind::symmetric_top) s += ",k=" + std::to_string(k_);
    return s + ",m=" + std::to_string(m_) + ")";
  }

 private:
  RotorBasis(RotorKind kind, int j_cap, int m, int k) : kind_(kind), j_cap_(j_cap), m_(m), k_(k) {}

  RotorKind kind_ = RotorKind::linear;
  int j_cap_ = 0;
  int m_ = 0;
  int k_ = 0;
};

/// Real symmetric matrix of an observable restricted to one basis block.
struct OperatorMatrix {
  RotorBasis basis;
  Eigen::MatrixXd entries;

  Eigen::Index size() const { return entries.rows(); }
  double operator()(Eigen::Index r, Eigen::Index c) const { return entries(r, c); }
};

namespace detail {

// <j+1,k,m| cos(theta) |j,k,m>
inline double cos_theta_raising(int j, int k, int m) {
  const double jp = j + 1.0;
  const double num = (jp * jp - double(k) * k) * (jp * jp - double(m) * m);
  return std::sqrt(num) / (jp * std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0)));
}

// <j,k,m| cos(theta) |j,k,m>, nonzero only for symmetric tops with k*m != 0
inline double cos_theta_diagonal(int j, int k, int m) {
  if (j == 0) return 0.0;
  return double(k) * m / (double(j) * (j + 1.0));
}

}  // namespace detail

inline OperatorMatrix cos_theta_matrix(const RotorBasis& basis) {
  const Eigen::Index n = basis.size();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int j = basis.j_at(i);
    c(i, i) = detail::cos_theta_diagonal(j, basis.k(), basis.m());
    if (i + 1 < n) {
      const double v = detail::cos_theta_raising(j, basis.k(), basis.m());
      c(i + 1, i) = v;
      c(i, i + 1) = v;
    }
  }
  return {basis, std::move(c)};
}

/// cos^2(theta) as the block of C'C', C' being cos(theta) on j_cap + 1.
/// Every intermediate state j'' <= j + 1 is present, so the restriction is
/// exact.
inline OperatorMatrix cos_squared_matrix(const RotorBasis& basis) {
  const Eigen::Index n = basis.size();
  const Eigen::MatrixXd big = cos_theta_matrix(basis.with_j_cap(basis.j_cap() + 1)).entries;
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(n, n);
  // Ascending-l summation makes (r, c) and (c, r) bitwise identical.
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      double acc = 0.0;
      for (Eigen::Index l = 0; l < big.rows(); ++l) acc += big(r, l) * big(l, c);
      sq(r, c) = acc;
    }
  return {basis, std::move(sq)};
}

inline void require_matching_kind(const RotorBasis& basis, const MoleculeParams& params) {
  if (basis.kind() != params.kind)
    throw DomainError(std::string("basis kind ") + to_string(basis.kind()) +
                      " does not match molecule kind " + to_string(params.kind));
}

/// Diagonal of B J^2 + (A - B) J_a^2 in the block.
inline Eigen::VectorXd free_energies(const RotorBasis& basis, const MoleculeParams& params) {
  require_matching_kind(basis, params);
  Eigen::VectorXd e(basis.size());
  const double k2 = double(basis.k()) * basis.k();
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    const double j = basis.j_at(i);
    e(i) = params.B * j * (j + 1.0);
    if (params.kind == RotorKind::symmetric_top) e(i) += (params.A - params.B) * k2;
  }
  return e;
}

inline OperatorMatrix free_hamiltonian(const RotorBasis& basis, const MoleculeParams& params) {
  return {basis, free_energies(basis, params).asDiagonal().toDenseMatrix()};
}

}  // namespace rotor
