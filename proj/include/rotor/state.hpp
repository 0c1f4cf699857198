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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotor/basis.hpp"
#include "rotor/errors.hpp"

namespace rotor {

using cplx = std::complex<double>;

struct RotorState {
  RotorBasis basis;
  Eigen::VectorXcd c;

  /// Basis state |j> of the block.
  static RotorState basis_state(const RotorBasis& basis, int j) {
    const auto idx = basis.index_of(j);
    if (!idx) throw DomainError("j = " + std::to_string(j) + " is outside " + basis.label());
    RotorState s{basis, Eigen::VectorXcd::Zero(basis.size())};
    s.c(*idx) = 1.0;
    return s;
  }

  static RotorState from_real(const RotorBasis& basis, const Eigen::VectorXd& coeffs) {
    if (coeffs.size() != basis.size()) throw DomainError("coefficient count does not match basis");
    return {basis, coeffs.cast<cplx>()};
  }

  double norm() const { return c.norm(); }

  /// Copy into a larger (or equal) truncation of the same block.
  RotorState embedded(int j_cap) const {
    if (j_cap < basis.j_cap()) throw DomainError("cannot embed into a smaller basis");
    RotorState out{basis.with_j_cap(j_cap), Eigen::VectorXcd::Zero(j_cap - basis.j_min() + 1)};
    out.c.head(c.size()) = c;
    return out;
  }

  /// Population of basis states with j > j_cap - levels.
  double top_population(int levels) const {
    double p = 0.0;
    for (Eigen::Index i = std::max<Eigen::Index>(0, c.size() - levels); i < c.size(); ++i)
      p += std::norm(c(i));
    return p;
  }
};

/// <a|b> over the same block; the shorter truncation is zero-padded.
inline cplx overlap(const RotorState& a, const RotorState& b) {
  if (!a.basis.same_block(b.basis)) return 0.0;
  const Eigen::Index n = std::min(a.c.size(), b.c.size());
  return a.c.head(n).dot(b.c.head(n));
}

/// Initial quantum numbers that label an ensemble member.
struct MemberLabel {
  int j = 0;
  int k = 0;
  int m = 0;

  std::string str() const {
    return "(j=" + std::to_string(j) + ",k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")";
  }
  friend bool operator==(const MemberLabel&, const MemberLabel&) = default;
};

struct EnsembleMember {
  double weight = 0.0;
  MemberLabel label;
  RotorState state;
};

/// Incoherent mixture sum_i w_i |psi_i><psi_i|. Members are kept in
/// descending-weight order.
struct RotorEnsemble {
  std::vector<EnsembleMember> members;
  double temperature_K = 0.0;

  double trace() const {
    double t = 0.0;
    for (const auto& mb : members) t += mb.weight * mb.state.c.squaredNorm();
    return t;
  }
};

}  // namespace rotor
