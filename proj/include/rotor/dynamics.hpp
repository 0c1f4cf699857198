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

// Time propagation of rotor states and thermal ensembles.
//
// Each grid step applies exp(-i H(t_mid) dt) exactly, with H evaluated at the
// interval midpoint and diagonalized in the (small) block. Steps where every
// pulse is outside its support reduce to diagonal phases; those are deferred
// and folded into the next driven step, so field-free stretches cost O(n).
//
// A thermal mixture evolves as independent pure states. Members sharing a
// (k, m) block share the step operators, and members whose block is the
// mirror image (-k, -m) of another have identical coefficients, so they are
// propagated once.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rotor/basis.hpp"
#include "rotor/errors.hpp"
#include "rotor/molecule.hpp"
#include "rotor/pulses.hpp"
#include "rotor/state.hpp"
#include "rotor/units.hpp"

namespace rotor {

/// Uniform grid t_i = t0 + i dt, i = 0..steps.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  int steps = 0;
  double period = 1.0;  // reference for t / T_per

  static TimeGrid over(double t0, double t1, int steps, double period) {
    if (steps < 1) throw DomainError("time grid needs at least one step");
    if (!(t1 > t0)) throw DomainError("time grid must have positive duration");
    if (!(period > 0.0)) throw DomainError("reference period must be positive");
    return {t0, (t1 - t0) / steps, steps, period};
  }

  /// n_periods rotational periods at steps_per_period resolution.
  static TimeGrid periods(double period, double n_periods, int steps_per_period) {
    const int steps = static_cast<int>(std::lround(n_periods * steps_per_period));
    return over(0.0, n_periods * period, steps, period);
  }

  double time(int i) const { return t0 + i * dt; }
  double midpoint(int i) const { return t0 + (i + 0.5) * dt; }
  double end() const { return time(steps); }
};

struct Trajectory {
  double period = 1.0;
  std::vector<double> t;
  std::vector<double> cos_theta;
  std::vector<double> cos2_theta;
  std::vector<double> norm;  // state norm, or ensemble trace

  std::size_t size() const { return t.size(); }
  double t_over_period(std::size_t i) const { return t[i] / period; }

  static Trajectory zeros(const TimeGrid& grid) {
    Trajectory tr;
    tr.period = grid.period;
    const auto n = static_cast<std::size_t>(grid.steps) + 1;
    tr.t.resize(n);
    for (std::size_t i = 0; i < n; ++i) tr.t[i] = grid.time(static_cast<int>(i));
    tr.cos_theta.assign(n, 0.0);
    tr.cos2_theta.assign(n, 0.0);
    tr.norm.assign(n, 0.0);
    return tr;
  }
};

struct PropagationOptions {
  // Largest population tolerated in the two highest j levels of a block.
  double overflow_threshold = 1e-6;
  // Largest tolerated |norm - 1| of any member.
  double norm_tolerance = 1e-6;
};

/// Eigen-decomposition H = W diag(lambda) W^T of one step Hamiltonian.
struct StepSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  /// psi <- exp(-i H dt) psi, columnwise.
  template <typename Derived>
  void apply(Eigen::MatrixBase<Derived>& psi, double dt) const {
    Eigen::MatrixXcd tmp = vectors.transpose().cast<cplx>() * psi;
    for (Eigen::Index a = 0; a < values.size(); ++a)
      tmp.row(a) *= std::polar(1.0, -values(a) * dt);
    psi = vectors.cast<cplx>() * tmp;
  }
};

/// Time-dependent Hamiltonian of one (k, m) block:
/// H(t) = H_rot - mu0 E(t) cos(theta) - (dalpha / 4) E_env(t)^2 cos^2(theta).
class BlockHamiltonian {
 public:
  BlockHamiltonian(const RotorBasis& basis, const MoleculeParams& params)
      : basis_(basis), params_(params), energies_(free_energies(basis, params)) {
    const auto c = cos_theta_matrix(basis).entries;
    cos_diag_ = c.diagonal();
    const Eigen::Index n = basis.size();
    cos_sub_ = n > 1 ? Eigen::VectorXd(c.diagonal(-1)) : Eigen::VectorXd();
    cos_ = c;
    cos2_ = cos_squared_matrix(basis).entries;
  }

  const RotorBasis& basis() const { return basis_; }
  const MoleculeParams& params() const { return params_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXd& cos_theta() const { return cos_; }
  const Eigen::MatrixXd& cos2_theta() const { return cos2_; }

  static bool is_free(const FieldValue& f) { return f.thz == 0.0 && f.laser_sq == 0.0; }

  Eigen::MatrixXd matrix(const FieldValue& f) const {
    Eigen::MatrixXd h = energies_.asDiagonal();
    h -= params_.mu0 * f.thz * cos_;
    if (f.laser_sq != 0.0) h -= 0.25 * laser_dalpha() * f.laser_sq * cos2_;
    return h;
  }

  StepSpectrum diagonalize(const FieldValue& f) const {
    const Eigen::Index n = basis_.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (f.laser_sq == 0.0 && n > 1) {
      // Dipole coupling alone keeps H tridiagonal.
      const double g = params_.mu0 * f.thz;
      Eigen::VectorXd d = energies_ - g * cos_diag_;
      Eigen::VectorXd s = -g * cos_sub_;
      es.computeFromTridiagonal(d, s, Eigen::ComputeEigenvectors);
    } else {
      es.compute(matrix(f), Eigen::ComputeEigenvectors);
    }
    if (es.info() != Eigen::Success)
      throw NumericError("eigensolver failed for step Hamiltonian in " + basis_.label());
    return {es.eigenvalues(), es.eigenvectors()};
  }

 private:
  double laser_dalpha() const {
    if (!params_.dalpha)
      throw DomainError("molecule '" + params_.name +
                        "' has no polarizability anisotropy; laser kicks need dalpha");
    return *params_.dalpha;
  }

  RotorBasis basis_;
  MoleculeParams params_;
  Eigen::VectorXd energies_;
  Eigen::VectorXd cos_diag_;
  Eigen::VectorXd cos_sub_;
  Eigen::MatrixXd cos_;
  Eigen::MatrixXd cos2_;
};

namespace detail {

// Diagonals 0..2 of a symmetric band matrix.
struct Band {
  std::array<Eigen::VectorXd, 3> diag;

  explicit Band(const Eigen::MatrixXd& m) {
    for (int d = 0; d < 3; ++d) {
      const Eigen::Index len = std::max<Eigen::Index>(0, m.rows() - d);
      diag[d] = len > 0 ? Eigen::VectorXd(m.diagonal(d)) : Eigen::VectorXd();
    }
  }
};

// Weighted band of the block density matrix, B_d(i) = sum_w w conj(psi_i) psi_{i+d},
// advanced through field-free time by per-element phase factors.
class BandDensity {
 public:
  BandDensity(const Eigen::VectorXd& energies, double dt) : energies_(energies), dt_(dt) {
    const Eigen::Index n = energies.size();
    for (int d = 0; d < 3; ++d) {
      const Eigen::Index len = std::max<Eigen::Index>(0, n - d);
      rho_[d] = Eigen::VectorXcd::Zero(len);
      base_[d] = Eigen::VectorXcd::Zero(len);
      step_[d] = Eigen::VectorXcd(len);
      for (Eigen::Index i = 0; i < len; ++i)
        step_[d](i) = std::polar(1.0, -(energies(i + d) - energies(i)) * dt);
    }
  }

  void reset(const Eigen::MatrixXcd& psi, const Eigen::VectorXd& weights) {
    for (int d = 0; d < 3; ++d) {
      base_[d].setZero();
      for (Eigen::Index col = 0; col < psi.cols(); ++col)
        for (Eigen::Index i = 0; i < base_[d].size(); ++i)
          base_[d](i) += weights(col) * std::conj(psi(i, col)) * psi(i + d, col);
      rho_[d] = base_[d];
    }
    free_steps_ = 0;
  }

  void advance_free_step() {
    ++free_steps_;
    if (free_steps_ % resync_interval == 0) {
      const double tau = free_steps_ * dt_;
      for (int d = 1; d < 3; ++d)
        for (Eigen::Index i = 0; i < rho_[d].size(); ++i)
          rho_[d](i) = base_[d](i) * std::polar(1.0, -(energies_(i + d) - energies_(i)) * tau);
    } else {
      for (int d = 1; d < 3; ++d) rho_[d].array() *= step_[d].array();
    }
  }

  double expectation(const Band& op) const {
    double v = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double mult = d == 0 ? 1.0 : 2.0;
      for (Eigen::Index i = 0; i < rho_[d].size(); ++i) v += mult * op.diag[d](i) * rho_[d](i).real();
    }
    return v;
  }

 private:
  static constexpr int resync_interval = 256;
  Eigen::VectorXd energies_;
  double dt_;
  long free_steps_ = 0;
  std::array<Eigen::VectorXcd, 3> rho_;
  std::array<Eigen::VectorXcd, 3> base_;
  std::array<Eigen::VectorXcd, 3> step_;
};

// Evolves the columns of psi (all in one block) across the grid, adding the
// weighted expectations into traj. Column labels tag error messages.
inline void evolve_block(const BlockHamiltonian& ham, Eigen::MatrixXcd& psi,
                         const Eigen::VectorXd& weights, const std::vector<std::string>& labels,
                         const PulseSequence& seq, const TimeGrid& grid,
                         const PropagationOptions& opt, Trajectory* traj) {
  const Eigen::Index n = psi.rows();
  const Band cos_band(ham.cos_theta());
  const Band cos2_band(ham.cos2_theta());
  BandDensity band(ham.energies(), grid.dt);
  double trace = 0.0;

  auto check = [&](double t) {
    trace = 0.0;
    for (Eigen::Index col = 0; col < psi.cols(); ++col) {
      const double nrm = psi.col(col).norm();
      if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > opt.norm_tolerance)
        throw NumericError("norm drift " + std::to_string(nrm - 1.0) + " at t = " +
                           std::to_string(t) + " for " + labels[col] + " in " +
                           ham.basis().label());
      const Eigen::Index top = std::min<Eigen::Index>(2, n);
      const double pop = psi.col(col).tail(top).squaredNorm();
      if (pop > opt.overflow_threshold)
        throw BasisOverflowError("population " + std::to_string(pop) +
                                 " in the two highest j levels at t = " + std::to_string(t) +
                                 " for " + labels[col] + " in " + ham.basis().label() +
                                 "; increase j_cap");
      trace += weights(col) * nrm * nrm;
    }
    if (traj) band.reset(psi, weights);
  };

  auto record = [&](int i) {
    if (!traj) return;
    traj->cos_theta[i] += band.expectation(cos_band);
    traj->cos2_theta[i] += band.expectation(cos2_band);
    traj->norm[i] += trace;
  };

  check(grid.t0);
  record(0);
  long pending = 0;  // free steps not yet applied to psi
  for (int i = 0; i < grid.steps; ++i) {
    const FieldValue f = seq.at(grid.midpoint(i));
    if (BlockHamiltonian::is_free(f)) {
      ++pending;
      if (traj) band.advance_free_step();
    } else {
      if (pending > 0) {
        const double tau = pending * grid.dt;
        for (Eigen::Index r = 0; r < n; ++r)
          psi.row(r) *= std::polar(1.0, -ham.energies()(r) * tau);
        pending = 0;
      }
      ham.diagonalize(f).apply(psi, grid.dt);
      check(grid.time(i + 1));
    }
    record(i + 1);
  }
  if (pending > 0) {
    const double tau = pending * grid.dt;
    for (Eigen::Index r = 0; r < n; ++r) psi.row(r) *= std::polar(1.0, -ham.energies()(r) * tau);
  }
}

}  // namespace detail

struct PropagationResult {
  RotorState state;
  Trajectory trajectory;
};

/// Schrodinger propagation of one state under the pulse sequence.
inline PropagationResult propagate(const RotorState& initial, const MoleculeParams& params,
                                   const PulseSequence& seq, const TimeGrid& grid,
                                   const PropagationOptions& opt = {}) {
  params.validate();
  const BlockHamiltonian ham(initial.basis, params);
  Eigen::MatrixXcd psi = initial.c;
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(1);
  auto traj = Trajectory::zeros(grid);
  detail::evolve_block(ham, psi, w, {"state"}, seq, grid, opt, &traj);
  return {RotorState{initial.basis, psi.col(0)}, std::move(traj)};
}

/// Exact field-free evolution, c_j <- c_j exp(-i E_j t).
inline RotorState free_evolve(const RotorState& state, const MoleculeParams& params, double t) {
  const Eigen::VectorXd e = free_energies(state.basis, params);
  RotorState out = state;
  for (Eigen::Index i = 0; i < e.size(); ++i) out.c(i) *= std::polar(1.0, -e(i) * t);
  return out;
}

struct ThermalOptions {
  double weight_tail = 1e-6;
  // Statistical weight 2 for k = 0 mod 3, 1 otherwise (C3v tops, three
  // equivalent spin-1/2 nuclei).
  bool nuclear_spin_weights = false;
};

/// Boltzmann mixture of |j,k,m> states, truncated once the retained weight
/// reaches 1 - weight_tail, then renormalized. Members are sorted by
/// descending weight, ties by ascending (j, k, m).
inline RotorEnsemble boltzmann_ensemble(const MoleculeParams& params, double temperature_K,
                                        int j_cap, const ThermalOptions& opt = {}) {
  params.validate();
  if (!(temperature_K >= 0.0)) throw DomainError("temperature must be non-negative");
  if (!(opt.weight_tail > 0.0 && opt.weight_tail < 1.0))
    throw DomainError("weight_tail must lie in (0, 1)");
  if (j_cap < 2) throw DomainError("thermal ensembles need j_cap >= 2");
  const bool top = params.kind == RotorKind::symmetric_top;

  RotorEnsemble ens;
  ens.temperature_K = temperature_K;
  if (temperature_K == 0.0) {
    const auto b = RotorBasis::build(params.kind, j_cap, 0, 0);
    ens.members.push_back({1.0, {0, 0, 0}, RotorState::basis_state(b, 0)});
    return ens;
  }

  const double kT = units::thermal_energy(temperature_K);
  auto energy = [&](int j, int k) {
    double e = params.B * j * (j + 1.0);
    if (top) e += (params.A - params.B) * double(k) * k;
    return e;
  };
  auto spin_weight = [&](int k) {
    return (top && opt.nuclear_spin_weights && k % 3 == 0) ? 2.0 : 1.0;
  };

  // Energy of the lowest level; weights are taken relative to it.
  double e_min = energy(0, 0);
  struct Level {
    double w;
    int j, k;
  };
  std::vector<Level> levels;
  double z = 0.0;
  for (int j = 0;; ++j) {
    double shell = 0.0;
    const int kmax = top ? j : 0;
    for (int k = -kmax; k <= kmax; ++k) {
      const double w = spin_weight(k) * std::exp(-(energy(j, k) - e_min) / kT);
      if (w > 0.0) levels.push_back({w, j, k});
      shell += w * (2 * j + 1);
    }
    z += shell;
    if (j > 2 && shell < 1e-18 * z) break;
    if (j > 100000) throw NumericError("partition function did not converge");
  }

  struct Candidate {
    double w;
    MemberLabel label;
  };
  std::vector<Candidate> cands;
  for (const auto& lv : levels)
    for (int m = -lv.j; m <= lv.j; ++m) cands.push_back({lv.w / z, {lv.j, lv.k, m}});
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.w != b.w) return a.w > b.w;
    return std::tie(a.label.j, a.label.k, a.label.m) < std::tie(b.label.j, b.label.k, b.label.m);
  });

  double kept = 0.0;
  std::size_t count = 0;
  while (count < cands.size() && kept < 1.0 - opt.weight_tail) kept += cands[count++].w;
  // Finish the degenerate group so that mirror partners are kept together.
  while (count < cands.size() && cands[count].w == cands[count - 1].w) kept += cands[count++].w;

  for (std::size_t i = 0; i < count; ++i) {
    const auto& c = cands[i];
    if (c.label.j > j_cap - 2)
      throw BasisOverflowError("thermal population at j = " + std::to_string(c.label.j) +
                               " needs j_cap >= " + std::to_string(c.label.j + 2) +
                               " (have " + std::to_string(j_cap) + ")");
    const auto b = RotorBasis::build(params.kind, j_cap, c.label.m, c.label.k);
    ens.members.push_back({c.w / kept, c.label, RotorState::basis_state(b, c.label.j)});
  }
  return ens;
}

struct EnsembleResult {
  RotorEnsemble ensemble;
  Trajectory trajectory;
};

/// von Neumann evolution of an incoherent mixture, realized member by member.
inline EnsembleResult propagate_ensemble(const RotorEnsemble& ensemble,
                                         const MoleculeParams& params, const PulseSequence& seq,
                                         const TimeGrid& grid, const PropagationOptions& opt = {}) {
  params.validate();
  if (ensemble.members.empty()) throw DomainError("empty ensemble");
  const auto& ref = ensemble.members.front().state.basis;
  for (const auto& mb : ensemble.members) {
    if (mb.state.basis.kind() != ref.kind() || mb.state.basis.j_cap() != ref.j_cap())
      throw DomainError("ensemble members must share kind and j_cap");
    if (!(mb.weight > 0.0)) throw DomainError("ensemble weights must be positive");
  }

  // (k, m) and (-k, -m) blocks carry identical matrices.
  auto canonical = [](int k, int m) {
    if (k < 0 || (k == 0 && m < 0)) return std::make_pair(-k, -m);
    return std::make_pair(k, m);
  };

  struct Column {
    Eigen::VectorXcd c;
    double weight;
    std::vector<std::size_t> members;
  };
  struct Block {
    double lead_weight;
    std::pair<int, int> km;
    std::vector<Column> columns;
  };
  std::map<std::pair<int, int>, std::size_t> block_index;
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const auto& mb = ensemble.members[i];
    const auto key = canonical(mb.state.basis.k(), mb.state.basis.m());
    auto it = block_index.find(key);
    if (it == block_index.end()) {
      it = block_index.emplace(key, blocks.size()).first;
      blocks.push_back({mb.weight, key, {}});
    }
    Block& blk = blocks[it->second];
    blk.lead_weight = std::max(blk.lead_weight, mb.weight);
    auto col = std::find_if(blk.columns.begin(), blk.columns.end(),
                            [&](const Column& c) { return c.c == mb.state.c; });
    if (col == blk.columns.end()) {
      blk.columns.push_back({mb.state.c, mb.weight, {i}});
    } else {
      col->weight += mb.weight;
      col->members.push_back(i);
    }
  }
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.lead_weight > b.lead_weight; });

  auto traj = Trajectory::zeros(grid);
  EnsembleResult out{ensemble, {}};
  for (const auto& blk : blocks) {
    const auto basis = RotorBasis::build(ref.kind(), ref.j_cap(), blk.km.second, blk.km.first);
    const BlockHamiltonian ham(basis, params);
    Eigen::MatrixXcd psi(basis.size(), static_cast<Eigen::Index>(blk.columns.size()));
    Eigen::VectorXd w(psi.cols());
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < blk.columns.size(); ++c) {
      psi.col(c) = blk.columns[c].c;
      w(c) = blk.columns[c].weight;
      labels.push_back("member " + ensemble.members[blk.columns[c].members.front()].label.str());
    }
    detail::evolve_block(ham, psi, w, labels, seq, grid, opt, &traj);
    for (std::size_t c = 0; c < blk.columns.size(); ++c)
      for (std::size_t idx : blk.columns[c].members) out.ensemble.members[idx].state.c = psi.col(c);
  }
  out.trajectory = std::move(traj);
  return out;
}

}  // namespace rotor
