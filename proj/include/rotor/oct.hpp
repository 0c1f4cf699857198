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

// Gradient-ascent optimal control of the THz field.
//
// The control is one field value per grid step (piecewise constant). The
// figure of merit is the projection F = |<psi_T|psi(T)>|^2 of the state grown
// from |0,0>, and its gradient is the exact derivative of the discretized
// propagation: forward sweep, backward costate sweep, and the Frechet
// derivative of each step exponential taken in that step's eigenbasis.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotor/basis.hpp"
#include "rotor/dynamics.hpp"
#include "rotor/errors.hpp"
#include "rotor/pulses.hpp"
#include "rotor/targets.hpp"
#include "rotor/units.hpp"

namespace rotor {

struct OctProblem {
  MoleculeParams params;
  TargetState target;
  double horizon = 0.0;
  int steps = 4096;
  int j_cap = 40;  // propagation truncation, >= target j_max
  PulseSpec guess;
  std::optional<double> field_bound;
  double penalty = 0.0;  // weight of sum_k E_k^2 dt
  double target_fidelity = 0.99;
  int max_iterations = 5000;
  PropagationOptions propagation;

  static OctProblem standard(const MoleculeParams& params, const TargetState& target, int j_cap) {
    OctProblem p;
    p.params = params;
    p.target = target;
    p.horizon = units::rotational_period(params.B);
    p.j_cap = j_cap;
    p.guess = paper_guess_pulse(p.horizon, params.B);
    return p;
  }

  void validate() const {
    params.validate();
    if (!(horizon > 0.0)) throw DomainError("OCT horizon must be positive");
    if (steps < 256) throw DomainError("OCT grid needs at least 256 steps");
    if (j_cap < target.basis.j_cap()) throw DomainError("OCT j_cap is below the target j_max");
    if (params.kind != RotorKind::linear) throw DomainError("OCT is set up for linear rotors");
    if (field_bound && !(*field_bound >= 0.0)) throw DomainError("field bound must be >= 0");
    if (!(penalty >= 0.0)) throw DomainError("penalty must be non-negative");
    if (max_iterations < 0) throw DomainError("max_iterations must be non-negative");
  }

  double dt() const { return horizon / steps; }
  TimeGrid grid() const { return TimeGrid::over(0.0, horizon, steps, units::rotational_period(params.B)); }
  RotorBasis basis() const { return RotorBasis::build(RotorKind::linear, j_cap, 0); }

  /// Guess field sampled at step midpoints, clipped to the bound.
  std::vector<double> initial_field() const {
    std::vector<double> e(static_cast<std::size_t>(steps));
    const auto g = grid();
    for (int k = 0; k < steps; ++k) e[k] = clip(guess.value(g.midpoint(k)));
    return e;
  }

  double clip(double e) const {
    if (!field_bound) return e;
    return std::clamp(e, -*field_bound, *field_bound);
  }

  FieldSamples samples(const std::vector<double>& field) const { return {0.0, dt(), field}; }
};

namespace detail {

class OctEngine {
 public:
  explicit OctEngine(const OctProblem& p)
      : p_(p), ham_(p.basis(), p.params), target_(p.target.state().embedded(p.j_cap).c) {}

  // Fills the per-step spectra and states; returns <psi_T|psi(T)>.
  cplx forward(const std::vector<double>& field, bool keep) {
    if (field.size() != static_cast<std::size_t>(p_.steps))
      throw DomainError("field has " + std::to_string(field.size()) + " samples, expected " +
                        std::to_string(p_.steps));
    const Eigen::Index n = ham_.basis().size();
    Eigen::MatrixXcd psi = Eigen::VectorXcd::Unit(n, 0);
    if (keep) {
      spectra_.resize(field.size());
      states_.resize(field.size());
    }
    const double dt = p_.dt();
    for (std::size_t k = 0; k < field.size(); ++k) {
      StepSpectrum s = ham_.diagonalize({field[k], 0.0});
      if (keep) states_[k] = psi.col(0);
      s.apply(psi, dt);
      guard(psi.col(0), k);
      if (keep) spectra_[k] = std::move(s);
    }
    final_ = psi.col(0);
    return target_.dot(final_);
  }

  // Requires a preceding forward(field, true).
  std::vector<double> gradient(const std::vector<double>& field) const {
    const Eigen::Index n = ham_.basis().size();
    const double dt = p_.dt();
    const cplx z = target_.dot(final_);
    std::vector<double> g(field.size());
    Eigen::VectorXcd chi = target_;
    const Eigen::MatrixXd& cmat = ham_.cos_theta();
    Eigen::MatrixXcd phi(n, n);
    for (std::size_t kk = field.size(); kk-- > 0;) {
      const StepSpectrum& s = spectra_[kk];
      const Eigen::MatrixXd& w = s.vectors;
      const Eigen::VectorXcd chi_t = w.transpose() * chi;
      const Eigen::VectorXcd psi_t = w.transpose() * states_[kk];
      const Eigen::MatrixXd c_t = w.transpose() * (cmat * w);
      // d exp(-i H dt) / dH in the eigenbasis: divided differences of exp(-i lambda dt)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index a = 0; a < n; ++a) {
          const double half = 0.5 * (s.values(a) - s.values(b)) * dt;
          const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
          phi(a, b) = cplx(0.0, -dt) * std::polar(1.0, -0.5 * (s.values(a) + s.values(b)) * dt) * sinc;
        }
      // dH/dE = -mu0 cos(theta)
      const cplx d = -p_.params.mu0 * chi_t.dot((c_t.cast<cplx>().cwiseProduct(phi)) * psi_t);
      g[kk] = 2.0 * (std::conj(z) * d).real() - 2.0 * p_.penalty * field[kk] * dt;
      // chi <- U_k^dagger chi
      Eigen::VectorXcd tmp = chi_t;
      for (Eigen::Index a = 0; a < n; ++a) tmp(a) *= std::polar(1.0, s.values(a) * dt);
      chi = w * tmp;
    }
    return g;
  }

  const Eigen::VectorXcd& final_state() const { return final_; }

 private:
  void guard(const Eigen::VectorXcd& psi, std::size_t k) const {
    const double pop = psi.tail(std::min<Eigen::Index>(2, psi.size())).squaredNorm();
    if (pop > p_.propagation.overflow_threshold)
      throw BasisOverflowError("OCT propagation reached j_cap = " + std::to_string(p_.j_cap) +
                               " at step " + std::to_string(k) + " (population " +
                               std::to_string(pop) + "); increase j_cap");
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > p_.propagation.norm_tolerance)
      throw NumericError("norm drift in OCT propagation at step " + std::to_string(k));
  }

  const OctProblem& p_;
  BlockHamiltonian ham_;
  Eigen::VectorXcd target_;
  Eigen::VectorXcd final_;
  std::vector<StepSpectrum> spectra_;
  std::vector<Eigen::VectorXcd> states_;
};

inline double fluence(const std::vector<double>& field, double dt) {
  double s = 0.0;
  for (double e : field) s += e * e;
  return s * dt;
}

}  // namespace detail

/// |<psi_T|psi(T)>|^2 for psi(0) = |0,0>.
inline double fidelity(const std::vector<double>& field, const OctProblem& problem) {
  problem.validate();
  detail::OctEngine eng(problem);
  return std::norm(eng.forward(field, false));
}

/// d(F - penalty * fluence)/dE_k for every step k.
inline std::vector<double> gradient(const std::vector<double>& field, const OctProblem& problem) {
  problem.validate();
  detail::OctEngine eng(problem);
  eng.forward(field, true);
  return eng.gradient(field);
}

enum class OctStatus { converged, max_iterations, step_underflow };

inline const char* to_string(OctStatus s) {
  switch (s) {
    case OctStatus::converged: return "converged";
    case OctStatus::max_iterations: return "max-iterations";
    case OctStatus::step_underflow: return "step-underflow";
  }
  return "?";
}

struct OctResult {
  std::vector<double> field;
  double fidelity = 0.0;
  int iterations = 0;
  std::vector<double> fidelity_history;
  OctStatus status = OctStatus::max_iterations;
  double dt = 0.0;

  bool converged() const { return status == OctStatus::converged; }
};

struct OctObserver {
  virtual ~OctObserver() = default;
  virtual void on_iteration(int /*iteration*/, double /*fidelity*/, double /*step*/) {}
};

/// Gradient ascent with backtracking from the sampled guess pulse.
///
/// A trial step is accepted only if it raises the objective, so the history
/// is nondecreasing. The step length doubles after an acceptance and halves
/// on a rejection; a trial that overflows the basis counts as a rejection.
inline OctResult optimize(const OctProblem& problem, OctObserver* observer = nullptr) {
  problem.validate();
  detail::OctEngine eng(problem);
  const double dt = problem.dt();

  OctResult res;
  res.dt = dt;
  std::vector<double> x = problem.initial_field();
  double fid = std::norm(eng.forward(x, true));
  double obj = fid - problem.penalty * detail::fluence(x, dt);
  res.fidelity_history.push_back(fid);

  auto finish = [&](OctStatus st) {
    res.field = x;
    res.fidelity = fid;
    res.status = st;
    return res;
  };
  if (fid >= problem.target_fidelity) return finish(OctStatus::converged);

  std::vector<double> g = eng.gradient(x);
  double scale = 0.0;
  for (double e : x) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = problem.field_bound.value_or(problem.guess.peak);
  if (scale == 0.0) scale = 1e-3;
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  double step = gmax > 0.0 ? 0.05 * scale / gmax : 1.0;
  const double min_step = step * 1e-12;

  std::vector<double> trial(x.size());
  for (int it = 1; it <= problem.max_iterations; ++it) {
    bool accepted = false;
    while (step >= min_step) {
      bool moved = false;
      for (std::size_t k = 0; k < x.size(); ++k) {
        trial[k] = problem.clip(x[k] + step * g[k]);
        moved = moved || trial[k] != x[k];
      }
      if (!moved) {
        step = 0.0;
        break;
      }
      double tfid = -1.0;
      try {
        tfid = std::norm(eng.forward(trial, true));
      } catch (const BasisOverflowError&) {
        tfid = -1.0;
      }
      const double tobj = tfid - problem.penalty * detail::fluence(trial, dt);
      if (tfid >= 0.0 && tobj > obj) {
        x.swap(trial);
        fid = tfid;
        obj = tobj;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Restore the state of the engine for the best-so-far field.
      eng.forward(x, false);
      return finish(OctStatus::step_underflow);
    }
    res.iterations = it;
    res.fidelity_history.push_back(fid);
    if (observer) observer->on_iteration(it, fid, step);
    if (fid >= problem.target_fidelity) return finish(OctStatus::converged);
    g = eng.gradient(x);
    step *= 2.0;
  }
  return finish(OctStatus::max_iterations);
}

}  // namespace rotor
