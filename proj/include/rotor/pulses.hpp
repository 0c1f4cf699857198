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

// Analytic field envelopes and pulse sequences, all in atomic units.
//
// THz transients couple through the permanent dipole, -mu0 cos(theta) E(t).
// A nonresonant laser pulse couples through the polarizability anisotropy,
// cycle-averaged to -(1/4) dalpha E_env(t)^2 cos^2(theta); its channel carries
// E_env^2 directly.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotor/errors.hpp"
#include "rotor/units.hpp"

namespace rotor {

enum class PulseShape { gaussian_thz, hcp, single_cycle, laser_kick };

inline const char* to_string(PulseShape s) {
  switch (s) {
    case PulseShape::gaussian_thz: return "gaussian-thz";
    case PulseShape::hcp: return "hcp";
    case PulseShape::single_cycle: return "single-cycle";
    case PulseShape::laser_kick: return "laser-kick";
  }
  return "?";
}

inline PulseShape parse_pulse_shape(const std::string& s) {
  if (s == "gaussian-thz") return PulseShape::gaussian_thz;
  if (s == "hcp") return PulseShape::hcp;
  if (s == "single-cycle") return PulseShape::single_cycle;
  if (s == "laser-kick") return PulseShape::laser_kick;
  throw DomainError("unknown pulse shape '" + s + "'");
}

inline constexpr double fwhm_per_sigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

inline double sigma_from_fwhm(double fwhm) { return fwhm / fwhm_per_sigma; }
inline double fwhm_from_sigma(double sigma) { return sigma * fwhm_per_sigma; }

/// Envelopes vanish identically beyond this many widths from the center
/// (relative amplitude there is below 2e-14).
inline constexpr double support_sigmas = 8.0;

struct PulseSpec {
  PulseShape shape = PulseShape::gaussian_thz;
  // Field amplitude; for laser-kick the peak of E_env^2.
  double peak = 0.0;
  double center = 0.0;
  // Gaussian sigma of the field (THz shapes) or of E_env^2 (laser-kick).
  double width = 1.0;
  // Sign of the THz lobe; lets a pulse train alternate polarity.
  double polarity = 1.0;

  void validate() const {
    if (!(peak >= 0.0)) throw DomainError("pulse peak must be non-negative");
    if (!(width > 0.0)) throw DomainError("pulse width must be positive");
    if (polarity != 1.0 && polarity != -1.0) throw DomainError("pulse polarity must be +1 or -1");
  }

  bool is_thz() const { return shape != PulseShape::laser_kick; }

  double support_begin() const { return center - support_sigmas * width; }
  double support_end() const { return center + support_sigmas * width; }

  double value(double t) const {
    const double x = (t - center) / width;
    if (std::abs(x) > support_sigmas) return 0.0;
    const double g = std::exp(-0.5 * x * x);
    switch (shape) {
      case PulseShape::gaussian_thz:
      case PulseShape::hcp:
      case PulseShape::laser_kick:
        return polarity * peak * g;
      case PulseShape::single_cycle:
        // Derivative of a Gaussian scaled so its extremum equals peak.
        return -polarity * peak * x * g * std::exp(0.5);
    }
    return 0.0;
  }
};

/// Piecewise-constant THz samples: values[i] holds on [t0 + i dt, t0 + (i+1) dt).
struct FieldSamples {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  double at(double t) const {
    const double s = (t - t0) / dt;
    if (s < 0.0) return 0.0;
    const auto i = static_cast<std::size_t>(s);
    return i < values.size() ? values[i] : 0.0;
  }
  double end() const { return t0 + dt * static_cast<double>(values.size()); }
};

struct FieldValue {
  double thz = 0.0;      // E(t)
  double laser_sq = 0.0; // E_env(t)^2
};

struct PulseSequence {
  std::vector<PulseSpec> pulses;
  // Replaces every THz pulse when present; laser kicks still apply.
  std::optional<FieldSamples> override_thz;

  FieldValue at(double t) const {
    FieldValue f;
    for (const auto& p : pulses) {
      if (p.is_thz()) {
        if (!override_thz) f.thz += p.value(t);
      } else {
        f.laser_sq += p.value(t);
      }
    }
    if (override_thz) f.thz = override_thz->at(t);
    return f;
  }

  bool has_laser() const {
    for (const auto& p : pulses)
      if (!p.is_thz() && p.peak > 0.0) return true;
    return false;
  }
};

inline FieldValue field_at(const PulseSequence& seq, double t) { return seq.at(t); }

/// Gaussian THz guess: centered at T_per / 5, sigma = pi / (50 B), peak field
/// of a 20 TW/cm^2 wave.
inline PulseSpec paper_guess_pulse(double T_per, double B) {
  if (!(B > 0.0)) throw DomainError("rotational constant must be positive");
  PulseSpec p;
  p.shape = PulseShape::gaussian_thz;
  p.center = T_per / 5.0;
  p.width = std::numbers::pi / (50.0 * B);
  p.peak = units::intensity_to_field(20e12);
  return p;
}

struct BipulseSettings {
  double laser_peak_field = 0.0;  // E_env peak, a.u.
  double laser_fwhm = 0.0;        // intensity FWHM, a.u.
  double kick_peak = 0.0;         // a.u.
  double kick_fwhm = 0.0;         // a.u.
  PulseShape kick_shape = PulseShape::hcp;
};

/// Laser kick followed, a quarter period later, by a THz kick.
/// The laser sits 4 sigma after t = 0 so its envelope starts inside the window.
inline PulseSequence bipulse_sequence(double T_per, const BipulseSettings& s) {
  if (!(T_per > 0.0)) throw DomainError("rotational period must be positive");
  if (s.kick_shape == PulseShape::laser_kick)
    throw DomainError("the second pulse of a bipulse must be a THz shape");
  PulseSpec laser;
  laser.shape = PulseShape::laser_kick;
  laser.peak = s.laser_peak_field * s.laser_peak_field;
  laser.width = sigma_from_fwhm(s.laser_fwhm);
  laser.center = 4.0 * laser.width;
  laser.validate();

  PulseSpec kick;
  kick.shape = s.kick_shape;
  kick.peak = s.kick_peak;
  kick.width = sigma_from_fwhm(s.kick_fwhm);
  kick.center = laser.center + T_per / 4.0;
  kick.validate();
  return {{laser, kick}, std::nullopt};
}

/// Replace the THz kick of a bipulse with a train at
/// t_laser + T_per/4 + n T_per/2; negative amplitudes flip polarity.
inline PulseSequence hcp_train_sequence(const PulseSequence& base, int n_kicks,
                                        std::span<const double> amplitudes) {
  if (n_kicks < 1) throw DomainError("a pulse train needs at least one kick");
  if (amplitudes.size() != static_cast<std::size_t>(n_kicks))
    throw DomainError("expected " + std::to_string(n_kicks) + " amplitudes, got " +
                      std::to_string(amplitudes.size()));
  const PulseSpec* laser = nullptr;
  const PulseSpec* kick = nullptr;
  for (const auto& p : base.pulses) {
    if (!p.is_thz() && !laser) laser = &p;
    if (p.is_thz() && !kick) kick = &p;
  }
  if (!laser || !kick) throw DomainError("pulse train base must hold a laser kick and a THz kick");
  const double quarter = kick->center - laser->center;
  if (!(quarter > 0.0)) throw DomainError("THz kick must follow the laser kick");
  const double T_per = 4.0 * quarter;

  PulseSequence out;
  out.pulses.push_back(*laser);
  for (int n = 0; n < n_kicks; ++n) {
    PulseSpec p = *kick;
    p.peak = std::abs(amplitudes[n]);
    p.polarity = amplitudes[n] < 0.0 ? -1.0 : 1.0;
    p.center = kick->center + n * (T_per / 2.0);
    out.pulses.push_back(p);
  }
  return out;
}

}  // namespace rotor
