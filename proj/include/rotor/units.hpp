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

// Conversions from laboratory units into atomic units (hbar = e = m_e = 1).
// All constants are CODATA 2018 recommended values.

#include <cmath>
#include <numbers>
#include <string>

#include "rotor/errors.hpp"

namespace rotor::units {

namespace codata2018 {
/// Hartree energy expressed as a wavenumber, cm^-1.
inline constexpr double hartree_in_wavenumber = 219474.6313632;
/// Atomic unit of electric field, V/m.
inline constexpr double field_au_in_Vm = 5.14220674763e11;
/// Atomic unit of electric dipole moment, C m.
inline constexpr double dipole_au_in_Cm = 8.4783536255e-30;
/// Atomic unit of time, s.
inline constexpr double time_au_in_s = 2.4188843265857e-17;
/// Bohr radius, angstrom.
inline constexpr double bohr_in_angstrom = 0.529177210903;
/// Boltzmann constant, hartree/K.
inline constexpr double boltzmann_hartree_per_K = 3.1668115634556e-6;
inline constexpr double speed_of_light = 299792458.0;           // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
/// 1 D = 1e-21 / c  C m.
inline constexpr double debye_in_Cm = 1e-21 / speed_of_light;
}  // namespace codata2018

inline constexpr double wavenumber_to_hartree = 1.0 / codata2018::hartree_in_wavenumber;
inline constexpr double debye_to_dipole_au = codata2018::debye_in_Cm / codata2018::dipole_au_in_Cm;
inline constexpr double fs_to_time_au = 1e-15 / codata2018::time_au_in_s;
inline constexpr double angstrom3_to_volume_au =
    1.0 / (codata2018::bohr_in_angstrom * codata2018::bohr_in_angstrom *
           codata2018::bohr_in_angstrom);

namespace detail {
inline void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw DomainError(std::string(what) + " must be non-negative");
}
}  // namespace detail

inline double wavenumber_to_au(double cm1) {
  detail::require_nonnegative(cm1, "wavenumber");
  return cm1 * wavenumber_to_hartree;
}

inline double au_to_wavenumber(double hartree) {
  detail::require_nonnegative(hartree, "energy");
  return hartree * codata2018::hartree_in_wavenumber;
}

inline double debye_to_au(double debye) {
  detail::require_nonnegative(debye, "dipole");
  return debye * debye_to_dipole_au;
}

inline double au_to_debye(double dipole) {
  detail::require_nonnegative(dipole, "dipole");
  return dipole / debye_to_dipole_au;
}

/// Peak field of a linearly polarized wave of the given cycle-averaged
/// intensity (W/cm^2): E = sqrt(2 I / (eps0 c)).
inline double intensity_to_field(double w_per_cm2) {
  detail::require_nonnegative(w_per_cm2, "intensity");
  const double si = w_per_cm2 * 1e4;
  const double e_vm =
      std::sqrt(2.0 * si / (codata2018::vacuum_permittivity * codata2018::speed_of_light));
  return e_vm / codata2018::field_au_in_Vm;
}

inline double field_to_intensity(double field_au) {
  detail::require_nonnegative(field_au, "field");
  const double e_vm = field_au * codata2018::field_au_in_Vm;
  return 0.5 * codata2018::vacuum_permittivity * codata2018::speed_of_light * e_vm * e_vm * 1e-4;
}

inline double field_Vm_to_au(double vm) {
  detail::require_nonnegative(vm, "field");
  return vm / codata2018::field_au_in_Vm;
}

inline double field_au_to_Vm(double au) { return au * codata2018::field_au_in_Vm; }

inline double fs_to_au(double fs) {
  detail::require_nonnegative(fs, "duration");
  return fs * fs_to_time_au;
}

inline double au_to_fs(double t) { return t / fs_to_time_au; }

inline double angstrom3_to_au(double a3) {
  detail::require_nonnegative(a3, "polarizability");
  return a3 * angstrom3_to_volume_au;
}

/// k_B T in hartree.
inline double thermal_energy(double kelvin) {
  detail::require_nonnegative(kelvin, "temperature");
  return kelvin * codata2018::boltzmann_hartree_per_K;
}

/// Field-free revival period pi/B of a linear rigid rotor.
inline double rotational_period(double B) {
  if (!(B > 0.0)) throw DomainError("rotational constant must be positive");
  return std::numbers::pi / B;
}

}  // namespace rotor::units
