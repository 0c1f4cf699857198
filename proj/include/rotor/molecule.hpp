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

#include <optional>
#include <string>

#include "rotor/errors.hpp"

namespace rotor {

enum class RotorKind { linear, symmetric_top };

inline const char* to_string(RotorKind kind) {
  return kind == RotorKind::linear ? "linear" : "symmetric-top";
}

// Molecular constants in atomic units.
struct MoleculeParams {
  std::string name;
  RotorKind kind = RotorKind::linear;
  double B = 0.0;    // rotational constant
  double A = 0.0;    // axial rotational constant, symmetric tops only
  double mu0 = 0.0;  // permanent dipole
  std::optional<double> dalpha;  // alpha_par - alpha_perp

  void validate() const {
    if (!(B > 0.0)) throw DomainError("molecule '" + name + "': B must be positive");
    if (kind == RotorKind::symmetric_top && !(A > 0.0))
      throw DomainError("molecule '" + name + "': symmetric top requires A > 0");
    if (!(mu0 >= 0.0)) throw DomainError("molecule '" + name + "': mu0 must be non-negative");
    if (dalpha && !(*dalpha >= 0.0))
      throw DomainError("molecule '" + name + "': dalpha must be non-negative");
  }
};

}  // namespace rotor
