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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "rotor/dynamics.hpp"
#include "rotor/errors.hpp"

namespace rotor::io {

/// Fixed "%.12e" rendering used for every float in every output file.
inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

/// Comma-separated table, header first, LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  struct Cell {
    Cell(double v) : text(format_float(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    std::string text;
  };

  void row(std::initializer_list<Cell> cells) {
    bool first = true;
    for (const auto& c : cells) {
      out_ << (first ? "" : ",") << c.text;
      first = false;
    }
    out_ << '\n';
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

inline void write_trajectory(const std::string& path, const Trajectory& tr) {
  CsvWriter w(path, {"t_over_Tper", "cos_theta", "cos2_theta", "norm"});
  for (std::size_t i = 0; i < tr.size(); ++i)
    w.row({tr.t_over_period(i), tr.cos_theta[i], tr.cos2_theta[i], tr.norm[i]});
}

inline void write_field(const std::string& path, const FieldSamples& field, double period) {
  CsvWriter w(path, {"t_over_Tper", "E_au", "E_Vm"});
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const double t = field.t0 + field.dt * static_cast<double>(k);
    w.row({t / period, field.values[k], units::field_au_to_Vm(field.values[k])});
  }
}

/// Reads a `t_over_Tper,E_au,E_Vm` file back into piecewise-constant samples.
inline FieldSamples read_field(const std::string& path, double period) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read field file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_over_Tper,E_au", 0) != 0)
    throw DomainError("field file '" + path + "' lacks the t_over_Tper,E_au,E_Vm header");
  std::vector<double> t;
  std::vector<double> e;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw DomainError("malformed row in field file '" + path + "': " + line);
    t.push_back(std::stod(a) * period);
    e.push_back(std::stod(b));
  }
  if (t.size() < 2) throw DomainError("field file '" + path + "' needs at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs(t[k] - t[k - 1] - dt) > 1e-6 * dt)
      throw DomainError("field file '" + path + "' is not uniformly sampled");
  return {t.front(), dt, std::move(e)};
}

}  // namespace rotor::io
