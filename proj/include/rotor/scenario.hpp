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

// Scenario runner behind the rotorctl tool: INI configuration, dispatch to
// the library, CSV output and the run manifest.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rotor/dynamics.hpp"
#include "rotor/errors.hpp"
#include "rotor/io.hpp"
#include "rotor/molecule.hpp"
#include "rotor/oct.hpp"
#include "rotor/pulses.hpp"
#include "rotor/targets.hpp"
#include "rotor/units.hpp"

namespace rotor::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimization ended without reaching its fidelity goal; outputs were written.
class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

enum class Command {
  classical_scan,
  target_scan,
  target_state,
  free_evolve,
  optimize,
  bipulse,
  train,
  propagate
};

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names = {
      {"classical-scan", Command::classical_scan}, {"target-scan", Command::target_scan},
      {"target-state", Command::target_state},     {"free-evolve", Command::free_evolve},
      {"optimize", Command::optimize},             {"bipulse", Command::bipulse},
      {"train", Command::train},                   {"propagate", Command::propagate}};
  return names;
}

inline Command parse_command(const std::string& s) {
  for (const auto& [name, cmd] : command_names())
    if (name == s) return cmd;
  throw ConfigError("unknown command '" + s + "'");
}

inline std::string to_string(Command c) {
  for (const auto& [name, cmd] : command_names())
    if (cmd == c) return name;
  return "?";
}

// Keys accepted per section. [resolved] is written into manifests and
// ignored when a manifest is read back.
inline const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"run", {"command"}},
      {"molecule", {"name", "kind", "B_cm1", "B_au", "A_cm1", "mu0_D", "dalpha_A3"}},
      {"merit", {"a", "j_max"}},
      {"scan", {"a_min", "a_max", "a_step", "jmax_min", "jmax_max"}},
      {"numerics",
       {"j_cap", "steps_per_period", "periods", "weight_tail", "nuclear_spin_weights",
        "theta_points"}},
      {"thermal", {"T_K"}},
      {"laser", {"intensity_TWcm2", "fwhm_fs"}},
      {"thz", {"shape", "peak_Vm", "fwhm_fs"}},
      {"train", {"n_kicks", "amplitudes_Vm"}},
      {"oct",
       {"j_cap", "steps", "horizon_periods", "target_fidelity", "max_iterations",
        "field_bound_Vm", "penalty", "guess_intensity_TWcm2", "post_periods"}},
      {"propagate", {"field_file", "post_periods"}},
      {"output", {"prefix"}},
  };
  return s;
}

/// INI configuration with section and key order preserved.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& origin = "<config>") {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    Config cfg;
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty())
        throw ConfigError(origin + ": key '" + section + "' outside any [section]");
      if (section == "resolved") continue;
      for (const auto& [key, value] : body) cfg.set(section, key, value.data());
    }
    cfg.check_keys();
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    return parse(in, path);
  }

  void set(const std::string& section, const std::string& key, const std::string& value) {
    auto sec = std::find_if(sections_.begin(), sections_.end(),
                            [&](const auto& s) { return s.first == section; });
    if (sec == sections_.end()) {
      sections_.push_back({section, {}});
      sec = std::prev(sections_.end());
    }
    auto kv = std::find_if(sec->second.begin(), sec->second.end(),
                           [&](const auto& p) { return p.first == key; });
    if (kv == sec->second.end())
      sec->second.push_back({key, value});
    else
      kv->second = value;
  }

  /// Applies "section.key=value".
  void apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    set(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
        trim(assignment.substr(eq + 1)));
    check_keys();
  }

  bool has(const std::string& section, const std::string& key) const {
    return raw(section, key).has_value();
  }

  bool has_section(const std::string& section) const {
    return std::any_of(sections_.begin(), sections_.end(),
                       [&](const auto& s) { return s.first == section; });
  }

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    for (const auto& [name, body] : sections_)
      if (name == section)
        for (const auto& [k, v] : body)
          if (k == key) return v;
    return std::nullopt;
  }

  std::string str(const std::string& section, const std::string& key) const {
    auto v = raw(section, key);
    if (!v) throw ConfigError("missing required key " + section + "." + key);
    return *v;
  }

  std::string str(const std::string& section, const std::string& key,
                  const std::string& fallback) const {
    return raw(section, key).value_or(fallback);
  }

  double number(const std::string& section, const std::string& key) const {
    return to_number(section, key, str(section, key));
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    auto v = raw(section, key);
    return v ? to_number(section, key, *v) : fallback;
  }

  int integer(const std::string& section, const std::string& key) const {
    return to_integer(section, key, str(section, key));
  }

  int integer(const std::string& section, const std::string& key, int fallback) const {
    auto v = raw(section, key);
    return v ? to_integer(section, key, *v) : fallback;
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) const {
    auto v = raw(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError(section + "." + key + ": expected a boolean, got '" + *v + "'");
  }

  std::vector<double> numbers(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(section, key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_number(section, key, item));
    return out;
  }

  /// INI text that parses back to this configuration.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& [name, body] : sections_) {
      os << "[" << name << "]\n";
      for (const auto& [k, v] : body) os << k << " = " << v << "\n";
      os << "\n";
    }
    return os.str();
  }

 private:
  void check_keys() const {
    const auto& sch = schema();
    for (const auto& [name, body] : sections_) {
      auto it = sch.find(name);
      if (it == sch.end()) throw ConfigError("unknown section [" + name + "]");
      for (const auto& [k, v] : body)
        if (!it->second.count(k)) throw ConfigError("unknown key " + name + "." + k);
    }
  }

  static double to_number(const std::string& section, const std::string& key,
                          const std::string& text) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (text.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(section + "." + key + ": expected a number, got '" + text + "'");
    }
  }

  static int to_integer(const std::string& section, const std::string& key,
                        const std::string& text) {
    const double v = to_number(section, key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw ConfigError(section + "." + key + ": expected an integer, got '" + text + "'");
    return static_cast<int>(v);
  }

  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections_;
};

/// Everything a run produced.
struct RunReport {
  std::vector<std::string> files;
  std::vector<std::pair<std::string, double>> resolved;  // atomic-unit values for the manifest
  std::string summary;
};

namespace detail {

inline MoleculeParams molecule_from(const Config& cfg) {
  if (!cfg.has_section("molecule")) throw ConfigError("missing [molecule] section");
  MoleculeParams m;
  m.name = cfg.str("molecule", "name", "molecule");
  const std::string kind = cfg.str("molecule", "kind", "linear");
  if (kind == "linear")
    m.kind = RotorKind::linear;
  else if (kind == "symmetric-top")
    m.kind = RotorKind::symmetric_top;
  else
    throw ConfigError("molecule.kind must be 'linear' or 'symmetric-top', got '" + kind + "'");
  if (cfg.has("molecule", "B_cm1") == cfg.has("molecule", "B_au"))
    throw ConfigError("give exactly one of molecule.B_cm1 or molecule.B_au");
  try {
    m.B = cfg.has("molecule", "B_cm1") ? units::wavenumber_to_au(cfg.number("molecule", "B_cm1"))
                                       : cfg.number("molecule", "B_au");
    if (m.kind == RotorKind::symmetric_top)
      m.A = units::wavenumber_to_au(cfg.number("molecule", "A_cm1"));
    m.mu0 = units::debye_to_au(cfg.number("molecule", "mu0_D", 0.0));
    if (cfg.has("molecule", "dalpha_A3"))
      m.dalpha = units::angstrom3_to_au(cfg.number("molecule", "dalpha_A3"));
    m.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[molecule]: ") + e.what());
  }
  return m;
}

inline std::vector<double> a_grid(const Config& cfg) {
  const double lo = cfg.number("scan", "a_min");
  const double hi = cfg.number("scan", "a_max");
  const double step = cfg.number("scan", "a_step");
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("scan needs a_step > 0 and a_max >= a_min");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g;
  for (long i = 0; i < n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

inline void add_molecule(RunReport& rep, const MoleculeParams& m) {
  rep.resolved.push_back({"B_au", m.B});
  if (m.kind == RotorKind::symmetric_top) rep.resolved.push_back({"A_au", m.A});
  rep.resolved.push_back({"mu0_au", m.mu0});
  if (m.dalpha) rep.resolved.push_back({"dalpha_au", *m.dalpha});
  rep.resolved.push_back({"T_per_au", units::rotational_period(m.B)});
}

inline std::string out(const std::string& prefix, const std::string& suffix) {
  return prefix + "." + suffix;
}

inline ThermalOptions thermal_options(const Config& cfg) {
  ThermalOptions t;
  t.weight_tail = cfg.number("numerics", "weight_tail", t.weight_tail);
  t.nuclear_spin_weights = cfg.boolean("numerics", "nuclear_spin_weights", false);
  return t;
}

inline PulseSequence bipulse_from(const Config& cfg, const MoleculeParams& m, RunReport& rep) {
  if (!m.dalpha)
    throw ConfigError("bipulse scenarios need molecule.dalpha_A3 for the laser kick");
  BipulseSettings s;
  s.laser_peak_field = units::intensity_to_field(cfg.number("laser", "intensity_TWcm2") * 1e12);
  s.laser_fwhm = units::fs_to_au(cfg.number("laser", "fwhm_fs"));
  s.kick_peak = units::field_Vm_to_au(cfg.number("thz", "peak_Vm"));
  s.kick_fwhm = units::fs_to_au(cfg.number("thz", "fwhm_fs"));
  try {
    s.kick_shape = parse_pulse_shape(cfg.str("thz", "shape", "hcp"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("thz.shape: ") + e.what());
  }
  rep.resolved.push_back({"laser_peak_field_au", s.laser_peak_field});
  rep.resolved.push_back({"laser_fwhm_au", s.laser_fwhm});
  rep.resolved.push_back({"kick_peak_au", s.kick_peak});
  rep.resolved.push_back({"kick_fwhm_au", s.kick_fwhm});
  return bipulse_sequence(units::rotational_period(m.B), s);
}

inline EnsembleResult run_thermal(const Config& cfg, const MoleculeParams& m,
                                  const PulseSequence& seq, RunReport& rep) {
  const double T = cfg.number("thermal", "T_K", 0.0);
  const int j_cap = cfg.integer("numerics", "j_cap");
  const double period = units::rotational_period(m.B);
  const auto grid = TimeGrid::periods(period, cfg.number("numerics", "periods", 2.0),
                                      cfg.integer("numerics", "steps_per_period", 4096));
  const auto ens = boltzmann_ensemble(m, T, j_cap, thermal_options(cfg));
  rep.resolved.push_back({"dt_au", grid.dt});
  rep.resolved.push_back({"ensemble_members", static_cast<double>(ens.members.size())});
  for (const auto& p : seq.pulses) {
    rep.resolved.push_back({std::string(to_string(p.shape)) + "_center_au", p.center});
  }
  return propagate_ensemble(ens, m, seq, grid);
}

}  // namespace detail

/// Executes one scenario and writes its outputs under output.prefix.
inline RunReport run(Command cmd, const Config& cfg, std::ostream& log = std::clog) {
  if (auto c = cfg.raw("run", "command"); c && parse_command(*c) != cmd)
    throw ConfigError("config is for command '" + *c + "' but '" + to_string(cmd) +
                      "' was requested");
  const std::string prefix = cfg.str("output", "prefix");
  if (const auto dir = std::filesystem::path(prefix).parent_path(); !dir.empty())
    std::filesystem::create_directories(dir);

  RunReport rep;
  std::optional<std::string> failure;
  auto emit = [&](const std::string& path) { rep.files.push_back(path); };

  switch (cmd) {
    case Command::classical_scan: {
      const auto rows = classical_scan(detail::a_grid(cfg));
      io::CsvWriter w(detail::out(prefix, "classical.csv"),
                      {"a", "theta_max", "cos_theta", "cos2_theta", "f_max"});
      for (const auto& r : rows) w.row({r.a, r.theta_max, r.cos_val, r.cos2_val, r.f_max});
      emit(w.path());
      rep.summary = std::to_string(rows.size()) + " classical optima";
      break;
    }
    case Command::target_scan: {
      const auto as = detail::a_grid(cfg);
      std::vector<int> js;
      const int j0 = cfg.integer("scan", "jmax_min");
      const int j1 = cfg.integer("scan", "jmax_max");
      if (j0 < 0 || j1 < j0) throw ConfigError("scan needs 0 <= jmax_min <= jmax_max");
      for (int j = j0; j <= j1; ++j) js.push_back(j);
      const auto rows = target_scan(as, js);
      io::CsvWriter w(detail::out(prefix, "target_scan.csv"),
                      {"a", "j_max", "lambda_max", "cos_theta", "cos2_theta"});
      for (const auto& r : rows) w.row({r.a, r.j_max, r.lambda_max, r.cos_exp, r.cos2_exp});
      emit(w.path());
      rep.summary = std::to_string(rows.size()) + " target states";
      break;
    }
    case Command::target_state: {
      const double a = cfg.number("merit", "a");
      const int j_max = cfg.integer("merit", "j_max");
      const auto t = target_state(a, j_max);
      {
        io::CsvWriter w(detail::out(prefix, "target.csv"), {"j", "coefficient"});
        for (Eigen::Index i = 0; i < t.coefficients.size(); ++i)
          w.row({t.basis.j_at(i), t.coefficients(i)});
        emit(w.path());
      }
      const int npts = cfg.integer("numerics", "theta_points", 721);
      if (npts < 2) throw ConfigError("numerics.theta_points must be >= 2");
      std::vector<double> theta(npts);
      for (int i = 0; i < npts; ++i) theta[i] = std::numbers::pi * i / (npts - 1);
      const auto p = angular_density(t.state(), theta);
      io::CsvWriter w(detail::out(prefix, "density.csv"), {"theta", "density"});
      for (int i = 0; i < npts; ++i) w.row({theta[i], p[i]});
      emit(w.path());
      rep.resolved.push_back({"lambda_max", t.lambda_max});
      rep.resolved.push_back({"cos_theta", t.cos_exp});
      rep.resolved.push_back({"cos2_theta", t.cos2_exp});
      rep.summary = "lambda_max = " + io::format_float(t.lambda_max) +
                    ", <cos> = " + io::format_float(t.cos_exp) +
                    ", <cos^2> = " + io::format_float(t.cos2_exp);
      break;
    }
    case Command::free_evolve: {
      const auto m = detail::molecule_from(cfg);
      detail::add_molecule(rep, m);
      const auto t = target_state(cfg.number("merit", "a"), cfg.integer("merit", "j_max"));
      const double period = units::rotational_period(m.B);
      const auto grid = TimeGrid::periods(period, cfg.number("numerics", "periods", 2.0),
                                          cfg.integer("numerics", "steps_per_period", 4096));
      const ObservableSet obs(t.basis);
      auto tr = Trajectory::zeros(grid);
      const auto psi0 = t.state();
      for (std::size_t i = 0; i < tr.size(); ++i) {
        const auto s = free_evolve(psi0, m, tr.t[i]);
        const auto e = obs.evaluate(s.c);
        tr.cos_theta[i] = e.cos_theta;
        tr.cos2_theta[i] = e.cos2_theta;
        tr.norm[i] = s.norm();
      }
      io::write_trajectory(detail::out(prefix, "trajectory.csv"), tr);
      emit(detail::out(prefix, "trajectory.csv"));
      rep.summary = "free evolution over " + std::to_string(grid.steps) + " steps";
      break;
    }
    case Command::optimize: {
      const auto m = detail::molecule_from(cfg);
      detail::add_molecule(rep, m);
      const auto target = target_state(cfg.number("merit", "a"), cfg.integer("merit", "j_max"));
      const double period = units::rotational_period(m.B);
      OctProblem p;
      p.params = m;
      p.target = target;
      p.horizon = cfg.number("oct", "horizon_periods", 1.0) * period;
      p.steps = cfg.integer("oct", "steps", 4096);
      p.j_cap = cfg.integer("oct", "j_cap", target.basis.j_cap() + 4);
      p.guess = paper_guess_pulse(period, m.B);
      if (cfg.has("oct", "guess_intensity_TWcm2"))
        p.guess.peak = units::intensity_to_field(cfg.number("oct", "guess_intensity_TWcm2") * 1e12);
      if (cfg.has("oct", "field_bound_Vm"))
        p.field_bound = units::field_Vm_to_au(cfg.number("oct", "field_bound_Vm"));
      p.penalty = cfg.number("oct", "penalty", 0.0);
      p.target_fidelity = cfg.number("oct", "target_fidelity", 0.99);
      p.max_iterations = cfg.integer("oct", "max_iterations", 5000);
      try {
        p.validate();
      } catch (const DomainError& e) {
        throw ConfigError(std::string("[oct]: ") + e.what());
      }
      rep.resolved.push_back({"horizon_au", p.horizon});
      rep.resolved.push_back({"dt_au", p.dt()});
      rep.resolved.push_back({"guess_peak_au", p.guess.peak});
      rep.resolved.push_back({"guess_center_au", p.guess.center});
      rep.resolved.push_back({"guess_sigma_au", p.guess.width});

      struct Progress : OctObserver {
        std::ostream& os;
        explicit Progress(std::ostream& o) : os(o) {}
        void on_iteration(int it, double f, double) override {
          if (it % 10 == 0) os << "iteration " << it << ": fidelity " << f << "\n";
        }
      } progress(log);
      const auto res = optimize(p, &progress);

      const auto field = p.samples(res.field);
      io::write_field(detail::out(prefix, "field.csv"), field, period);
      emit(detail::out(prefix, "field.csv"));
      {
        io::CsvWriter w(detail::out(prefix, "history.csv"), {"iteration", "fidelity"});
        for (std::size_t i = 0; i < res.fidelity_history.size(); ++i)
          w.row({static_cast<int>(i), res.fidelity_history[i]});
        emit(w.path());
      }
      // Controlled window followed by field-free evolution.
      const double post = cfg.number("oct", "post_periods", 1.0);
      const int post_steps = static_cast<int>(std::lround(post * period / p.dt()));
      const auto grid = TimeGrid::over(0.0, p.horizon + post_steps * p.dt(), p.steps + post_steps,
                                       period);
      PulseSequence seq;
      seq.override_thz = field;
      const auto psi0 = RotorState::basis_state(p.basis(), 0);
      const auto prop = propagate(psi0, m, seq, grid, p.propagation);
      io::write_trajectory(detail::out(prefix, "trajectory.csv"), prop.trajectory);
      emit(detail::out(prefix, "trajectory.csv"));
      rep.resolved.push_back({"fidelity", res.fidelity});
      rep.resolved.push_back({"iterations", res.iterations});
      rep.summary = std::string("optimization ") + to_string(res.status) + " after " +
                    std::to_string(res.iterations) + " iterations, fidelity " +
                    io::format_float(res.fidelity);
      if (!res.converged()) failure = rep.summary;
      break;
    }
    case Command::bipulse:
    case Command::train: {
      const auto m = detail::molecule_from(cfg);
      detail::add_molecule(rep, m);
      auto seq = detail::bipulse_from(cfg, m, rep);
      if (cmd == Command::train) {
        const int n = cfg.integer("train", "n_kicks");
        std::vector<double> amps;
        for (double v : cfg.numbers("train", "amplitudes_Vm"))
          amps.push_back(v < 0.0 ? -units::field_Vm_to_au(-v) : units::field_Vm_to_au(v));
        try {
          seq = hcp_train_sequence(seq, n, amps);
        } catch (const DomainError& e) {
          throw ConfigError(std::string("[train]: ") + e.what());
        }
      }
      const auto res = detail::run_thermal(cfg, m, seq, rep);
      io::write_trajectory(detail::out(prefix, "trajectory.csv"), res.trajectory);
      emit(detail::out(prefix, "trajectory.csv"));
      rep.summary = std::to_string(res.ensemble.members.size()) + " ensemble members propagated";
      break;
    }
    case Command::propagate: {
      const auto m = detail::molecule_from(cfg);
      detail::add_molecule(rep, m);
      const double period = units::rotational_period(m.B);
      const auto field = io::read_field(cfg.str("propagate", "field_file"), period);
      const double post = cfg.number("propagate", "post_periods", 1.0);
      const int steps = static_cast<int>(field.values.size()) +
                        static_cast<int>(std::lround(post * period / field.dt));
      const auto grid = TimeGrid::over(field.t0, field.t0 + steps * field.dt, steps, period);
      PulseSequence seq;
      seq.override_thz = field;
      const int j_cap = cfg.integer("numerics", "j_cap");
      const double T = cfg.number("thermal", "T_K", 0.0);
      const auto ens = boltzmann_ensemble(m, T, j_cap, detail::thermal_options(cfg));
      const auto res = propagate_ensemble(ens, m, seq, grid);
      io::write_trajectory(detail::out(prefix, "trajectory.csv"), res.trajectory);
      emit(detail::out(prefix, "trajectory.csv"));
      rep.resolved.push_back({"dt_au", field.dt});
      rep.summary = "propagated " + std::to_string(field.values.size()) + " field samples";
      break;
    }
  }

  std::ofstream man(detail::out(prefix, "manifest.ini"), std::ios::binary | std::ios::trunc);
  man << "# rotorctl manifest; feed back with --config to reproduce this run\n";
  Config echo = cfg;
  echo.set("run", "command", to_string(cmd));
  man << echo.dump();
  man << "[resolved]\n";
  for (const auto& [k, v] : rep.resolved) man << k << " = " << io::format_float(v) << "\n";
  emit(detail::out(prefix, "manifest.ini"));
  if (failure) throw ConvergenceError(*failure);
  return rep;
}

}  // namespace rotor::cli
