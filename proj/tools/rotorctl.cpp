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

// rotorctl <command> --config <path> [--set section.key=value]...
//
// Exit status: 0 success, 2 configuration error, 3 numeric or convergence
// error.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotor/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rotational dynamics scenarios: target states, optimal control, pulse sequences"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string field_file;
  bool quiet = false;

  for (const auto& [name, cmd] : rotor::cli::command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("-c,--config", config_path, "INI scenario file")->required();
    sub->add_option("--set", overrides, "override a key, section.key=value");
    sub->add_flag("-q,--quiet", quiet, "suppress progress output");
    if (cmd == rotor::cli::Command::propagate)
      sub->add_option("--field-file", field_file, "field CSV written by the optimize command");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto* sub = app.get_subcommands().front();
  try {
    const auto cmd = rotor::cli::parse_command(sub->get_name());
    auto cfg = rotor::cli::Config::load(config_path);
    for (const auto& o : overrides) cfg.apply_override(o);
    if (!field_file.empty()) cfg.set("propagate", "field_file", field_file);

    std::ostream null_stream(nullptr);
    const auto rep = rotor::cli::run(cmd, cfg, quiet ? null_stream : std::clog);
    if (!quiet) {
      std::cout << rep.summary << "\n";
      for (const auto& f : rep.files) std::cout << "wrote " << f << "\n";
    }
    return 0;
  } catch (const rotor::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rotor::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rotor::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
