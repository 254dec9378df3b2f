#pragma once

#include <optional>
#include <string>

#include "gecert/circuit.hpp"

namespace gecert {

/// Parsed scenario file: a series netlist, a source, an optional perturbed
/// source, and run parameters. See README for the JSON schema.
struct Scenario {
  std::string name;
  std::vector<Component> components;
  Signal source;
  std::optional<Signal> perturbed_source;
  int grid_n = 1024;
  std::optional<double> delta_link;
  Tolerances tol;

  GeneralizedEquation equation() const { return compose_series(components, source, tol); }
};

/// parse_error on malformed JSON, validation_error on schema violations
/// (unknown keys are rejected).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace gecert
