#pragma once

#include <string>

#include "entre/model.hpp"

namespace entre {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a scenario file, fills in the defaults (uniform splits, idle
// fraction 0.85, zero gates), resolves k-based path generation and runs
// the full validation pass. Throws ParseError or ValidationError.
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

// Normalized dump: every default made explicit, paths always listed,
// keys sorted. parse(dump(parse(f))) == parse(f).
std::string dump_scenario(const Scenario& sc);

}  // namespace entre
