#pragma once

#include <string>
#include <vector>

#include "entre/engine.hpp"

namespace entre {

enum class Strategy { Entre, Ospf, Equal };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

// Entre: round loop until convergence or the iteration cap. Baselines
// assign their splits once and record a single steady round.
RunResult run(Scenario& sc, Strategy strategy, const EntreParams& params);

struct Summary {
  double throughput_bps = 0;
  double total_energy_w = 0;
  double energy_saving = 0;  // vs the supplied reference energy
  double sleeping_links_fraction = 0;
  double excluded_routes_fraction = 0;
  int iterations = 0;
  bool converged = false;
};

Summary summarize(const std::vector<MetricsSnapshot>& trajectory,
                  double reference_energy_w);

}  // namespace entre
