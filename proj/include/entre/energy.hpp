#pragma once

#include <vector>

#include "entre/model.hpp"

namespace entre {

// Derived per-link and per-path quantities under the current splits.
// Link vectors are indexed by position in Scenario::links; path matrices
// by [pair position][path position].
struct NetworkState {
  std::vector<double> flow_bps;
  std::vector<double> utilization;
  std::vector<double> energy_w;
  std::vector<std::vector<double>> path_util;
  std::vector<std::vector<double>> path_energy_w;

  double total_energy_w() const;
  double max_utilization() const;
};

// Affine port model: base(class) * (sigma + (1 - sigma) * min(u, 1)),
// sleep_power when the link sleeps.
double link_energy(double utilization, const std::string& power_class,
                   LinkState state, const PowerProfile& profile);

double path_energy(const Path& path, const Scenario& sc,
                   const NetworkState& st);
double path_utilization(const Path& path, const Scenario& sc,
                        const NetworkState& st);

// Full recomputation from splits: link flows aggregate every pair's
// traffic crossing the link. Overload (u > 1) stays representable.
NetworkState recompute_state(const Scenario& sc);

}  // namespace entre
