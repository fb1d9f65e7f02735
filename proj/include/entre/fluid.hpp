#pragma once

#include <vector>

#include "entre/energy.hpp"
#include "entre/model.hpp"

namespace entre {

struct MetricsSnapshot {
  int round = 0;
  double throughput_bps = 0;
  double total_energy_w = 0;
  double max_link_utilization = 0;
  double sleeping_links_fraction = 0;
  double excluded_routes_fraction = 0;
  double max_abs_delta_x = 0;
  bool converged = false;  // not part of the CSV column set
};

// Fluid delivery over one measurement window. Offered bits per path are
// x_ip * T_i * t_m; every link over capacity scales all crossing paths by
// c_l / flow_l, and a path's delivery ratio is the product over its links.
// Returns delivered bits as [pair position][path position].
std::vector<std::vector<double>> deliver(const Scenario& sc,
                                         const NetworkState& st, double t_m_s);

MetricsSnapshot make_snapshot(const Scenario& sc, const NetworkState& st,
                              int round, double throughput_bps,
                              double max_abs_delta_x, bool converged);

}  // namespace entre
