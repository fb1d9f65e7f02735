#include "entre/fluid.hpp"

#include <algorithm>

namespace entre {

std::vector<std::vector<double>> deliver(const Scenario& sc,
                                         const NetworkState& st,
                                         double t_m_s) {
  // Survival ratio per link from the offered flows.
  std::vector<double> survive(sc.links.size(), 1.0);
  for (std::size_t i = 0; i < sc.links.size(); ++i) {
    if (st.flow_bps[i] > sc.links[i].capacity_bps)
      survive[i] = sc.links[i].capacity_bps / st.flow_bps[i];
  }

  std::vector<std::vector<double>> delivered(sc.pairs.size());
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const IePair& pr = sc.pairs[i];
    delivered[i].resize(pr.paths.size(), 0.0);
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      double offered = pr.splits.x[pi] * pr.demand_bps * t_m_s;
      if (offered <= 0) continue;
      double ratio = 1.0;
      for (LinkId lid : pr.paths[pi].links) ratio *= survive[sc.link_pos(lid)];
      delivered[i][pi] = offered * ratio;
    }
  }
  return delivered;
}

MetricsSnapshot make_snapshot(const Scenario& sc, const NetworkState& st,
                              int round, double throughput_bps,
                              double max_abs_delta_x, bool converged) {
  MetricsSnapshot s;
  s.round = round;
  s.throughput_bps = throughput_bps;
  s.total_energy_w = st.total_energy_w();
  s.max_link_utilization = st.max_utilization();

  std::size_t sleeping = 0;
  for (const Link& l : sc.links)
    if (l.state == LinkState::Sleeping) ++sleeping;
  s.sleeping_links_fraction =
      sc.links.empty() ? 0.0 : double(sleeping) / double(sc.links.size());

  std::size_t routes = 0, excluded = 0;
  for (const IePair& pr : sc.pairs) {
    routes += pr.paths.size();
    for (char e : pr.splits.excluded)
      if (e) ++excluded;
  }
  s.excluded_routes_fraction = routes == 0 ? 0.0 : double(excluded) / double(routes);
  s.max_abs_delta_x = max_abs_delta_x;
  s.converged = converged;
  return s;
}

}  // namespace entre
