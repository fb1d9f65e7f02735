#include "entre/energy.hpp"

#include <algorithm>

namespace entre {

double NetworkState::total_energy_w() const {
  double e = 0;
  for (double w : energy_w) e += w;
  return e;
}

double NetworkState::max_utilization() const {
  double m = 0;
  for (double u : utilization) m = std::max(m, u);
  return m;
}

double link_energy(double utilization, const std::string& power_class,
                   LinkState state, const PowerProfile& profile) {
  if (state == LinkState::Sleeping) return profile.sleep_power_w;
  double sigma = profile.idle_fraction;
  double u = std::min(std::max(utilization, 0.0), 1.0);
  return profile.base(power_class) * (sigma + (1.0 - sigma) * u);
}

double path_energy(const Path& path, const Scenario& sc,
                   const NetworkState& st) {
  double e = 0;
  for (LinkId lid : path.links) e += st.energy_w[sc.link_pos(lid)];
  return e;
}

double path_utilization(const Path& path, const Scenario& sc,
                        const NetworkState& st) {
  double u = 0;
  for (LinkId lid : path.links) u = std::max(u, st.utilization[sc.link_pos(lid)]);
  return u;
}

NetworkState recompute_state(const Scenario& sc) {
  NetworkState st;
  st.flow_bps.assign(sc.links.size(), 0.0);

  for (const IePair& pr : sc.pairs) {
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      double rate = pr.splits.x[pi] * pr.demand_bps;
      if (rate <= 0) continue;
      for (LinkId lid : pr.paths[pi].links)
        st.flow_bps[sc.link_pos(lid)] += rate;
    }
  }

  st.utilization.resize(sc.links.size());
  st.energy_w.resize(sc.links.size());
  for (std::size_t i = 0; i < sc.links.size(); ++i) {
    const Link& l = sc.links[i];
    st.utilization[i] = st.flow_bps[i] / l.capacity_bps;
    st.energy_w[i] = link_energy(st.utilization[i], l.power_class, l.state,
                                 sc.profile);
  }

  st.path_util.resize(sc.pairs.size());
  st.path_energy_w.resize(sc.pairs.size());
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const IePair& pr = sc.pairs[i];
    st.path_util[i].resize(pr.paths.size());
    st.path_energy_w[i].resize(pr.paths.size());
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      st.path_util[i][pi] = path_utilization(pr.paths[pi], sc, st);
      st.path_energy_w[i][pi] = path_energy(pr.paths[pi], sc, st);
    }
  }
  return st;
}

}  // namespace entre
