#pragma once

// Scenario builders shared by the unit and acceptance suites.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entre/model.hpp"

namespace entre::testing {

struct LinkSpec {
  double capacity_mbps;
  double base_power_w;
};

struct PathSpec {
  std::vector<LinkSpec> links;  // chained ingress -> ... -> egress
};

struct PairSpec {
  double demand_mbps;
  std::vector<PathSpec> paths;
  std::vector<double> initial_splits;  // empty -> uniform
};

// Builds a scenario where every path runs over its own fresh relay nodes,
// so paths are edge-disjoint by construction. Power classes are derived
// from the wattage values.
inline Scenario build_scenario(const std::vector<PairSpec>& pairs,
                               double idle_fraction = 0.85,
                               double sleep_power_w = 0.0) {
  Scenario sc;
  sc.profile.idle_fraction = idle_fraction;
  sc.profile.sleep_power_w = sleep_power_w;

  NodeId next_node = 0;
  LinkId next_link = 0;
  int pair_id = 0;
  for (const PairSpec& ps : pairs) {
    IePair pr;
    pr.id = pair_id++;
    pr.ingress = next_node++;
    pr.egress = next_node++;
    sc.nodes.push_back(pr.ingress);
    sc.nodes.push_back(pr.egress);
    pr.demand_bps = ps.demand_mbps * 1e6;

    for (const PathSpec& path : ps.paths) {
      Path p;
      p.pair = pr.id;
      NodeId cur = pr.ingress;
      for (std::size_t li = 0; li < path.links.size(); ++li) {
        NodeId nxt = (li + 1 == path.links.size()) ? pr.egress : next_node++;
        if (nxt != pr.egress) sc.nodes.push_back(nxt);

        std::ostringstream cls;
        cls << "w" << path.links[li].base_power_w;
        sc.profile.base_power_w[cls.str()] = path.links[li].base_power_w;

        Link l;
        l.id = next_link++;
        l.src = cur;
        l.dst = nxt;
        l.capacity_bps = path.links[li].capacity_mbps * 1e6;
        l.power_class = cls.str();
        sc.links.push_back(l);
        p.links.push_back(l.id);
        cur = nxt;
      }
      pr.paths.push_back(std::move(p));
    }

    std::size_t np = pr.paths.size();
    pr.splits.excluded.assign(np, 0);
    if (!ps.initial_splits.empty())
      pr.splits.x = ps.initial_splits;
    else
      pr.splits.x.assign(np, 1.0 / np);
    sc.pairs.push_back(std::move(pr));
  }
  sc.rebuild_index();
  return sc;
}

// Randomized small scenario: 2-6 pairs, 2-4 disjoint paths each, 1-3 links
// per path, mixed capacities and wattages, occasionally nonzero gates.
inline Scenario random_scenario(std::mt19937& rng, bool allow_overload = true) {
  std::uniform_int_distribution<int> n_pairs(2, 6), n_paths(2, 4), n_links(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double caps[] = {10, 40, 100, 400, 1000};
  const double watts[] = {0.3, 0.6, 0.9, 1.2, 2.0, 5.0};

  std::vector<PairSpec> pairs;
  int np = n_pairs(rng);
  for (int i = 0; i < np; ++i) {
    PairSpec ps;
    int m = n_paths(rng);
    double min_bneck = 1e18;
    for (int p = 0; p < m; ++p) {
      PathSpec path;
      int nl = n_links(rng);
      double bneck = 1e18;
      for (int l = 0; l < nl; ++l) {
        double c = caps[rng() % 5];
        bneck = std::min(bneck, c);
        path.links.push_back({c, watts[rng() % 6]});
      }
      min_bneck = std::min(min_bneck, bneck);
      ps.paths.push_back(std::move(path));
    }
    double scale = allow_overload ? 1.5 : 0.6;
    ps.demand_mbps = unit(rng) * scale * min_bneck;
    pairs.push_back(std::move(ps));
  }

  Scenario sc = build_scenario(pairs, 0.5 + 0.5 * unit(rng));
  sc.params.t_u = unit(rng) * 0.2;
  sc.params.t_e_w = unit(rng) * 1.0;
  sc.params.u_min = (rng() % 3 == 0) ? unit(rng) * 0.1 : 0.0;
  sc.params.e_min_w = (rng() % 3 == 0) ? unit(rng) * 0.5 : 0.0;
  sc.params.eps_converge = 1e-4;
  sc.params.max_iters = 30;
  return sc;
}

}  // namespace entre::testing
