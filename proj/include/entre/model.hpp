#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace entre {

using NodeId = int;
using LinkId = int;

enum class LinkState { Active, Sleeping };

struct Link {
  LinkId id = -1;
  NodeId src = -1;
  NodeId dst = -1;
  double capacity_bps = 0.0;
  std::string power_class;
  LinkState state = LinkState::Active;
};

// An explicit tunnel: ordered, contiguous, loop-free chain of links.
struct Path {
  int pair = -1;
  std::vector<LinkId> links;
};

// Per-path traffic fractions of one ingress-egress pair. Excluded paths
// carry zero and never re-enter.
struct SplitVector {
  std::vector<double> x;
  std::vector<char> excluded;

  std::size_t size() const { return x.size(); }
  int active_count() const {
    int n = 0;
    for (char e : excluded)
      if (!e) ++n;
    return n;
  }
};

struct IePair {
  int id = -1;
  NodeId ingress = -1;
  NodeId egress = -1;
  double demand_bps = 0.0;
  std::vector<Path> paths;
  SplitVector splits;
};

struct PowerProfile {
  std::unordered_map<std::string, double> base_power_w;
  double idle_fraction = 0.85;   // load-independent share of base power
  double sleep_power_w = 0.0;

  double base(const std::string& cls) const;
};

struct EntreParams {
  double t_m_s = 1.0;
  double t_u = 0.1;              // utilization excess threshold (rule 4a)
  double t_e_w = 0.5;            // energy excess threshold (rule 3a)
  double u_min = 0.0;
  double e_min_w = 0.0;
  double eps_converge = 1e-3;
  int max_iters = 50;
};

struct Scenario {
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  PowerProfile profile;
  std::vector<IePair> pairs;
  EntreParams params;

  // Rebuild after any change to the link list.
  void rebuild_index();
  std::size_t link_pos(LinkId id) const;
  const Link& link(LinkId id) const { return links[link_pos(id)]; }
  Link& link(LinkId id) { return links[link_pos(id)]; }
  bool has_link(LinkId id) const { return index_.count(id) != 0; }

 private:
  std::unordered_map<LinkId, std::size_t> index_;
};

struct NoPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownPowerClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empty result means the scenario is well formed.
std::vector<std::string> validate_topology(const Scenario& sc);

// Up to k pairwise edge-disjoint shortest-by-hop paths, found by repeated
// BFS with the used edges removed. Ties broken by lowest next-node id.
// Throws NoPathError when egress is unreachable from ingress.
std::vector<std::vector<LinkId>> generate_disjoint_paths(const Scenario& sc,
                                                         NodeId ingress,
                                                         NodeId egress, int k);

double bottleneck_capacity(const std::vector<LinkId>& links,
                           const Scenario& sc);
double bottleneck_capacity(const Path& path, const Scenario& sc);

}  // namespace entre
