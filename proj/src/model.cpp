#include "entre/model.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace entre {

double PowerProfile::base(const std::string& cls) const {
  auto it = base_power_w.find(cls);
  if (it == base_power_w.end())
    throw UnknownPowerClassError("unknown power class '" + cls + "'");
  return it->second;
}

void Scenario::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < links.size(); ++i) index_[links[i].id] = i;
}

std::size_t Scenario::link_pos(LinkId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw std::out_of_range("unknown link id " + std::to_string(id));
  return it->second;
}

namespace {

bool node_exists(const Scenario& sc, NodeId n) {
  return std::find(sc.nodes.begin(), sc.nodes.end(), n) != sc.nodes.end();
}

}  // namespace

std::vector<std::string> validate_topology(const Scenario& sc) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  std::set<NodeId> node_set(sc.nodes.begin(), sc.nodes.end());
  if (node_set.size() != sc.nodes.size()) fail("duplicate node id");

  std::set<LinkId> link_ids;
  for (const Link& l : sc.links) {
    std::ostringstream tag;
    tag << "link " << l.id << ": ";
    if (!link_ids.insert(l.id).second) fail(tag.str() + "duplicate id");
    if (l.id < 0) fail(tag.str() + "negative id");
    if (l.capacity_bps <= 0) fail(tag.str() + "capacity must be positive");
    if (l.src == l.dst) fail(tag.str() + "self loop");
    if (!node_exists(sc, l.src))
      fail(tag.str() + "unknown src node " + std::to_string(l.src));
    if (!node_exists(sc, l.dst))
      fail(tag.str() + "unknown dst node " + std::to_string(l.dst));
    if (sc.profile.base_power_w.count(l.power_class) == 0)
      fail(tag.str() + "unknown power class '" + l.power_class + "'");
  }

  for (const auto& [cls, watts] : sc.profile.base_power_w)
    if (watts <= 0) fail("power class '" + cls + "': base power must be positive");
  if (sc.profile.idle_fraction < 0 || sc.profile.idle_fraction > 1)
    fail("idle_fraction outside [0,1]");
  if (sc.profile.sleep_power_w < 0) fail("sleep_power must be nonnegative");

  for (const IePair& pr : sc.pairs) {
    std::ostringstream ptag;
    ptag << "pair " << pr.id << ": ";
    if (pr.demand_bps < 0) fail(ptag.str() + "negative demand");
    if (pr.paths.empty()) fail(ptag.str() + "no paths");
    if (!node_exists(sc, pr.ingress))
      fail(ptag.str() + "unknown ingress node " + std::to_string(pr.ingress));
    if (!node_exists(sc, pr.egress))
      fail(ptag.str() + "unknown egress node " + std::to_string(pr.egress));
    if (pr.splits.x.size() != pr.paths.size() ||
        pr.splits.excluded.size() != pr.paths.size())
      fail(ptag.str() + "split vector size mismatch");

    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      const Path& p = pr.paths[pi];
      std::ostringstream tag;
      tag << "pair " << pr.id << " path " << pi << ": ";
      if (p.links.empty()) {
        fail(tag.str() + "empty path");
        continue;
      }
      bool resolved = true;
      for (LinkId lid : p.links) {
        if (link_ids.count(lid) == 0) {
          fail(tag.str() + "references nonexistent link " + std::to_string(lid));
          resolved = false;
        }
      }
      if (!resolved) continue;

      std::vector<NodeId> visited;
      NodeId cur = sc.link(p.links.front()).src;
      visited.push_back(cur);
      bool contiguous = true;
      for (LinkId lid : p.links) {
        const Link& l = sc.link(lid);
        if (l.src != cur) {
          fail(tag.str() + "discontinuous path at link " + std::to_string(lid));
          contiguous = false;
          break;
        }
        cur = l.dst;
        visited.push_back(cur);
      }
      if (!contiguous) continue;
      std::set<NodeId> uniq(visited.begin(), visited.end());
      if (uniq.size() != visited.size())
        fail(tag.str() + "repeated node (loop)");
      if (sc.link(p.links.front()).src != pr.ingress)
        fail(tag.str() + "does not start at ingress");
      if (cur != pr.egress) fail(tag.str() + "does not end at egress");
    }

    double sum = 0;
    for (std::size_t pi = 0; pi < pr.splits.x.size(); ++pi) {
      double x = pr.splits.x[pi];
      if (x < 0 || x > 1 + 1e-9) fail(ptag.str() + "split outside [0,1]");
      if (pi < pr.splits.excluded.size() && pr.splits.excluded[pi] && x != 0)
        fail(ptag.str() + "excluded path with nonzero split");
      if (pi >= pr.splits.excluded.size() || !pr.splits.excluded[pi]) sum += x;
    }
    if (!pr.splits.x.empty() && std::abs(sum - 1.0) > 1e-9)
      fail(ptag.str() + "splits do not sum to 1");
  }
  return out;
}

namespace {

// Shortest path by hop count over the surviving edge set. Neighbors are
// expanded in (node id, link id) order so the lowest-id route wins ties.
std::vector<LinkId> bfs_shortest(const Scenario& sc,
                                 const std::set<LinkId>& removed,
                                 NodeId ingress, NodeId egress) {
  std::map<NodeId, std::vector<const Link*>> adj;
  for (const Link& l : sc.links)
    if (removed.count(l.id) == 0) adj[l.src].push_back(&l);
  for (auto& [n, out] : adj)
    std::sort(out.begin(), out.end(), [](const Link* a, const Link* b) {
      return std::tie(a->dst, a->id) < std::tie(b->dst, b->id);
    });

  std::map<NodeId, const Link*> via;  // link used to first reach a node
  std::queue<NodeId> q;
  q.push(ingress);
  via[ingress] = nullptr;
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    if (n == egress) break;
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const Link* l : it->second) {
      if (via.count(l->dst)) continue;
      via[l->dst] = l;
      q.push(l->dst);
    }
  }
  if (via.count(egress) == 0) return {};
  std::vector<LinkId> rev;
  for (NodeId n = egress; n != ingress;) {
    const Link* l = via[n];
    rev.push_back(l->id);
    n = l->src;
  }
  return {rev.rbegin(), rev.rend()};
}

}  // namespace

std::vector<std::vector<LinkId>> generate_disjoint_paths(const Scenario& sc,
                                                         NodeId ingress,
                                                         NodeId egress, int k) {
  if (ingress == egress)
    throw std::invalid_argument("ingress equals egress");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  std::vector<std::vector<LinkId>> out;
  std::set<LinkId> removed;
  for (int i = 0; i < k; ++i) {
    std::vector<LinkId> p = bfs_shortest(sc, removed, ingress, egress);
    if (p.empty()) break;
    removed.insert(p.begin(), p.end());
    out.push_back(std::move(p));
  }
  if (out.empty())
    throw NoPathError("no path from node " + std::to_string(ingress) +
                      " to node " + std::to_string(egress));
  return out;
}

double bottleneck_capacity(const std::vector<LinkId>& links,
                           const Scenario& sc) {
  double c = std::numeric_limits<double>::infinity();
  for (LinkId lid : links) c = std::min(c, sc.link(lid).capacity_bps);
  return c;
}

double bottleneck_capacity(const Path& path, const Scenario& sc) {
  return bottleneck_capacity(path.links, sc);
}

}  // namespace entre
