#include "entre/scenario_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace entre {

namespace {

using nlohmann::json;

constexpr double kMbps = 1e6;

double get_num(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(ctx + ": missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

Scenario from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario: top level must be an object");
  if (j.value("version", 0) != 1)
    throw ParseError("scenario: unsupported or missing version (expected 1)");

  Scenario sc;
  for (const auto& n : j.value("nodes", json::array()))
    sc.nodes.push_back(n.get<NodeId>());

  for (const auto& lj : j.value("links", json::array())) {
    Link l;
    l.id = LinkId(get_num(lj, "id", "link"));
    std::string ctx = "link " + std::to_string(l.id);
    l.src = NodeId(get_num(lj, "src", ctx));
    l.dst = NodeId(get_num(lj, "dst", ctx));
    l.capacity_bps = get_num(lj, "capacity_mbps", ctx) * kMbps;
    if (!lj.contains("power_class"))
      throw ParseError(ctx + ": missing power_class");
    l.power_class = lj["power_class"].get<std::string>();
    sc.links.push_back(std::move(l));
  }
  sc.rebuild_index();

  const json pj = j.value("power_profile", json::object());
  const json base_map = pj.value("base_power_w", json::object());
  for (const auto& [cls, w] : base_map.items())
    sc.profile.base_power_w[cls] = w.get<double>();
  sc.profile.idle_fraction = pj.value("idle_fraction", 0.85);
  sc.profile.sleep_power_w = pj.value("sleep_power_w", 0.0);

  const json prm = j.value("params", json::object());
  sc.params.t_m_s = prm.value("t_m_s", 1.0);
  sc.params.t_u = prm.value("t_u", 0.1);
  sc.params.t_e_w = prm.value("t_e_w", 0.5);
  sc.params.u_min = prm.value("u_min", 0.0);
  sc.params.e_min_w = prm.value("e_min_w", 0.0);
  sc.params.eps_converge = prm.value("eps_converge", 1e-3);
  sc.params.max_iters = prm.value("max_iters", 50);
  if (sc.params.t_m_s <= 0) throw ParseError("params: t_m_s must be positive");
  if (sc.params.eps_converge <= 0)
    throw ParseError("params: eps_converge must be positive");
  if (sc.params.max_iters < 1)
    throw ParseError("params: max_iters must be >= 1");

  int pair_id = 0;
  for (const auto& prj : j.value("pairs", json::array())) {
    IePair pr;
    pr.id = pair_id++;
    std::string ctx = "pair " + std::to_string(pr.id);
    pr.ingress = NodeId(get_num(prj, "ingress", ctx));
    pr.egress = NodeId(get_num(prj, "egress", ctx));
    pr.demand_bps = get_num(prj, "demand_mbps", ctx) * kMbps;

    if (prj.contains("paths")) {
      for (const auto& pathj : prj["paths"]) {
        Path p;
        p.pair = pr.id;
        for (const auto& lid : pathj) p.links.push_back(lid.get<LinkId>());
        pr.paths.push_back(std::move(p));
      }
    } else {
      int k = int(prj.value("k", 2.0));
      try {
        for (auto& links : generate_disjoint_paths(sc, pr.ingress, pr.egress, k)) {
          Path p;
          p.pair = pr.id;
          p.links = std::move(links);
          pr.paths.push_back(std::move(p));
        }
      } catch (const NoPathError& e) {
        throw ValidationError(ctx + ": " + e.what());
      }
    }

    std::size_t np = pr.paths.size();
    pr.splits.excluded.assign(np, 0);
    if (prj.contains("initial_splits")) {
      for (const auto& x : prj["initial_splits"])
        pr.splits.x.push_back(x.get<double>());
      if (pr.splits.x.size() != np)
        throw ParseError(ctx + ": initial_splits length mismatch");
    } else if (np > 0) {
      pr.splits.x.assign(np, 1.0 / np);
    }
    sc.pairs.push_back(std::move(pr));
  }

  std::vector<std::string> violations = validate_topology(sc);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid scenario:";
    for (const std::string& v : violations) msg << "\n  - " << v;
    throw ValidationError(msg.str());
  }
  return sc;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  return from_json(j);
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string dump_scenario(const Scenario& sc) {
  json j;
  j["version"] = 1;
  j["nodes"] = sc.nodes;

  json links = json::array();
  for (const Link& l : sc.links) {
    links.push_back({{"id", l.id},
                     {"src", l.src},
                     {"dst", l.dst},
                     {"capacity_mbps", l.capacity_bps / kMbps},
                     {"power_class", l.power_class}});
  }
  j["links"] = links;

  json base = json::object();
  for (const auto& [cls, w] : std::map<std::string, double>(
           sc.profile.base_power_w.begin(), sc.profile.base_power_w.end()))
    base[cls] = w;
  j["power_profile"] = {{"base_power_w", base},
                        {"idle_fraction", sc.profile.idle_fraction},
                        {"sleep_power_w", sc.profile.sleep_power_w}};

  j["params"] = {{"t_m_s", sc.params.t_m_s},
                 {"t_u", sc.params.t_u},
                 {"t_e_w", sc.params.t_e_w},
                 {"u_min", sc.params.u_min},
                 {"e_min_w", sc.params.e_min_w},
                 {"eps_converge", sc.params.eps_converge},
                 {"max_iters", sc.params.max_iters}};

  json pairs = json::array();
  for (const IePair& pr : sc.pairs) {
    json paths = json::array();
    for (const Path& p : pr.paths) paths.push_back(p.links);
    pairs.push_back({{"ingress", pr.ingress},
                     {"egress", pr.egress},
                     {"demand_mbps", pr.demand_bps / kMbps},
                     {"paths", paths},
                     {"initial_splits", pr.splits.x}});
  }
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

}  // namespace entre
