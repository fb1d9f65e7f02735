#include "entre/simulator.hpp"

#include <stdexcept>

#include "entre/baselines.hpp"

namespace entre {

Strategy strategy_from_name(const std::string& name) {
  if (name == "entre") return Strategy::Entre;
  if (name == "ospf") return Strategy::Ospf;
  if (name == "equal") return Strategy::Equal;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Entre: return "entre";
    case Strategy::Ospf: return "ospf";
    case Strategy::Equal: return "equal";
  }
  return "?";
}

RunResult run(Scenario& sc, Strategy strategy, const EntreParams& params) {
  if (strategy == Strategy::Entre) return run_until_convergence(sc, params);

  if (strategy == Strategy::Ospf)
    ospf_assign(sc);
  else
    equal_split_assign(sc);

  NetworkState st = recompute_state(sc);
  std::vector<std::vector<double>> delivered = deliver(sc, st, params.t_m_s);
  double throughput = 0;
  for (const auto& per_pair : delivered)
    for (double bits : per_pair) throughput += bits / params.t_m_s;

  RunResult res;
  res.trajectory.push_back(make_snapshot(sc, st, 0, throughput, 0.0, true));
  res.iterations = 1;
  res.converged = true;
  return res;
}

Summary summarize(const std::vector<MetricsSnapshot>& trajectory,
                  double reference_energy_w) {
  if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
  const MetricsSnapshot& last = trajectory.back();
  Summary s;
  s.throughput_bps = last.throughput_bps;
  s.total_energy_w = last.total_energy_w;
  s.energy_saving = reference_energy_w > 0
                        ? 1.0 - last.total_energy_w / reference_energy_w
                        : 0.0;
  s.sleeping_links_fraction = last.sleeping_links_fraction;
  s.excluded_routes_fraction = last.excluded_routes_fraction;
  s.iterations = int(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (trajectory[i].converged) {
      s.iterations = int(i) + 1;
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace entre
