#pragma once

#include <vector>

#include "entre/fluid.hpp"
#include "entre/model.hpp"

namespace entre {

enum class ActionKind { ApplyDelta, Exclude, NoOp };

struct RoundAction {
  ActionKind kind = ActionKind::NoOp;
  double delta_x = 0.0;
};

// Everything one pair observes in a measurement round.
struct PairRoundView {
  std::vector<double> rate_bps;
  std::vector<double> path_util;
  std::vector<double> path_energy_w;
  std::vector<double> delta_x;
  std::vector<double> delta_e_w;
  double avg_util = 0.0;     // rate-weighted over non-excluded paths
  double avg_energy_w = 0.0;
};

std::vector<double> measure_rates(const IePair& pair,
                                  const std::vector<double>& delivered_bits,
                                  double t_m_s);

// Rate-weighted averages; falls back to the unweighted mean over
// non-excluded paths when every rate is zero.
double pair_average_utilization(const std::vector<double>& rates,
                                const std::vector<double>& utils,
                                const std::vector<char>& excluded);
double pair_average_energy(const std::vector<double>& rates,
                           const std::vector<double>& energies,
                           const std::vector<char>& excluded);

// delta_x = (avg - U_ip) * r_ip / sum(r), only where U_ip > u_min.
std::vector<double> compute_delta_x(const PairRoundView& view,
                                    const std::vector<char>& excluded,
                                    double u_min);
// delta_E = avg - E_ip, only where E_ip > e_min.
std::vector<double> compute_delta_e(const PairRoundView& view,
                                    const std::vector<char>& excluded,
                                    double e_min_w);

// Rules 1-4. Rule 3a fires on E_ip - avg > t_e, rule 4a on U_ip - avg > t_u.
std::vector<RoundAction> apply_rules(const PairRoundView& view,
                                     const std::vector<char>& excluded,
                                     const EntreParams& params);

// Marks the path excluded and hands its share to the remaining paths in
// proportion to their current splits (equal shares when those are all
// zero). Refuses to remove a pair's last active path; returns whether the
// exclusion happened. Link states are resynced globally.
bool exclude_path(Scenario& sc, std::size_t pair_pos, std::size_t path_pos);

// x += delta for ApplyDelta actions, clamp to [0,1], rescale so the
// non-excluded splits sum to 1 again. All-zero vectors reset to uniform.
void apply_and_renormalize(SplitVector& splits,
                           const std::vector<RoundAction>& actions);

// A link sleeps iff no non-excluded path of any pair traverses it.
void sync_link_states(Scenario& sc);

struct RoundReport {
  MetricsSnapshot snapshot;
  bool converged = false;
  int exclusions = 0;
  bool warmed_up = false;
  std::vector<PairRoundView> views;
  std::vector<std::vector<RoundAction>> actions;
};

// One full measurement round: warm-up, deliver, per-pair deltas, rules,
// commit, resync, recompute. Mutates the scenario's splits and link states.
RoundReport entre_round(Scenario& sc, const EntreParams& params,
                        int round_index = 0);

struct RunResult {
  std::vector<MetricsSnapshot> trajectory;
  int iterations = 0;
  bool converged = false;
};

RunResult run_until_convergence(Scenario& sc, const EntreParams& params);

}  // namespace entre
