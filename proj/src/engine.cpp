#include "entre/engine.hpp"

#include <algorithm>
#include <cmath>

namespace entre {

std::vector<double> measure_rates(const IePair& pair,
                                  const std::vector<double>& delivered_bits,
                                  double t_m_s) {
  std::vector<double> rates(pair.paths.size(), 0.0);
  for (std::size_t pi = 0; pi < pair.paths.size(); ++pi) {
    if (pair.splits.excluded[pi]) continue;
    rates[pi] = delivered_bits[pi] / t_m_s;
  }
  return rates;
}

namespace {

double weighted_average(const std::vector<double>& rates,
                        const std::vector<double>& values,
                        const std::vector<char>& excluded) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (excluded[i]) continue;
    num += rates[i] * values[i];
    den += rates[i];
  }
  if (den > 0) return num / den;
  // All rates zero: fall back to the plain mean.
  double sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (excluded[i]) continue;
    sum += values[i];
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

}  // namespace

double pair_average_utilization(const std::vector<double>& rates,
                                const std::vector<double>& utils,
                                const std::vector<char>& excluded) {
  return weighted_average(rates, utils, excluded);
}

double pair_average_energy(const std::vector<double>& rates,
                           const std::vector<double>& energies,
                           const std::vector<char>& excluded) {
  return weighted_average(rates, energies, excluded);
}

std::vector<double> compute_delta_x(const PairRoundView& view,
                                    const std::vector<char>& excluded,
                                    double u_min) {
  std::vector<double> out(view.rate_bps.size(), 0.0);
  double total_rate = 0;
  for (std::size_t i = 0; i < view.rate_bps.size(); ++i)
    if (!excluded[i]) total_rate += view.rate_bps[i];
  if (total_rate <= 0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (excluded[i] || view.path_util[i] <= u_min) continue;
    out[i] = (view.avg_util - view.path_util[i]) * view.rate_bps[i] / total_rate;
  }
  return out;
}

std::vector<double> compute_delta_e(const PairRoundView& view,
                                    const std::vector<char>& excluded,
                                    double e_min_w) {
  std::vector<double> out(view.path_energy_w.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (excluded[i] || view.path_energy_w[i] <= e_min_w) continue;
    out[i] = view.avg_energy_w - view.path_energy_w[i];
  }
  return out;
}

std::vector<RoundAction> apply_rules(const PairRoundView& view,
                                     const std::vector<char>& excluded,
                                     const EntreParams& params) {
  std::vector<RoundAction> out(view.delta_x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (excluded[i]) continue;  // stays NoOp
    double dx = view.delta_x[i];
    double de = view.delta_e_w[i];
    if (dx > 0 && de > 0) {
      out[i] = {ActionKind::ApplyDelta, dx};                       // rule 1
    } else if (dx < 0 && de < 0) {
      out[i] = {ActionKind::ApplyDelta, dx};                       // rule 2
    } else if (dx > 0 && de < 0) {
      if (view.path_energy_w[i] - view.avg_energy_w > params.t_e_w)
        out[i] = {ActionKind::Exclude, 0.0};                       // rule 3a
    } else if (dx < 0 && de > 0) {
      if (view.path_util[i] - view.avg_util > params.t_u)
        out[i] = {ActionKind::ApplyDelta, dx};                     // rule 4a
    }
  }
  return out;
}

bool exclude_path(Scenario& sc, std::size_t pair_pos, std::size_t path_pos) {
  IePair& pr = sc.pairs[pair_pos];
  if (pr.splits.excluded[path_pos]) return false;
  if (pr.splits.active_count() <= 1) return false;  // keep connectivity

  double freed = pr.splits.x[path_pos];
  pr.splits.excluded[path_pos] = 1;
  pr.splits.x[path_pos] = 0.0;

  double remaining = 0;
  for (std::size_t i = 0; i < pr.splits.size(); ++i)
    if (!pr.splits.excluded[i]) remaining += pr.splits.x[i];
  if (remaining > 0) {
    for (std::size_t i = 0; i < pr.splits.size(); ++i)
      if (!pr.splits.excluded[i])
        pr.splits.x[i] += freed * (pr.splits.x[i] / remaining);
  } else {
    double share = (freed > 0 ? freed : 1.0) / pr.splits.active_count();
    for (std::size_t i = 0; i < pr.splits.size(); ++i)
      if (!pr.splits.excluded[i]) pr.splits.x[i] = share;
  }

  sync_link_states(sc);
  return true;
}

void apply_and_renormalize(SplitVector& splits,
                           const std::vector<RoundAction>& actions) {
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits.excluded[i]) continue;
    if (actions[i].kind == ActionKind::ApplyDelta)
      splits.x[i] = std::clamp(splits.x[i] + actions[i].delta_x, 0.0, 1.0);
  }
  double sum = 0;
  for (std::size_t i = 0; i < splits.size(); ++i)
    if (!splits.excluded[i]) sum += splits.x[i];
  if (sum > 0) {
    for (std::size_t i = 0; i < splits.size(); ++i)
      if (!splits.excluded[i]) splits.x[i] /= sum;
  } else {
    int n = splits.active_count();
    if (n > 0)
      for (std::size_t i = 0; i < splits.size(); ++i)
        if (!splits.excluded[i]) splits.x[i] = 1.0 / n;
  }
}

void sync_link_states(Scenario& sc) {
  std::vector<char> used(sc.links.size(), 0);
  for (const IePair& pr : sc.pairs)
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      if (pr.splits.excluded[pi]) continue;
      for (LinkId lid : pr.paths[pi].links) used[sc.link_pos(lid)] = 1;
    }
  for (std::size_t i = 0; i < sc.links.size(); ++i)
    sc.links[i].state = used[i] ? LinkState::Active : LinkState::Sleeping;
}

namespace {

// A path carrying exactly zero traffic measures a zero rate and can never
// attract traffic again. Nudge such pairs halfway toward the uniform split
// once so every surviving path stays measurable.
bool warm_up(Scenario& sc) {
  bool changed = false;
  for (IePair& pr : sc.pairs) {
    if (pr.demand_bps <= 0) continue;
    int active = pr.splits.active_count();
    if (active < 2) continue;
    bool has_zero = false;
    for (std::size_t i = 0; i < pr.splits.size(); ++i)
      if (!pr.splits.excluded[i] && pr.splits.x[i] <= 0) has_zero = true;
    if (!has_zero) continue;
    for (std::size_t i = 0; i < pr.splits.size(); ++i)
      if (!pr.splits.excluded[i])
        pr.splits.x[i] = 0.5 * pr.splits.x[i] + 0.5 / active;
    changed = true;
  }
  return changed;
}

}  // namespace

RoundReport entre_round(Scenario& sc, const EntreParams& params,
                        int round_index) {
  RoundReport rep;
  rep.warmed_up = warm_up(sc);

  NetworkState st = recompute_state(sc);
  std::vector<std::vector<double>> delivered = deliver(sc, st, params.t_m_s);

  double throughput = 0;

  // Measurement and decision phase against the immutable snapshot.
  rep.views.resize(sc.pairs.size());
  rep.actions.resize(sc.pairs.size());
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const IePair& pr = sc.pairs[i];
    PairRoundView& v = rep.views[i];
    v.rate_bps = measure_rates(pr, delivered[i], params.t_m_s);
    v.path_util = st.path_util[i];
    v.path_energy_w = st.path_energy_w[i];
    v.avg_util =
        pair_average_utilization(v.rate_bps, v.path_util, pr.splits.excluded);
    v.avg_energy_w =
        pair_average_energy(v.rate_bps, v.path_energy_w, pr.splits.excluded);
    v.delta_x = compute_delta_x(v, pr.splits.excluded, params.u_min);
    v.delta_e_w = compute_delta_e(v, pr.splits.excluded, params.e_min_w);
    rep.actions[i] = apply_rules(v, pr.splits.excluded, params);
    for (double bits : delivered[i]) throughput += bits / params.t_m_s;
  }

  // Commit phase.
  double max_abs_dx = 0;
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    apply_and_renormalize(sc.pairs[i].splits, rep.actions[i]);
    for (const RoundAction& a : rep.actions[i])
      if (a.kind == ActionKind::ApplyDelta)
        max_abs_dx = std::max(max_abs_dx, std::abs(a.delta_x));
    for (std::size_t pi = 0; pi < rep.actions[i].size(); ++pi)
      if (rep.actions[i][pi].kind == ActionKind::Exclude &&
          exclude_path(sc, i, pi))
        ++rep.exclusions;
  }
  sync_link_states(sc);

  NetworkState post = recompute_state(sc);
  rep.converged =
      max_abs_dx < params.eps_converge && rep.exclusions == 0 && !rep.warmed_up;
  rep.snapshot = make_snapshot(sc, post, round_index, throughput, max_abs_dx,
                               rep.converged);
  return rep;
}

RunResult run_until_convergence(Scenario& sc, const EntreParams& params) {
  RunResult res;
  for (int i = 0; i < params.max_iters; ++i) {
    RoundReport rep = entre_round(sc, params, i);
    res.trajectory.push_back(rep.snapshot);
    res.iterations = i + 1;
    if (rep.converged) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace entre
