#include "entre/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "entre/energy.hpp"
#include "entre/engine.hpp"

namespace entre {

namespace {

constexpr double kFeasTol = 1e-9;

std::vector<std::vector<double>> path_bottlenecks(const Scenario& sc) {
  std::vector<std::vector<double>> out(sc.pairs.size());
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    out[i].reserve(sc.pairs[i].paths.size());
    for (const Path& p : sc.pairs[i].paths)
      out[i].push_back(bottleneck_capacity(p, sc));
  }
  return out;
}

ObjectiveValue eval_with_bottlenecks(
    const Scenario& sc, const std::vector<std::vector<double>>& bneck) {
  ObjectiveValue res;
  NetworkState st = recompute_state(sc);

  res.feasible = true;
  for (std::size_t i = 0; i < sc.links.size(); ++i)
    if (st.flow_bps[i] > sc.links[i].capacity_bps * (1 + kFeasTol))
      res.feasible = false;
  for (const IePair& pr : sc.pairs) {
    double sum = 0;
    for (std::size_t pi = 0; pi < pr.splits.size(); ++pi) {
      double x = pr.splits.x[pi];
      if (x < -kFeasTol || x > 1 + kFeasTol) res.feasible = false;
      if (!pr.splits.excluded[pi]) sum += x;
    }
    if (std::abs(sum - 1.0) > kFeasTol) res.feasible = false;
  }

  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const IePair& pr = sc.pairs[i];
    double term = 0;
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      double x = pr.splits.x[pi];
      if (x <= 0) continue;
      term += x * pr.demand_bps / bneck[i][pi] * st.path_energy_w[i][pi];
    }
    if (res.argmax_pair < 0 || term > res.value) {
      res.value = term;
      res.argmax_pair = pr.id;
    }
  }
  if (res.argmax_pair < 0) res.value = 0;
  return res;
}

std::vector<SplitVector> splits_of(const Scenario& sc) {
  std::vector<SplitVector> out;
  out.reserve(sc.pairs.size());
  for (const IePair& pr : sc.pairs) out.push_back(pr.splits);
  return out;
}

void set_splits(Scenario& sc, const std::vector<SplitVector>& splits) {
  for (std::size_t i = 0; i < sc.pairs.size(); ++i)
    sc.pairs[i].splits = splits[i];
}

// Integer compositions of n into m parts, lexicographic.
void enumerate_compositions(int n, int m, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (m == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= n; ++a) {
    cur.push_back(a);
    enumerate_compositions(n - a, m - 1, cur, out);
    cur.pop_back();
  }
}

// Grid points of one pair's simplex over its non-excluded paths.
std::vector<std::vector<double>> pair_grid(const IePair& pr, int n) {
  std::vector<int> active;
  for (std::size_t pi = 0; pi < pr.paths.size(); ++pi)
    if (!pr.splits.excluded[pi]) active.push_back(int(pi));

  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  enumerate_compositions(n, int(active.size()), cur, comps);

  std::vector<std::vector<double>> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    std::vector<double> x(pr.paths.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k)
      x[active[k]] = double(c[k]) / n;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

ObjectiveValue evaluate_objective(const Scenario& sc) {
  return eval_with_bottlenecks(sc, path_bottlenecks(sc));
}

ObjectiveValue evaluate_objective(const Scenario& sc,
                                  const std::vector<SplitVector>& splits) {
  Scenario work = sc;
  work.rebuild_index();
  set_splits(work, splits);
  return evaluate_objective(work);
}

SolveResult brute_force_solve(const Scenario& sc, double grid_step,
                              std::uint64_t budget) {
  if (grid_step <= 0 || grid_step > 1)
    throw std::invalid_argument("grid_step must be in (0,1]");
  int n = int(std::lround(1.0 / grid_step));

  Scenario work = sc;
  work.rebuild_index();
  auto bneck = path_bottlenecks(work);

  std::vector<std::vector<std::vector<double>>> grids;
  std::uint64_t total = 1;
  for (const IePair& pr : work.pairs) {
    grids.push_back(pair_grid(pr, n));
    double next = double(total) * double(grids.back().size());
    if (next > double(budget))
      throw BudgetExceededError("grid would need " + std::to_string(next) +
                                " evaluations (budget " +
                                std::to_string(budget) + ")");
    total = std::uint64_t(next);
  }

  SolveResult best;
  bool found = false;
  std::vector<std::size_t> idx(work.pairs.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < work.pairs.size(); ++i)
      work.pairs[i].splits.x = grids[i][idx[i]];
    ObjectiveValue v = eval_with_bottlenecks(work, bneck);
    if (v.feasible && (!found || v.value < best.objective.value)) {
      best.objective = v;
      best.splits = splits_of(work);
      found = true;
    }
    // Lexicographic advance, last pair fastest.
    std::size_t k = work.pairs.size();
    while (k > 0) {
      --k;
      if (++idx[k] < grids[k].size()) break;
      idx[k] = 0;
      if (k == 0) {
        if (!found)
          throw NoFeasiblePointError("no feasible grid point");
        return best;
      }
    }
    if (work.pairs.empty()) {
      if (!found) throw NoFeasiblePointError("no feasible grid point");
      return best;
    }
  }
}

SolveResult descent_solve(const Scenario& sc,
                          const std::vector<SplitVector>& start,
                          const std::vector<double>& step_schedule,
                          int max_moves) {
  Scenario work = sc;
  work.rebuild_index();
  set_splits(work, start);
  auto bneck = path_bottlenecks(work);

  SolveResult best;
  best.splits = start;
  best.objective = eval_with_bottlenecks(work, bneck);
  if (!best.objective.feasible) return best;

  int moves = 0;
  for (double step : step_schedule) {
    bool improved = true;
    while (improved && moves < max_moves) {
      improved = false;

      // Visit pairs starting from the one attaining the max term.
      std::vector<std::size_t> order(work.pairs.size());
      std::iota(order.begin(), order.end(), 0u);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return work.pairs[a].id == best.objective.argmax_pair &&
                                work.pairs[b].id != best.objective.argmax_pair;
                       });

      NetworkState st = recompute_state(work);
      for (std::size_t i : order) {
        IePair& pr = work.pairs[i];
        std::vector<std::size_t> active;
        for (std::size_t pi = 0; pi < pr.paths.size(); ++pi)
          if (!pr.splits.excluded[pi]) active.push_back(pi);
        if (active.size() < 2) continue;

        // Marginal cost of adding traffic to each path at the current point.
        std::vector<double> marg(active.size());
        for (std::size_t k = 0; k < active.size(); ++k)
          marg[k] = pr.demand_bps / bneck[i][active[k]] *
                    st.path_energy_w[i][active[k]];
        std::vector<std::size_t> by_cost(active.size());
        std::iota(by_cost.begin(), by_cost.end(), 0u);
        std::stable_sort(by_cost.begin(), by_cost.end(),
                         [&](std::size_t a, std::size_t b) {
                           return marg[a] > marg[b];
                         });

        for (std::size_t si = 0; si < by_cost.size() && !improved; ++si) {
          std::size_t src = active[by_cost[si]];
          if (pr.splits.x[src] <= 0) continue;
          for (std::size_t di = by_cost.size(); di-- > 0 && !improved;) {
            std::size_t dst = active[by_cost[di]];
            if (dst == src) continue;
            double delta = std::min(step, pr.splits.x[src]);
            double keep_src = pr.splits.x[src], keep_dst = pr.splits.x[dst];
            pr.splits.x[src] -= delta;
            pr.splits.x[dst] = std::min(1.0, pr.splits.x[dst] + delta);
            ObjectiveValue v = eval_with_bottlenecks(work, bneck);
            if (v.feasible && v.value < best.objective.value - 1e-15) {
              best.objective = v;
              best.splits = splits_of(work);
              improved = true;
              ++moves;
            } else {
              pr.splits.x[src] = keep_src;
              pr.splits.x[dst] = keep_dst;
            }
          }
        }
        if (improved) break;
      }
    }
  }
  return best;
}

SolveResult descent_solve(const Scenario& sc,
                          const std::vector<SplitVector>& start) {
  return descent_solve(sc, start, {0.2, 0.1, 0.05, 0.02, 0.01, 0.005});
}

EnergySavingResult optimal_energy_saving(const Scenario& sc,
                                         std::uint64_t budget,
                                         double grid_step) {
  Scenario base = sc;
  base.rebuild_index();
  for (Link& l : base.links) l.state = LinkState::Active;
  for (IePair& pr : base.pairs) {
    std::fill(pr.splits.excluded.begin(), pr.splits.excluded.end(), char(0));
    for (std::size_t pi = 0; pi < pr.splits.size(); ++pi)
      pr.splits.x[pi] = 1.0 / pr.splits.size();
  }

  int n = int(std::lround(1.0 / grid_step));
  double per_combo = 1, combos = 1;
  for (const IePair& pr : base.pairs) {
    per_combo *= double(pair_grid(pr, n).size());
    combos *= double((1u << pr.paths.size()) - 1);
  }
  if (combos * per_combo > double(budget))
    throw BudgetExceededError("exclusion search would need up to " +
                              std::to_string(combos * per_combo) +
                              " evaluations (budget " + std::to_string(budget) +
                              ")");

  SolveResult ref = brute_force_solve(base, grid_step, budget);
  Scenario ref_sc = base;
  set_splits(ref_sc, ref.splits);
  double ref_energy = recompute_state(ref_sc).total_energy_w();

  EnergySavingResult out;
  out.reference_energy_w = ref_energy;
  out.best_energy_w = ref_energy;
  out.saving = 0.0;
  out.excluded.resize(base.pairs.size());
  for (std::size_t i = 0; i < base.pairs.size(); ++i)
    out.excluded[i].assign(base.pairs[i].paths.size(), 0);

  // All combinations of kept-path subsets, one nonempty subset per pair.
  std::vector<unsigned> masks(base.pairs.size(), 0);
  std::vector<unsigned> limits(base.pairs.size());
  for (std::size_t i = 0; i < base.pairs.size(); ++i)
    limits[i] = (1u << base.pairs[i].paths.size()) - 1;

  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == base.pairs.size()) {
      Scenario cand = base;
      for (std::size_t j = 0; j < cand.pairs.size(); ++j) {
        IePair& pr = cand.pairs[j];
        int kept = 0;
        for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
          bool keep = masks[j] & (1u << pi);
          pr.splits.excluded[pi] = keep ? 0 : 1;
          if (keep) ++kept;
        }
        for (std::size_t pi = 0; pi < pr.paths.size(); ++pi)
          pr.splits.x[pi] = pr.splits.excluded[pi] ? 0.0 : 1.0 / kept;
      }
      sync_link_states(cand);
      try {
        SolveResult r = brute_force_solve(cand, grid_step, budget);
        Scenario solved = cand;
        set_splits(solved, r.splits);
        double energy = recompute_state(solved).total_energy_w();
        if (energy < out.best_energy_w) {
          out.best_energy_w = energy;
          out.saving = 1.0 - energy / ref_energy;
          out.sleeping_links.clear();
          for (const Link& l : solved.links)
            if (l.state == LinkState::Sleeping)
              out.sleeping_links.push_back(l.id);
          for (std::size_t j = 0; j < solved.pairs.size(); ++j)
            out.excluded[j] = solved.pairs[j].splits.excluded;
        }
      } catch (const NoFeasiblePointError&) {
        // This exclusion combination cannot carry the demand; skip it.
      }
      return;
    }
    for (unsigned m = 1; m <= limits[i]; ++m) {
      masks[i] = m;
      walk(i + 1);
    }
  };
  walk(0);
  return out;
}

}  // namespace entre
