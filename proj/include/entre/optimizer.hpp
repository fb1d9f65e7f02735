#pragma once

#include <cstdint>
#include <vector>

#include "entre/model.hpp"

namespace entre {

struct ObjectiveValue {
  double value = 0.0;
  int argmax_pair = -1;
  bool feasible = false;
};

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFeasiblePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Min-max objective: per pair, sum over paths of
// (x_ip * T_i / bottleneck(p)) * E_ip, maximized over pairs. Energies are
// evaluated at the utilizations the candidate splits induce. Feasibility
// covers nonnegativity, the [0,1] box, per-pair sums of 1 and every link's
// capacity.
ObjectiveValue evaluate_objective(const Scenario& sc,
                                  const std::vector<SplitVector>& splits);

// Objective of the scenario's own splits; used by the solvers.
ObjectiveValue evaluate_objective(const Scenario& sc);

struct SolveResult {
  std::vector<SplitVector> splits;
  ObjectiveValue objective;
};

// Exhaustive search over the product of per-pair simplex grids.
// Deterministic: lexicographically smallest argmin wins ties.
SolveResult brute_force_solve(const Scenario& sc, double grid_step,
                              std::uint64_t budget = 10'000'000);

// Projected coordinate descent: move split mass between two paths of one
// pair, keep only feasible strictly improving moves, shrink the step.
// The objective sequence is nonincreasing; returns best seen.
SolveResult descent_solve(const Scenario& sc,
                          const std::vector<SplitVector>& start,
                          const std::vector<double>& step_schedule,
                          int max_moves = 10'000);

SolveResult descent_solve(const Scenario& sc,
                          const std::vector<SplitVector>& start);

struct EnergySavingResult {
  double saving = 0.0;
  double reference_energy_w = 0.0;
  double best_energy_w = 0.0;
  std::vector<LinkId> sleeping_links;
  std::vector<std::vector<char>> excluded;  // per pair, per path
};

// Exhaustive exclusion-subset search: for every way of keeping a nonempty
// path subset per pair, sleep the globally unused links, optimize the
// remaining splits, and report the deepest feasible energy cut relative to
// the all-links-active no-exclusion optimum.
EnergySavingResult optimal_energy_saving(const Scenario& sc,
                                         std::uint64_t budget = 10'000'000,
                                         double grid_step = 0.1);

}  // namespace entre
