#include "doctest.h"

#include <random>

#include "entre/optimizer.hpp"
#include "entre/energy.hpp"
#include "support.hpp"

using namespace entre;
using namespace entre::testing;

namespace {

std::vector<SplitVector> splits_of(const Scenario& sc) {
  std::vector<SplitVector> out;
  for (const IePair& pr : sc.pairs) out.push_back(pr.splits);
  return out;
}

// Small feasible instances for oracle-vs-descent comparisons.
Scenario small_instance(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  const double caps[] = {40, 100, 400, 1000};
  const double watts[] = {0.3, 0.6, 1.2, 2.0};

  std::vector<PairSpec> pairs;
  int np = 1 + int(rng() % 2);
  for (int i = 0; i < np; ++i) {
    PairSpec ps;
    int m = 2 + int(rng() % 2);
    double min_bneck = 1e18;
    for (int p = 0; p < m; ++p) {
      PathSpec path;
      int nl = 1 + int(rng() % 2);
      for (int l = 0; l < nl; ++l) {
        double c = caps[rng() % 4];
        min_bneck = std::min(min_bneck, c);
        path.links.push_back({c, watts[rng() % 4]});
      }
      ps.paths.push_back(std::move(path));
    }
    ps.demand_mbps = (0.1 + 0.5 * unit(rng)) * min_bneck;
    pairs.push_back(std::move(ps));
  }
  return build_scenario(pairs, unit(rng));
}

}  // namespace

TEST_CASE("objective: single pair, single path") {
  // T = 30 Mbps on a 100 Mbps link, sigma = 1, base 2 W.
  Scenario sc = build_scenario({{30, {{{{100, 2.0}}}}, {1.0}}}, 1.0);
  ObjectiveValue v = evaluate_objective(sc, splits_of(sc));
  CHECK(v.feasible);
  CHECK(v.value == doctest::Approx(0.3 * 2.0));
  CHECK(v.argmax_pair == 0);
}

TEST_CASE("objective: zero demand is zero") {
  Scenario sc = build_scenario({{0, {{{{100, 2.0}}}, {{{100, 2.0}}}}, {}}});
  ObjectiveValue v = evaluate_objective(sc, splits_of(sc));
  CHECK(v.value == 0.0);
  CHECK(v.feasible);
}

TEST_CASE("objective: two identical paths at half capacity") {
  // sigma = 0, base 1 W, c = 100, T = 50, even split:
  // per path u = 0.25, E = 0.25 W, term = 0.25 * 0.25; sum = 0.125.
  Scenario sc = build_scenario({{50, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {}}}, 0.0);
  ObjectiveValue v = evaluate_objective(sc, splits_of(sc));
  CHECK(v.value == doctest::Approx(0.125));
}

TEST_CASE("objective: capacity violation flags infeasible") {
  Scenario sc = build_scenario({{150, {{{{100, 1.0}}}}, {1.0}}});
  ObjectiveValue v = evaluate_objective(sc, splits_of(sc));
  CHECK_FALSE(v.feasible);
}

TEST_CASE("objective: invariant under path permutation when symmetric") {
  Scenario sc = build_scenario({{60, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {0.3, 0.7}}});
  Scenario swapped = sc;
  std::swap(swapped.pairs[0].paths[0], swapped.pairs[0].paths[1]);
  std::swap(swapped.pairs[0].splits.x[0], swapped.pairs[0].splits.x[1]);
  swapped.rebuild_index();
  CHECK(evaluate_objective(sc, splits_of(sc)).value ==
        doctest::Approx(evaluate_objective(swapped, splits_of(swapped)).value));
}

TEST_CASE("objective: monotone in demand") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    Scenario sc = small_instance(rng);
    double before = evaluate_objective(sc, splits_of(sc)).value;
    sc.pairs[rng() % sc.pairs.size()].demand_bps *= 1.5;
    double after = evaluate_objective(sc, splits_of(sc)).value;
    CHECK(after >= before - 1e-12);
  }
}

TEST_CASE("brute force: symmetric pair optimum is the even split") {
  Scenario sc = build_scenario({{50, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {}}}, 0.0);
  SolveResult r = brute_force_solve(sc, 0.1);
  CHECK(r.objective.feasible);
  CHECK(r.splits[0].x[0] == doctest::Approx(0.5));
  CHECK(r.splits[0].x[1] == doctest::Approx(0.5));
}

TEST_CASE("brute force: all traffic on the cheap path under sigma=1") {
  // Energies 0.5 W vs 5 W, ample capacity: optimum loads the cheap path.
  Scenario sc =
      build_scenario({{40, {{{{1000, 0.5}}}, {{{1000, 5.0}}}}, {}}}, 1.0);
  SolveResult r = brute_force_solve(sc, 0.1);
  CHECK(r.splits[0].x[0] == doctest::Approx(1.0));
  CHECK(r.splits[0].x[1] == doctest::Approx(0.0));
}

TEST_CASE("brute force: infeasible demand raises NoFeasiblePoint") {
  Scenario sc = build_scenario({{500, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {}}});
  CHECK_THROWS_AS(brute_force_solve(sc, 0.1), NoFeasiblePointError);
}

TEST_CASE("brute force: budget guard") {
  std::vector<PairSpec> pairs;
  for (int i = 0; i < 6; ++i)
    pairs.push_back({10,
                     {{{{1000, 0.5}}}, {{{1000, 0.5}}}, {{{1000, 0.5}}},
                      {{{1000, 0.5}}}},
                     {}});
  Scenario sc = build_scenario(pairs);
  CHECK_THROWS_AS(brute_force_solve(sc, 0.01, 1'000'000), BudgetExceededError);
}

TEST_CASE("descent: already optimal start stays put") {
  Scenario sc = build_scenario({{50, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {}}}, 0.0);
  SolveResult oracle = brute_force_solve(sc, 0.05);
  SolveResult r = descent_solve(sc, oracle.splits);
  CHECK(r.objective.value <= oracle.objective.value + 1e-12);
}

TEST_CASE("descent: recovers the even split from a corner") {
  Scenario sc =
      build_scenario({{50, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {1.0, 0.0}}}, 0.0);
  SolveResult oracle = brute_force_solve(sc, 0.05);
  SolveResult r = descent_solve(sc, splits_of(sc));
  CHECK(std::abs(r.splits[0].x[0] - 0.5) <= 0.05 + 1e-9);
  CHECK(r.objective.value <=
        oracle.objective.value * 1.02 + 1e-9);
}

TEST_CASE("descent: never worse than its start") {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    Scenario sc = small_instance(rng);
    double start_val = evaluate_objective(sc, splits_of(sc)).value;
    SolveResult r = descent_solve(sc, splits_of(sc));
    CHECK(r.objective.value <= start_val + 1e-12);
  }
}

TEST_CASE("descent tracks the grid oracle on random small instances") {
  std::mt19937 rng(17);
  for (int t = 0; t < 15; ++t) {
    Scenario sc = small_instance(rng);
    SolveResult oracle = brute_force_solve(sc, 0.05);
    SolveResult r = descent_solve(sc, splits_of(sc));
    CHECK(std::abs(r.objective.value - oracle.objective.value) <=
          oracle.objective.value * 0.02 + 1e-9);
  }
}

TEST_CASE("feasibility flag agrees with an independent checker") {
  std::mt19937 rng(19);
  for (int t = 0; t < 40; ++t) {
    Scenario sc = random_scenario(rng);
    ObjectiveValue v = evaluate_objective(sc, splits_of(sc));

    NetworkState st = recompute_state(sc);
    bool ok = true;
    for (std::size_t i = 0; i < sc.links.size(); ++i)
      if (st.flow_bps[i] > sc.links[i].capacity_bps * (1 + 1e-9)) ok = false;
    for (const IePair& pr : sc.pairs) {
      double sum = 0;
      for (std::size_t pi = 0; pi < pr.splits.size(); ++pi) {
        double x = pr.splits.x[pi];
        if (x < 0 || x > 1 + 1e-9) ok = false;
        if (!pr.splits.excluded[pi]) sum += x;
      }
      if (std::abs(sum - 1.0) > 1e-9) ok = false;
    }
    CHECK(v.feasible == ok);
  }
}

TEST_CASE("optimal saving: fully redundant path sleeps its base power") {
  // sigma = 1: energy is pure base power, so sleeping one of two identical
  // 1 W links saves exactly half.
  Scenario sc = build_scenario({{50, {{{{100, 1.0}}}, {{{100, 1.0}}}}, {}}}, 1.0);
  EnergySavingResult r = optimal_energy_saving(sc);
  CHECK(r.saving == doctest::Approx(0.5));
  CHECK(r.sleeping_links.size() == 1);
}

TEST_CASE("optimal saving: nothing to exclude means zero saving") {
  Scenario sc = build_scenario({{50, {{{{100, 1.0}}}}, {1.0}},
                                {20, {{{{100, 0.5}}}}, {1.0}}}, 1.0);
  EnergySavingResult r = optimal_energy_saving(sc);
  CHECK(r.saving == doctest::Approx(0.0));
  CHECK(r.sleeping_links.empty());
}

TEST_CASE("optimal saving: keeps demands deliverable") {
  // Excluding the only big path would strand the demand, so the optimum
  // keeps it and sleeps nothing but the small spare.
  Scenario sc = build_scenario(
      {{90, {{{{100, 1.0}}}, {{{50, 0.2}}}}, {}}}, 1.0);
  EnergySavingResult r = optimal_energy_saving(sc);
  CHECK(r.saving == doctest::Approx(0.2 / 1.2));
  REQUIRE(r.sleeping_links.size() == 1);
  CHECK(r.sleeping_links[0] == 1);
}
