#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "entre/baselines.hpp"
#include "entre/optimizer.hpp"
#include "entre/scenario_io.hpp"
#include "entre/simulator.hpp"

namespace fs = std::filesystem;
using namespace entre;

namespace {

bool verbose() {
  const char* v = std::getenv("ENTRE_LOG");
  return v && std::string(v) != "" && std::string(v) != "0";
}

void log(const std::string& msg) {
  if (verbose()) std::cerr << "[entre] " << msg << "\n";
}

std::string csv_header() {
  return "round,throughput_mbps,total_energy_w,max_link_util,"
         "sleeping_frac,excluded_frac,max_abs_delta_x\n";
}

void write_csv(const fs::path& file,
               const std::vector<MetricsSnapshot>& trajectory) {
  std::ofstream out(file);
  out << csv_header();
  out << std::setprecision(12);
  for (const MetricsSnapshot& s : trajectory) {
    out << s.round << ',' << s.throughput_bps / 1e6 << ','
        << s.total_energy_w << ',' << s.max_link_utilization << ','
        << s.sleeping_links_fraction << ',' << s.excluded_routes_fraction
        << ',' << s.max_abs_delta_x << '\n';
  }
}

// Energy at the no-exclusion descent optimum with every link awake; the
// yardstick for energy-saving percentages when the exact oracle is too big.
double approx_reference_energy(const Scenario& sc) {
  Scenario base = sc;
  base.rebuild_index();
  for (Link& l : base.links) l.state = LinkState::Active;
  for (IePair& pr : base.pairs) {
    std::fill(pr.splits.excluded.begin(), pr.splits.excluded.end(), char(0));
    for (std::size_t i = 0; i < pr.splits.size(); ++i)
      pr.splits.x[i] = 1.0 / pr.splits.size();
  }
  std::vector<SplitVector> start;
  for (const IePair& pr : base.pairs) start.push_back(pr.splits);
  SolveResult r = descent_solve(base, start);
  for (std::size_t i = 0; i < base.pairs.size(); ++i)
    base.pairs[i].splits = r.splits[i];
  return recompute_state(base).total_energy_w();
}

void print_summary(std::ostream& out, const std::string& name,
                   const Summary& s) {
  out << std::left << std::setw(8) << name << std::right << std::fixed
      << std::setprecision(2) << std::setw(12) << s.throughput_bps / 1e6
      << std::setw(12) << s.total_energy_w << std::setw(10)
      << s.energy_saving * 100 << std::setw(10)
      << s.sleeping_links_fraction * 100 << std::setw(10)
      << s.excluded_routes_fraction * 100 << std::setw(8) << s.iterations
      << std::setw(6) << (s.converged ? "yes" : "no") << "\n";
}

void print_summary_header(std::ostream& out) {
  out << std::left << std::setw(8) << "run" << std::right << std::setw(12)
      << "tput_mbps" << std::setw(12) << "energy_w" << std::setw(10)
      << "saving%" << std::setw(10) << "sleep%" << std::setw(10) << "excl%"
      << std::setw(8) << "iters" << std::setw(6) << "conv" << "\n";
}

int cmd_run(const std::string& scenario_file, const std::string& strategy,
            const std::string& out_dir) {
  Scenario sc = parse_scenario(scenario_file);
  double ref = approx_reference_energy(sc);
  log("reference energy " + std::to_string(ref) + " W");

  RunResult res = run(sc, strategy_from_name(strategy), sc.params);
  Summary s = summarize(res.trajectory, ref);

  fs::create_directories(out_dir);
  write_csv(fs::path(out_dir) / "trajectory.csv", res.trajectory);
  std::ofstream dump(fs::path(out_dir) / "scenario.normalized.json");
  dump << dump_scenario(sc);

  std::ostringstream txt;
  print_summary_header(txt);
  print_summary(txt, strategy, s);
  std::ofstream sf(fs::path(out_dir) / "summary.txt");
  sf << txt.str();
  std::cout << txt.str();
  return 0;
}

int cmd_optimize(const std::string& scenario_file, const std::string& method,
                 double grid_step) {
  Scenario sc = parse_scenario(scenario_file);
  SolveResult r;
  if (method == "grid") {
    r = brute_force_solve(sc, grid_step);
  } else if (method == "descent") {
    std::vector<SplitVector> start;
    for (const IePair& pr : sc.pairs) start.push_back(pr.splits);
    r = descent_solve(sc, start);
  } else {
    std::cerr << "unknown method '" << method << "'\n";
    return 2;
  }
  std::cout << "objective " << std::setprecision(10) << r.objective.value
            << (r.objective.feasible ? " (feasible)" : " (infeasible)")
            << " argmax_pair " << r.objective.argmax_pair << "\n";
  for (std::size_t i = 0; i < r.splits.size(); ++i) {
    std::cout << "pair " << i << " splits";
    for (double x : r.splits[i].x) std::cout << ' ' << std::setprecision(6) << x;
    std::cout << "\n";
  }
  return 0;
}

int cmd_compare(const std::string& scenario_file, const std::string& out_dir,
                double grid_step) {
  Scenario base = parse_scenario(scenario_file);

  EnergySavingResult opt = optimal_energy_saving(base, 10'000'000, grid_step);
  log("optimal saving " + std::to_string(opt.saving));

  std::ostringstream txt;
  print_summary_header(txt);
  for (const std::string& name : {"entre", "ospf", "equal"}) {
    Scenario sc = parse_scenario(scenario_file);
    RunResult res = run(sc, strategy_from_name(name), sc.params);
    Summary s = summarize(res.trajectory, opt.reference_energy_w);
    print_summary(txt, name, s);
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      write_csv(fs::path(out_dir) / ("trajectory_" + name + ".csv"),
                res.trajectory);
    }
  }
  txt << std::fixed << std::setprecision(2) << "optimal saving "
      << opt.saving * 100 << "%  (reference " << opt.reference_energy_w
      << " W, best " << opt.best_energy_w << " W, " << opt.sleeping_links.size()
      << " links sleeping)\n";

  if (!out_dir.empty()) {
    std::ofstream sf(fs::path(out_dir) / "compare.txt");
    sf << txt.str();
  }
  std::cout << txt.str();
  return 0;
}

int cmd_sweep(const std::string& scenario_file, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir) {
  std::ostringstream csv;
  csv << "value,strategy,throughput_mbps,total_energy_w,saving,"
         "sleeping_frac,excluded_frac,iterations,converged\n";

  for (double v : values) {
    for (const std::string& name : {"entre", "ospf"}) {
      Scenario sc = parse_scenario(scenario_file);
      if (param == "paths") {
        int k = int(v);
        for (IePair& pr : sc.pairs) {
          auto routes = generate_disjoint_paths(sc, pr.ingress, pr.egress, k);
          pr.paths.clear();
          for (auto& links : routes) {
            Path p;
            p.pair = pr.id;
            p.links = std::move(links);
            pr.paths.push_back(std::move(p));
          }
          pr.splits.x.assign(pr.paths.size(), 1.0 / pr.paths.size());
          pr.splits.excluded.assign(pr.paths.size(), 0);
        }
      } else if (param == "demand") {
        for (IePair& pr : sc.pairs) pr.demand_bps *= v;
      } else if (param == "te") {
        sc.params.t_e_w = v;
      } else {
        std::cerr << "unknown sweep param '" << param << "'\n";
        return 2;
      }
      double ref = approx_reference_energy(sc);
      RunResult res = run(sc, strategy_from_name(name), sc.params);
      Summary s = summarize(res.trajectory, ref);
      csv << std::setprecision(10) << v << ',' << name << ','
          << s.throughput_bps / 1e6 << ',' << s.total_energy_w << ','
          << s.energy_saving << ',' << s.sleeping_links_fraction << ','
          << s.excluded_routes_fraction << ',' << s.iterations << ','
          << (s.converged ? 1 : 0) << '\n';
    }
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "sweep.csv");
    f << csv.str();
  }
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ENTRE energy-aware traffic engineering simulator"};
  app.require_subcommand(1);

  std::string scenario_file, out_dir, strategy = "entre", method = "grid";
  std::string param;
  double grid_step = 0.1;
  std::vector<double> values;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate one strategy");
  run_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
  run_cmd->add_option("--strategy", strategy, "entre|ospf|equal");
  run_cmd->add_option("--out", out_dir, "output directory")->required();

  CLI::App* opt_cmd = app.add_subcommand("optimize", "offline optimizer");
  opt_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
  opt_cmd->add_option("--method", method, "grid|descent");
  opt_cmd->add_option("--grid-step", grid_step, "simplex grid step");

  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "entre vs baselines vs optimal");
  cmp_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
  cmp_cmd->add_option("--out", out_dir, "output directory");
  cmp_cmd->add_option("--grid-step", grid_step, "simplex grid step");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  sweep_cmd->add_option("--scenario", scenario_file, "scenario file")
      ->required();
  sweep_cmd->add_option("--param", param, "paths|demand|te")->required();
  sweep_cmd->add_option("--values", values, "swept values (comma separated)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(scenario_file, strategy, out_dir);
    if (opt_cmd->parsed()) return cmd_optimize(scenario_file, method, grid_step);
    if (cmp_cmd->parsed()) return cmd_compare(scenario_file, out_dir, grid_step);
    if (sweep_cmd->parsed()) return cmd_sweep(scenario_file, param, values, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
