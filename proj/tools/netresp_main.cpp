// netresp — network diffusion impact calculator.
//
// Subcommands: analyze, sweep, levers, simulate, graph, sir, presets.
// Exit codes: 0 success, 1 validation error, 2 computational error
// (non-convergence, step failure), 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "netresp/report.hpp"
#include "netresp/sim.hpp"
#include "netresp/sir.hpp"
#include "netresp/sweep.hpp"

namespace fs = std::filesystem;
using namespace netresp;

namespace {

struct LoadedScenario {
  ScenarioSpec spec;
  std::string base_dir;  // for resolving relative graph paths
};

// A scenario argument is first tried as a file path, then as a preset name.
LoadedScenario load_scenario_arg(const std::string& arg) {
  if (fs::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw IoError("cannot open scenario file: " + arg);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {parse_scenario(buffer.str()), fs::path(arg).parent_path().string()};
  }
  for (const std::string& name : preset_names()) {
    if (name == arg) return {load_preset(name), ""};
  }
  throw IoError("no such scenario file or preset: " + arg);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path);
  return out;
}

void warn_self_loops(const ScenarioReport& rep) {
  if (rep.graph && rep.graph->self_loops) {
    std::cerr << "warning: graph has self-loops; they inflate walk counts\n";
  }
}

std::string sim_report_text(const SimResult& sim, double analytic,
                            const AnalyticComparison& cmp) {
  std::ostringstream out;
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "trials           = %lld (%lld truncated)\n"
                "mean             = %.10g\n"
                "std error        = %.6g\n"
                "95%% CI           = [%.10g, %.10g]\n"
                "analytic         = %.10g\n"
                "z score          = %.4g\n",
                sim.trials, sim.trials_truncated, sim.mean, sim.std_error,
                sim.ci_low, sim.ci_high, analytic, cmp.z_score);
  out << buf;
  out << "verdict          = " << (cmp.consistent ? "consistent" : "INCONSISTENT");
  if (sim.trials_truncated > 0) {
    out << " (unreliable: " << sim.trials_truncated << " trials truncated)";
  }
  out << "\nper-depth mean counts:";
  for (std::size_t k = 0; k < sim.per_depth_mean_counts.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "  k=%zu: %.6g", k + 1,
                  sim.per_depth_mean_counts[k]);
    out << buf;
  }
  out << "\n";
  return out.str();
}

void write_sim_csv(std::ostream& out, const std::string& label,
                   const SimResult& sim, double analytic,
                   const AnalyticComparison& cmp) {
  out << "label,trials,truncated,mean,std_error,ci_low,ci_high,analytic,z,"
         "consistent\n";
  out << label << ',' << sim.trials << ',' << sim.trials_truncated << ','
      << format_double(sim.mean) << ',' << format_double(sim.std_error) << ','
      << format_double(sim.ci_low) << ',' << format_double(sim.ci_high) << ','
      << format_double(analytic) << ',' << format_double(cmp.z_score) << ','
      << (cmp.consistent ? "true" : "false") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network diffusion impact calculator"};
  app.require_subcommand(1);

  std::string csv_path;
  double tolerance = kDefaultRegimeTol;
  app.add_option("--csv", csv_path, "write CSV to this path instead of a table");
  app.add_option("--tolerance", tolerance, "critical-regime tolerance")
      ->check(CLI::NonNegativeNumber);

  // analyze <file>
  std::string analyze_file;
  CLI::App* analyze = app.add_subcommand("analyze", "single-scenario report");
  analyze->add_option("file", analyze_file, "scenario file or preset name")
      ->required();

  // sweep <file> --axis name=start:stop:count|v1,v2,...
  std::string sweep_file;
  std::vector<std::string> axis_args;
  long long sweep_cap = 1'000'000;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter grid to CSV");
  sweep->add_option("file", sweep_file, "scenario file or preset name")
      ->required();
  sweep->add_option("--axis", axis_args,
                    "axis as name=start:stop:count or name=v1,v2,...")
      ->required();
  sweep->add_option("--max-rows", sweep_cap, "grid row cap");

  // levers <file> [--budget M]
  std::string levers_file;
  std::optional<double> budget;
  CLI::App* levers = app.add_subcommand("levers", "critical lever targets");
  levers->add_option("file", levers_file, "scenario file or preset name")
      ->required();
  double budget_value = 0.0;
  CLI::Option* budget_opt =
      levers->add_option("--budget", budget_value, "multiplier budget for the depth cap");

  // simulate <file> --trials N --seed S [--cap K]
  std::string sim_file;
  long long trials = 0;
  std::uint64_t master_seed = 0;
  long long cap = 1'000'000;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo cascade runs");
  simulate->add_option("file", sim_file, "scenario file or preset name")
      ->required();
  simulate->add_option("--trials", trials, "number of trials")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", master_seed, "master RNG seed")->required();
  simulate->add_option("--cap", cap, "per-trial node cap")
      ->check(CLI::PositiveNumber);

  // graph <file> --graph-file path --seed-node i
  std::string graph_scn, graph_file;
  int seed_node = 0;
  CLI::App* graph = app.add_subcommand("graph", "walk-sum analysis on a graph");
  graph->add_option("file", graph_scn, "scenario file or preset name")
      ->required();
  graph->add_option("--graph-file", graph_file, "edge-list file")->required();
  graph->add_option("--seed-node", seed_node, "initiating node")->required();

  // sir --beta x --gamma y --population N --i0 z --t-max T --step h
  double beta = 0, gamma = 0, population = 0, i0 = 0, t_max = 0, step = 0;
  double s0 = -1, r0_init = 0;
  double behavioral_r = -1;
  CLI::App* sir = app.add_subcommand("sir", "SIR integration and thresholds");
  sir->add_option("--beta", beta, "transmission rate")->required();
  sir->add_option("--gamma", gamma, "recovery rate")->required();
  sir->add_option("--population", population, "population N")->required();
  sir->add_option("--i0", i0, "initially infectious")->required();
  sir->add_option("--t-max", t_max, "integration horizon")->required();
  sir->add_option("--step", step, "RK4 step")->required();
  sir->add_option("--s0", s0, "initially susceptible (default N - i0)");
  sir->add_option("--r0-init", r0_init, "initially removed");
  sir->add_option("--behavioral-r", behavioral_r,
                  "diffusion ratio to compare against the epidemic threshold");

  // presets [name]
  std::string preset_name;
  CLI::App* presets = app.add_subcommand("presets", "list or print shipped scenarios");
  presets->add_option("name", preset_name, "print this preset's file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage problems are validation errors under the exit-code contract
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      const LoadedScenario loaded = load_scenario_arg(analyze_file);
      const ScenarioReport rep = run_scenario(loaded.spec, tolerance, loaded.base_dir);
      warn_self_loops(rep);
      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        write_csv_header(out);
        write_csv_row(out, rep.spec.label, rep.spec.params, tolerance);
      } else {
        std::cout << render_report(rep);
      }
    } else if (*sweep) {
      const LoadedScenario loaded = load_scenario_arg(sweep_file);
      SweepSpec spec;
      spec.base = loaded.spec;
      spec.max_rows = sweep_cap;
      spec.regime_tol = tolerance;
      for (const std::string& arg : axis_args) {
        const std::size_t eq = arg.find('=');
        if (eq == std::string::npos) {
          throw ValidationError("axis must look like name=start:stop:count or "
                                "name=v1,v2,... (got '" + arg + "')");
        }
        SweepAxis axis;
        axis.param = arg.substr(0, eq);
        const std::string rhs = arg.substr(eq + 1);
        if (rhs.find(':') != std::string::npos) {
          double start = 0, stop = 0;
          int count = 0;
          if (std::sscanf(rhs.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3) {
            throw ValidationError("malformed grid '" + rhs + "'");
          }
          axis.values = linear_grid(start, stop, count);
        } else {
          std::stringstream ss(rhs);
          std::string item;
          while (std::getline(ss, item, ',')) {
            std::size_t consumed = 0;
            double value = 0.0;
            try {
              value = std::stod(item, &consumed);
            } catch (const std::exception&) {
              throw ValidationError("malformed axis value '" + item + "'");
            }
            if (consumed != item.size()) {
              throw ValidationError("malformed axis value '" + item + "'");
            }
            axis.values.push_back(value);
          }
        }
        spec.axes.push_back(std::move(axis));
      }
      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        sweep_grid(spec, out);
      } else {
        sweep_grid(spec, std::cout);
      }
    } else if (*levers) {
      const LoadedScenario loaded = load_scenario_arg(levers_file);
      if (budget_opt->count() > 0) budget = budget_value;
      const LeverReport rep = lever_report(loaded.spec, budget, tolerance);
      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        out << "lever,current,critical_at,feasible\n";
        const auto row = [&](const char* name, const LeverTarget& t) {
          out << name << ',' << format_double(t.current) << ','
              << format_double(t.target) << ',' << (t.feasible ? "true" : "false")
              << '\n';
        };
        row("b", rep.branching);
        row("alpha", rep.attenuation);
        row("q", rep.compliance);
      } else {
        std::cout << render_lever_report(rep);
      }
    } else if (*simulate) {
      const LoadedScenario loaded = load_scenario_arg(sim_file);
      SimConfig cfg;
      cfg.trials = trials;
      cfg.master_seed = master_seed;
      cfg.max_nodes_per_trial = cap;

      const ScenarioSpec& spec = loaded.spec;
      SimResult result;
      double analytic = 0.0;
      if (!spec.graph_path.empty()) {
        fs::path gpath(spec.graph_path);
        if (gpath.is_relative() && !loaded.base_dir.empty()) {
          gpath = fs::path(loaded.base_dir) / gpath;
        }
        const WeightedDigraph g = load_edge_list_file(gpath.string());
        result = simulate_graph_cascade(g, spec.params.weight,
                                        spec.params.attenuation,
                                        spec.params.compliance,
                                        SeedSpec{spec.seed_node},
                                        spec.params.depth, cfg);
        analytic = graph_total(spec.params.weight, spec.params.attenuation,
                               spec.params.compliance, g,
                               SeedSpec{spec.seed_node}, spec.params.depth)
                       .value;
      } else {
        result = simulate_branching(spec.params, cfg);
        analytic = total_responsibility(spec.params).value;
      }
      const AnalyticComparison cmp = compare_to_analytic(result, analytic);
      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        write_sim_csv(out, spec.label, result, analytic, cmp);
      } else {
        std::cout << sim_report_text(result, analytic, cmp);
      }
    } else if (*graph) {
      LoadedScenario loaded = load_scenario_arg(graph_scn);
      loaded.spec.graph_path = graph_file;
      loaded.spec.seed_node = seed_node;
      const ScenarioReport rep = run_scenario(loaded.spec, tolerance, "");
      warn_self_loops(rep);
      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        const GraphAnalysis& ga = *rep.graph;
        out << "label,nodes,arcs,seed_node,walk_total,rho,margin,convergent,"
               "overflow\n";
        out << rep.spec.label << ',' << ga.nodes << ',' << ga.arcs << ','
            << seed_node << ','
            << (ga.walk.overflow ? "" : format_double(ga.walk.value)) << ','
            << format_double(ga.spectral.rho) << ',' << format_double(ga.margin)
            << ',' << (ga.convergent ? "true" : "false") << ','
            << (ga.walk.overflow ? format_double(ga.walk.log_magnitude) : "")
            << '\n';
      } else {
        std::cout << render_report(rep);
      }
      if (rep.graph && !rep.graph->spectral.converged) {
        throw NotConverged(rep.graph->spectral);
      }
    } else if (*sir) {
      SirParams params;
      params.beta = beta;
      params.gamma = gamma;
      params.population = population;
      params.i0 = i0;
      params.s0 = s0 >= 0 ? s0 : population - i0 - r0_init;
      params.r0_init = r0_init;
      const SirTrajectory traj = integrate_sir(params, t_max, step);
      const double r0 = basic_reproduction_number(params);

      if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        out << "t,s,i,r\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
          out << format_double(traj.times[k]) << ',' << format_double(traj.s[k])
              << ',' << format_double(traj.i[k]) << ','
              << format_double(traj.r[k]) << '\n';
        }
      } else {
        const std::size_t peak = traj.peak_infectious_index();
        char buf[320];
        std::snprintf(buf, sizeof(buf),
                      "R0               = %.6g\n"
                      "outbreak grows   = %s\n"
                      "peak infectious  = %.6g at t = %.6g\n"
                      "final (t = %.6g) = S %.6g, I %.6g, R %.6g\n",
                      r0, r0 * params.s0 / params.population > 1.0 ? "yes" : "no",
                      traj.i[peak], traj.times[peak], traj.times.back(),
                      traj.s.back(), traj.i.back(), traj.r.back());
        std::cout << buf;
        if (behavioral_r >= 0) {
          const ThresholdReport rep = threshold_report(params, behavioral_r, tolerance);
          std::snprintf(buf, sizeof(buf),
                        "behavioral r     = %.6g [%s]\n"
                        "threshold sides  = %s\n",
                        behavioral_r, regime_name(rep.behavioral_regime.regime),
                        rep.aligned ? "aligned" : "not aligned");
          std::cout << buf;
        }
      }
    } else if (*presets) {
      if (!preset_name.empty()) {
        std::cout << preset_text(preset_name);
      } else {
        for (const std::string& name : preset_names()) {
          const ScenarioSpec spec = load_preset(name);
          char buf[160];
          std::snprintf(buf, sizeof(buf),
                        "%-22s w=%g b=%g alpha=%g q=%g d=%d\n", name.c_str(),
                        spec.params.weight, spec.params.branching,
                        spec.params.attenuation, spec.params.compliance,
                        spec.params.depth);
          std::cout << buf;
        }
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergentHorizon& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StepTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
