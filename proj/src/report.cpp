#include "netresp/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace netresp {

namespace {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string series_text(const SeriesValue& v) {
  if (!v.overflow) return fmt6(v.value);
  return "overflow (ln|.| = " + fmt6(v.log_magnitude) + ")";
}

std::string series_text(const WalkTotal& v) {
  if (!v.overflow) return fmt6(v.value);
  return "overflow (ln|.| = " + fmt6(v.log_magnitude) + ")";
}

}  // namespace

ScenarioReport run_scenario(const ScenarioSpec& spec, double regime_tol,
                            const std::string& base_dir) {
  spec.validate();

  ScenarioReport rep;
  rep.spec = spec;
  rep.ratio = effective_ratio(spec.params);
  rep.regime = classify_regime(rep.ratio, regime_tol);
  rep.dyad = dyadic_baseline(spec.params);
  rep.multiplier = network_multiplier(spec.params);
  rep.total = total_responsibility(spec.params);
  rep.hops = hop_breakdown(spec.params);

  rep.horizon_divergent = rep.ratio >= 1.0 - regime_tol;
  if (!rep.horizon_divergent) {
    rep.infinite_multiplier = infinite_horizon_multiplier(rep.ratio, regime_tol);
    rep.infinite_total = rep.dyad * rep.infinite_multiplier;
  }

  for (int k : {1, 3, 5}) {
    if (k <= spec.params.depth) {
      rep.capture_shares.emplace_back(
          k, capture_share_first_k(rep.ratio, spec.params.depth, k));
    }
  }

  if (spec.has_schedules()) {
    rep.scheduled = true;
    rep.scheduled_total = total_with_schedules(
        spec.params.weight, spec.params.branching, spec.params.depth,
        spec.schedule());
  }

  if (!spec.graph_path.empty()) {
    std::filesystem::path path(spec.graph_path);
    if (path.is_relative() && !base_dir.empty()) {
      path = std::filesystem::path(base_dir) / path;
    }
    GraphAnalysis ga;
    ga.path = path.string();
    const WeightedDigraph g = load_edge_list_file(ga.path);
    if (spec.seed_node >= g.node_count()) {
      throw ValidationError("seed_node " + std::to_string(spec.seed_node) +
                            " outside the loaded graph (" +
                            std::to_string(g.node_count()) + " nodes)");
    }
    ga.nodes = g.node_count();
    ga.arcs = g.arc_count();
    ga.self_loops = g.has_self_loops();
    ga.walk = graph_total(spec.params.weight, spec.params.attenuation,
                          spec.params.compliance, g, SeedSpec{spec.seed_node},
                          spec.params.depth);
    ga.spectral = spectral_radius(g);
    ga.margin =
        (spec.params.attenuation * spec.params.compliance) * ga.spectral.rho;
    ga.convergent = ga.margin < 1.0 - regime_tol;
    rep.graph = std::move(ga);
  }
  return rep;
}

std::string render_report(const ScenarioReport& rep) {
  std::ostringstream out;
  const ModelParams& p = rep.spec.params;

  out << "scenario: " << rep.spec.label << "\n";
  out << "  w = " << fmt6(p.weight) << ", b = " << fmt6(p.branching)
      << ", alpha = " << fmt6(p.attenuation) << ", q = " << fmt6(p.compliance)
      << ", d = " << p.depth << "\n\n";

  out << "effective ratio    r      = " << fmt6(rep.ratio) << "  ["
      << regime_name(rep.regime.regime) << ", tol " << fmt6(rep.regime.tolerance)
      << "]\n";
  out << "dyadic baseline    T_dyad = " << fmt6(rep.dyad) << "\n";
  out << "network multiplier M      = " << series_text(rep.multiplier) << "\n";
  out << "total              T      = " << series_text(rep.total) << "\n";
  if (rep.horizon_divergent) {
    out << "infinite horizon   M_inf  = divergent (r >= 1)\n";
  } else {
    out << "infinite horizon   M_inf  = " << fmt6(rep.infinite_multiplier)
        << "   T_inf = " << fmt6(rep.infinite_total) << "\n";
  }
  if (rep.scheduled) {
    out << "scheduled total    T_sched= " << series_text(rep.scheduled_total)
        << "\n";
  }

  out << "\nhop breakdown:\n";
  out << "  k   expected_count   per_agent_impact   layer_total\n";
  for (const HopLayer& layer : rep.hops.layers) {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "  %-3d %-16.6g %-18.6g %-14.6g\n",
                  layer.depth, layer.expected_count, layer.per_agent_impact,
                  layer.layer_total);
    out << buf;
  }
  if (rep.hops.overflow) {
    out << "  ... overflow; remaining layers exceed the floating range\n";
  }

  if (!rep.capture_shares.empty()) {
    out << "\ncapture shares:";
    for (const auto& [k, share] : rep.capture_shares) {
      out << "  first " << k << " hop" << (k > 1 ? "s" : "") << ": "
          << fmt6(100.0 * share) << "%";
    }
    out << "\n";
  }

  if (rep.graph) {
    const GraphAnalysis& ga = *rep.graph;
    out << "\ngraph: " << ga.path << " (" << ga.nodes << " nodes, " << ga.arcs
        << " arcs)\n";
    if (ga.self_loops) {
      out << "  warning: self-loops present; they inflate walk counts\n";
    }
    out << "  walk-sum total from seed " << rep.spec.seed_node << " = "
        << series_text(ga.walk) << "\n";
    out << "  spectral radius rho(A) = " << fmt6(ga.spectral.rho)
        << (ga.spectral.converged ? "" : "  [NOT CONVERGED]") << " ("
        << ga.spectral.iterations << " iterations)\n";
    out << "  Neumann margin alpha*q*rho = " << fmt6(ga.margin) << "  -> "
        << (ga.convergent ? "infinite-horizon walk sum converges"
                          : "infinite-horizon walk sum diverges")
        << "\n";
  }
  return out.str();
}

void write_csv_header(std::ostream& out) {
  out << "label,w,b,alpha,q,d,r,regime,T,M,overflow\n";
}

void write_csv_row(std::ostream& out, const std::string& label,
                   const ModelParams& params, double regime_tol) {
  const double ratio = effective_ratio(params);
  const RegimeClass regime = classify_regime(ratio, regime_tol);
  const SeriesValue total = total_responsibility(params);
  const SeriesValue multiplier = network_multiplier(params);
  const bool overflow = total.overflow || multiplier.overflow;

  out << label << ',' << format_double(params.weight) << ','
      << format_double(params.branching) << ','
      << format_double(params.attenuation) << ','
      << format_double(params.compliance) << ',' << params.depth << ','
      << format_double(ratio) << ',' << regime_name(regime.regime) << ',';
  out << (total.overflow ? "" : format_double(total.value)) << ',';
  out << (multiplier.overflow ? "" : format_double(multiplier.value)) << ',';
  if (overflow) {
    out << format_double(total.overflow ? total.log_magnitude
                                        : multiplier.log_magnitude);
  }
  out << '\n';
}

LeverReport lever_report(const ScenarioSpec& spec, std::optional<double> budget,
                         double regime_tol) {
  spec.validate();
  const ModelParams& p = spec.params;

  LeverReport rep;
  rep.ratio = effective_ratio(p);
  rep.regime = classify_regime(rep.ratio, regime_tol);
  rep.already_subcritical = rep.regime.regime == Regime::Subcritical;

  if (p.compliance > 0.0) {
    const LeverSolution b = solve_critical_lever(Lever::Branching,
                                                 p.attenuation, p.compliance);
    rep.branching = {p.branching, b.value, b.feasible};
    const LeverSolution a = solve_critical_lever(Lever::Attenuation,
                                                 p.branching, p.compliance);
    rep.attenuation = {p.attenuation, a.value, a.feasible};
  } else {
    // q = 0 kills propagation outright; no finite lever on b or alpha exists.
    rep.branching = {p.branching, std::numeric_limits<double>::infinity(), false};
    rep.attenuation = {p.attenuation, std::numeric_limits<double>::infinity(),
                       false};
  }
  const LeverSolution q =
      solve_critical_lever(Lever::Compliance, p.branching, p.attenuation);
  rep.compliance = {p.compliance, q.value, q.feasible};

  if (budget) {
    rep.has_budget = true;
    rep.budget = *budget;
    if (!(std::isfinite(*budget))) throw ValidationError("budget must be finite");
    if (*budget < 1.0) {
      rep.cap_exists = false;  // even the dyadic hop exceeds the budget
    } else if (rep.ratio < 1.0 - regime_tol &&
               infinite_horizon_multiplier(rep.ratio, regime_tol) <= *budget) {
      rep.cap_exists = true;
      rep.cap_unbounded = true;
    } else {
      // Largest d with M_d <= budget; M_d is strictly increasing here.
      double m = 0.0, term = 1.0;
      long long d = 0;
      while (d < 100000000 && m + term <= *budget) {
        m += term;
        term *= rep.ratio;
        ++d;
        if (term == 0.0 || m + term == m) {
          // partial sums have stagnated below the budget: no finite cap binds
          rep.cap_unbounded = true;
          break;
        }
      }
      rep.cap_exists = d > 0;
      rep.depth_cap = d;
      rep.multiplier_at_cap = m;
    }
  }
  return rep;
}

std::string render_lever_report(const LeverReport& rep) {
  std::ostringstream out;
  out << "effective ratio r = " << fmt6(rep.ratio) << "  ["
      << regime_name(rep.regime.regime) << "]\n";
  if (rep.already_subcritical) {
    out << "already subcritical; no lever reduction needed\n";
  }
  const auto lever_line = [&](const char* name, const LeverTarget& t) {
    out << "  " << name << ": current " << fmt6(t.current) << ", critical at "
        << fmt6(t.target) << (t.feasible ? "" : "  [infeasible]") << "\n";
  };
  out << "critical lever targets (value putting r = 1, others fixed):\n";
  lever_line("b    ", rep.branching);
  lever_line("alpha", rep.attenuation);
  lever_line("q    ", rep.compliance);

  if (rep.has_budget) {
    out << "depth cap for multiplier budget M <= " << fmt6(rep.budget) << ": ";
    if (!rep.cap_exists) {
      out << "none (even d = 1 exceeds the budget)\n";
    } else if (rep.cap_unbounded) {
      out << "unbounded (subcritical, M_inf within budget)\n";
    } else {
      out << "d* = " << rep.depth_cap
          << " (M = " << fmt6(rep.multiplier_at_cap) << ")\n";
    }
  }
  return out.str();
}

}  // namespace netresp
