#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netresp/analytic.hpp"
#include "netresp/graph.hpp"
#include "netresp/scenario.hpp"
#include "netresp/spectral.hpp"
#include "netresp/walk.hpp"

namespace netresp {

struct GraphAnalysis {
  std::string path;
  int nodes = 0;
  long long arcs = 0;
  bool self_loops = false;
  WalkTotal walk;
  SpectralEstimate spectral;
  double margin = 0.0;        // alpha*q*rho(A)
  bool convergent = false;    // meaningful only when spectral.converged
};

struct ScenarioReport {
  ScenarioSpec spec;
  double ratio = 0.0;
  RegimeClass regime{Regime::Subcritical, kDefaultRegimeTol};
  double dyad = 0.0;
  SeriesValue multiplier;
  SeriesValue total;
  bool horizon_divergent = true;
  double infinite_multiplier = 0.0;  // valid when !horizon_divergent
  double infinite_total = 0.0;
  HopBreakdown hops;
  std::vector<std::pair<int, double>> capture_shares;  // {K, share}, K in {1,3,5}
  bool scheduled = false;
  SeriesValue scheduled_total;
  std::optional<GraphAnalysis> graph;
};

// Full single-scenario analysis.  A graph path in the spec is resolved
// relative to base_dir (unless absolute) and adds the walk-sum section.
ScenarioReport run_scenario(const ScenarioSpec& spec,
                            double regime_tol = kDefaultRegimeTol,
                            const std::string& base_dir = "");

std::string render_report(const ScenarioReport& report);

// CSV schema shared by `analyze --csv` and sweeps:
//   label,w,b,alpha,q,d,r,regime,T,M,overflow
// T and M are left empty when unrepresentable; the overflow column then
// carries d*ln(r).
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const std::string& label,
                   const ModelParams& params, double regime_tol);

struct LeverTarget {
  double current = 0.0;
  double target = 0.0;  // value putting r exactly at 1, others held fixed
  bool feasible = false;
};

struct LeverReport {
  double ratio = 0.0;
  RegimeClass regime{Regime::Subcritical, kDefaultRegimeTol};
  bool already_subcritical = false;
  LeverTarget branching;
  LeverTarget attenuation;
  LeverTarget compliance;
  bool has_budget = false;
  double budget = 0.0;
  bool cap_exists = false;     // false when even d = 1 exceeds the budget
  bool cap_unbounded = false;  // subcritical and M_inf within budget
  long long depth_cap = 0;     // largest d with M_d <= budget
  double multiplier_at_cap = 0.0;
};

LeverReport lever_report(const ScenarioSpec& spec,
                         std::optional<double> budget = std::nullopt,
                         double regime_tol = kDefaultRegimeTol);

std::string render_lever_report(const LeverReport& report);

}  // namespace netresp
