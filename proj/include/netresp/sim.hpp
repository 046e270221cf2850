#pragma once

#include <cstdint>
#include <vector>

#include "netresp/analytic.hpp"
#include "netresp/graph.hpp"
#include "netresp/mathutil.hpp"
#include "netresp/walk.hpp"

namespace netresp {

struct SimConfig {
  long long trials = 10000;
  std::uint64_t master_seed = 0;
  long long max_nodes_per_trial = 1'000'000;
  double confidence_z = 1.96;
  Exec exec = Exec::Parallel;

  void validate() const;
};

// Confidence bounds use the normal approximation; treat them as rough for
// heavy-tailed supercritical runs.
struct SimResult {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long long trials = 0;
  long long trials_truncated = 0;
  std::vector<double> per_depth_mean_counts;  // index k-1 = depth k
  std::vector<double> per_depth_std_error;
};

// Generative branching cascade.  Depth 1: the initiator affects
// floor(b) + Bernoulli(frac(b)) agents unconditionally.  Each agent affected
// at depth k contributes w * alpha^(k-1); independently with probability q
// it propagates, affecting a fresh fan-out at depth k+1.  Stops after depth
// d or once max_nodes_per_trial agents have been counted (trial flagged
// truncated but still included).  E[total] equals the closed-form T.
SimResult simulate_branching(const ModelParams& p, const SimConfig& cfg);

// Independent-cascade semantics on a unit-weight graph: a node activates at
// most once, at the earliest hop it is reached, contributing w * alpha^(k-1);
// on activation it attempts each outgoing arc once with probability q.
// Depth-1 neighbors of the seed are reached unconditionally.  The seed never
// contributes at hop 0 and its arcs fire only once, but a cycle back to it
// can activate it at a later hop like any other node.
SimResult simulate_graph_cascade(const WeightedDigraph& g, double weight,
                                 double attenuation, double compliance,
                                 SeedSpec seed, int depth,
                                 const SimConfig& cfg);

struct AnalyticComparison {
  double z_score;
  bool consistent;  // |z| <= 4; exact equality when the run is deterministic
};

AnalyticComparison compare_to_analytic(const SimResult& sim, double analytic);

}  // namespace netresp
