#pragma once

#include <span>
#include <vector>

#include "netresp/graph.hpp"
#include "netresp/mathutil.hpp"

namespace netresp {

struct SeedSpec {
  int node = 0;
};

namespace kernels {

// y[v] = sum over in-arcs (u -> v) of x[u] * w(u,v).  Each destination is an
// independent serial reduction, so the parallel path is bit-identical to the
// serial reference for any thread count.
void matvec_in(const WeightedDigraph& g, std::span<const double> x,
               std::span<double> y, Exec exec);

double dot(std::span<const double> x, std::span<const double> y, Exec exec);

}  // namespace kernels

struct WalkLayer {
  int depth;
  double walk_weight;  // total weight of length-k walks from the seed
  double layer_total;  // w * (alpha*q)^(k-1) * walk_weight
};

struct WalkTotal {
  double value = 0.0;
  bool overflow = false;
  double log_magnitude = 0.0;
  std::vector<WalkLayer> layers;  // truncated once magnitudes leave range
};

// Walk-sum total from a seed indicator vector: every length-k walk leaving
// the seed contributes w * (alpha*q)^(k-1) times its arc-weight product.
// On the out-degree-b tree from the root this equals the closed-form total.
// Cycles accumulate revisits; the activate-once counterpart lives in sim.
WalkTotal graph_total(double weight, double attenuation, double compliance,
                      const WeightedDigraph& g, SeedSpec seed, int depth,
                      Exec exec = Exec::Parallel);

}  // namespace netresp
