#include "netresp/walk.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace netresp {

namespace kernels {

void matvec_in(const WeightedDigraph& g, std::span<const double> x,
               std::span<double> y, Exec exec) {
  const int n = g.node_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
  (void)exec;
#endif
  for (int v = 0; v < n; ++v) {
    const auto sources = g.in_sources(v);
    const auto weights = g.in_weights(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      acc += x[sources[i]] * weights[i];
    }
    y[v] = acc;
  }
}

double dot(std::span<const double> x, std::span<const double> y, Exec exec) {
  const std::size_t n = x.size();
  const long long nblocks =
      static_cast<long long>((n + kSumBlock - 1) / kSumBlock);
  std::vector<double> partials(static_cast<std::size_t>(nblocks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
  (void)exec;
#endif
  for (long long bi = 0; bi < nblocks; ++bi) {
    const std::size_t begin = static_cast<std::size_t>(bi) * kSumBlock;
    const std::size_t end = begin + kSumBlock < n ? begin + kSumBlock : n;
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += x[i] * y[i];
    partials[static_cast<std::size_t>(bi)] = acc;
  }
  KbnSum total;
  for (double p : partials) total.add(p);
  return total.value();
}

}  // namespace kernels

WalkTotal graph_total(double weight, double attenuation, double compliance,
                      const WeightedDigraph& g, SeedSpec seed, int depth,
                      Exec exec) {
  if (!std::isfinite(weight)) throw ValidationError("w must be finite");
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw ValidationError("alpha must be in (0, 1]");
  }
  if (!(compliance >= 0.0 && compliance <= 1.0)) {
    throw ValidationError("q must be in [0, 1]");
  }
  if (depth < 1) throw ValidationError("d must be >= 1");
  if (seed.node < 0 || seed.node >= g.node_count()) {
    throw ValidationError("seed node " + std::to_string(seed.node) +
                          " outside node range [0, " +
                          std::to_string(g.node_count()) + ")");
  }

  const double discount = attenuation * compliance;
  const double rescale_limit = 1e250;

  std::vector<double> x(static_cast<std::size_t>(g.node_count()), 0.0);
  std::vector<double> y(x.size(), 0.0);
  x[static_cast<std::size_t>(seed.node)] = 1.0;

  WalkTotal out;
  double total = 0.0;
  double factor = 1.0;  // discount^(k-1)

  // Once the walk-count vector threatens the floating range the iterate is
  // renormalized every step and layers are carried in log space.  A layer
  // converts back to the linear total while it is still representable; the
  // rest accumulate into a log-sum-exp and flag overflow.
  bool scaled = false;
  double log_scale = 0.0;   // ln of the factor removed from x so far
  double log_factor = 0.0;  // ln(|w| * discount^(k-1)), tracked incrementally
  double log_sum = -std::numeric_limits<double>::infinity();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const auto log_add = [neg_inf](double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
  };

  for (int k = 1; k <= depth; ++k) {
    kernels::matvec_in(g, x, y, exec);
    std::swap(x, y);
    const double norm = block_sum(x, exec);
    if (norm == 0.0) break;  // no walks of this length remain

    if (!scaled) {
      const double layer = (weight * factor) * norm;
      if (std::isfinite(norm) && norm < rescale_limit &&
          std::abs(layer) < rescale_limit) {
        out.layers.push_back({k, norm, layer});
        total += layer;
        factor *= discount;
        continue;
      }
      scaled = true;
      log_factor = (weight != 0.0 && factor > 0.0)
                       ? std::log(std::abs(weight)) + std::log(factor)
                       : neg_inf;
    }

    const double log_norm = std::log(norm) + log_scale;
    const double log_layer = log_factor + log_norm;
    if (log_layer < 690.0) {  // still representable; keep the total honest
      total += std::copysign(std::exp(log_layer), weight);
    } else {
      out.overflow = true;
      log_sum = log_add(log_sum, log_layer);
    }

    // Renormalize the iterate and roll the hop discount into log space.
    for (double& v : x) v /= norm;
    log_scale = log_norm;
    log_factor += (discount > 0.0) ? std::log(discount) : neg_inf;
  }

  if (out.overflow) {
    out.value = 0.0;
    out.log_magnitude =
        log_add(log_sum, total != 0.0 ? std::log(std::abs(total)) : neg_inf);
  } else {
    out.value = total;
  }
  return out;
}

}  // namespace netresp
