#include "netresp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "netresp/walk.hpp"

namespace netresp {

namespace {

constexpr int kNilpotencyProbeLimit = 64;

}  // namespace

SpectralEstimate spectral_radius(const WeightedDigraph& g, double tol,
                                 int max_iter) {
  if (g.node_count() < 1) throw ValidationError("graph must be nonempty");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");

  const std::size_t n = static_cast<std::size_t>(g.node_count());
  const Exec exec = Exec::Parallel;
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  // Unshifted sweep: for a positive start vector, A^T^k v == 0 exactly iff
  // A^k == 0, so a dying iterate proves rho = 0.
  const int probe_limit = std::min<long long>(g.node_count(), kNilpotencyProbeLimit);
  int iterations = 0;
  for (int k = 0; k < probe_limit; ++k) {
    kernels::matvec_in(g, v, next, exec);
    ++iterations;
    const double norm = block_sum(next, exec);
    if (norm == 0.0) return {0.0, iterations, true, 0.0};
    for (std::size_t i = 0; i < n; ++i) v[i] = next[i] / norm;
  }

  // Shifted power iteration with Rayleigh-quotient convergence test.
  double prev_quotient = 0.0;
  double rel_change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    kernels::matvec_in(g, v, next, exec);
    for (std::size_t i = 0; i < n; ++i) next[i] += v[i];  // (A^T + I) v
    ++iterations;

    const double vv = kernels::dot(v, v, exec);
    const double quotient = kernels::dot(v, next, exec) / vv;  // >= 1

    const double norm = std::sqrt(kernels::dot(next, next, exec));
    if (norm == 0.0 || !std::isfinite(norm)) break;
    for (std::size_t i = 0; i < n; ++i) v[i] = next[i] / norm;

    rel_change = std::abs(quotient - prev_quotient) / quotient;
    prev_quotient = quotient;
    if (it > 0 && rel_change <= tol) {
      return {std::max(0.0, quotient - 1.0), iterations, true, rel_change};
    }
  }
  return {std::max(0.0, prev_quotient - 1.0), iterations, false, rel_change};
}

NeumannCheck neumann_convergent(double attenuation, double compliance,
                                const WeightedDigraph& g, double tol) {
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw ValidationError("alpha must be in (0, 1]");
  }
  if (!(compliance >= 0.0 && compliance <= 1.0)) {
    throw ValidationError("q must be in [0, 1]");
  }
  if (!(tol >= 0.0)) throw ValidationError("tolerance must be >= 0");

  const SpectralEstimate est = spectral_radius(g);
  if (!est.converged) throw NotConverged(est);
  const double margin = (attenuation * compliance) * est.rho;
  return {margin < 1.0 - tol, margin, est};
}

}  // namespace netresp
