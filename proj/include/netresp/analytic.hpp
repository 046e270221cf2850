#pragma once

#include <vector>

#include "netresp/errors.hpp"

// Closed forms for the branching diffusion model: an initiating act of
// valence w reaches b immediate neighbors; each hop attenuates impact by
// alpha and propagates with probability q, up to a depth horizon d.  The
// expected total over all hops is a geometric series in the effective
// ratio r = b*alpha*q, which also classifies the regime (saturating,
// linear, or geometrically growing).

namespace netresp {

struct ModelParams {
  double weight = 1.0;       // w: baseline act valence; any finite sign
  double branching = 1.0;    // b >= 1: expected immediate neighbors
  double attenuation = 1.0;  // alpha in (0, 1]: per-hop salience decay
  double compliance = 1.0;   // q in [0, 1]: adopt-and-retransmit probability
  int depth = 1;             // d >= 1: hop horizon

  // Throws ValidationError naming the offending key (w, b, alpha, q, d).
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

enum class Regime { Subcritical, Critical, Supercritical };

struct RegimeClass {
  Regime regime;
  double tolerance;  // half-width of the critical band used to classify
};

const char* regime_name(Regime regime);

inline constexpr double kDefaultRegimeTol = 1e-9;

// Band around r = 1 inside which geometric sums are evaluated by direct
// summation; the closed form divides by 1-r and cancels catastrophically.
inline constexpr double kNearCriticalBand = 1e-9;

// Result of a geometric-series evaluation.  When the value exceeds the
// floating range the overflow flag is set and log_magnitude carries
// d*ln(r), so sweeps and CSV output never see non-finite numbers.
struct SeriesValue {
  double value = 0.0;
  bool overflow = false;
  double log_magnitude = 0.0;
};

// r = b * (alpha * q).  The inner grouping shares its single rounding with
// the per-hop discount used by the walk-sum and hop-table paths.
double effective_ratio(const ModelParams& p);

RegimeClass classify_regime(double ratio, double tol = kDefaultRegimeTol);

// sum_{j=0}^{depth-1} ratio^j, the depth-d network multiplier.
SeriesValue geometric_multiplier(double ratio, int depth);

// M = (1 - r^d) / (1 - r), or d at criticality; total / (w*b) for w != 0.
SeriesValue network_multiplier(const ModelParams& p);

// T = w * b * M: expected impact summed over all hops.
SeriesValue total_responsibility(const ModelParams& p);

// First-hop-only impact w*b.
double dyadic_baseline(const ModelParams& p);

// 1 / (1 - r); throws DivergentHorizon unless r < 1 - tol.
double infinite_horizon_multiplier(double ratio, double tol = kDefaultRegimeTol);

struct HopLayer {
  int depth;                // k, 1-based
  double expected_count;    // b^k * q^(k-1)
  double per_agent_impact;  // w * alpha^(k-1)
  double layer_total;       // w * b^k * (alpha*q)^(k-1)
};

struct HopBreakdown {
  std::vector<HopLayer> layers;  // truncated early on overflow
  double total = 0.0;
  bool overflow = false;
  double log_magnitude = 0.0;
};

HopBreakdown hop_breakdown(const ModelParams& p);

// Fraction of the depth-d total contributed by the first K hops.
double capture_share_first_k(double ratio, int depth, int first_k);

// Infinite-horizon share 1 - r^K; requires r < 1 - tol.
double capture_share_first_k_infinite(double ratio, int first_k,
                                      double tol = kDefaultRegimeTol);

// Fraction of the depth-d total contributed by the last K hops; r > 1 only.
double tail_share_last_k(double ratio, int depth, int last_k);

// d -> infinity limit of the tail share, 1 - r^(-K); r > 1 only.
double tail_share_last_k_limit(double ratio, int last_k);

struct PerturbationEstimate {
  double exact;   // ((1+eps)^d - 1) / eps, continued to d at eps = 0
  double approx;  // d + d*(d-1)/2 * eps
};

// Sensitivity of the multiplier at the critical point to a ratio shift eps.
// Accurate for |eps|*d < 0.5; both forms returned for comparison.
PerturbationEstimate critical_perturbation_estimate(int depth, double eps);

// Expected number of agents reached (attenuation ignored):
// b * (1 - (b*q)^d) / (1 - b*q), or b*d when b*q = 1.
SeriesValue reach_count(double branching, double compliance, int depth);

// Depth-dependent parameter schedules.  Entry i (0-based) applies to the
// hop from depth i+1 to depth i+2, so d-1 entries cover a horizon of d.
// A response table replaces the cumulative attenuation product outright:
// depth k then weighs impact by response[k-1] instead of prod(alpha_i).
struct DepthSchedule {
  std::vector<double> attenuation;  // each in (0, 1]; required unless response given
  std::vector<double> compliance;   // each in [0, 1]
  std::vector<double> response;     // positive, non-increasing, >= d entries

  void validate(int depth) const;
};

// T = w * sum_k R(k) * b^k * prod_{i<k} q_i with R(k) as described above.
// Reduces to total_responsibility for constant schedules.
SeriesValue total_with_schedules(double weight, double branching, int depth,
                                 const DepthSchedule& sched);

enum class Lever { Branching, Attenuation, Compliance };

struct LeverSolution {
  double value;   // reported even when infeasible, never clamped
  bool feasible;  // solved value lies in the parameter's own domain
};

// Value of the named parameter that puts b*alpha*q exactly at 1, given the
// other two factors.
LeverSolution solve_critical_lever(Lever unknown, double known_a,
                                   double known_b);

}  // namespace netresp
