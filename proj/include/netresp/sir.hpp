#pragma once

#include <cstddef>
#include <vector>

#include "netresp/analytic.hpp"
#include "netresp/errors.hpp"

namespace netresp {

struct SirParams {
  double beta = 0.0;        // transmission rate (1/time)
  double gamma = 0.0;       // recovery rate (1/time)
  double population = 0.0;  // N
  double s0 = 0.0;
  double i0 = 0.0;
  double r0_init = 0.0;

  void validate() const;

  // s0 = N - i0, r0 = 0.
  static SirParams closed_population(double beta, double gamma,
                                     double population, double i0);
};

struct SirTrajectory {
  std::vector<double> times;
  std::vector<double> s;
  std::vector<double> i;
  std::vector<double> r;

  std::size_t peak_infectious_index() const;
};

// R0 = beta / gamma.
double basic_reproduction_number(const SirParams& p);

// Fixed-step classical RK4 on dS = -beta*S*I/N, dI = beta*S*I/N - gamma*I,
// dR = gamma*I, sampled at every step.  Throws StepTooLarge if conservation
// drifts beyond 1e-6*N or any compartment dips below -1e-9*N; negative
// excursions are never clamped silently.
SirTrajectory integrate_sir(const SirParams& p, double t_max, double step);

struct ThresholdReport {
  double r0;
  bool outbreak_grows;          // R0 * s0/N > 1
  RegimeClass behavioral_regime;
  bool aligned;                 // both thresholds on the same side of 1
};

// Compares the epidemic threshold with the behavioral diffusion regime.
// The comparison is of regime sides only; the two ratios measure different
// processes and are never equated numerically.
ThresholdReport threshold_report(const SirParams& p, double behavioral_ratio,
                                 double tol = kDefaultRegimeTol);

}  // namespace netresp
