#include "netresp/sir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netresp {

void SirParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("beta must be positive");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be positive");
  }
  if (!(population > 0.0) || !std::isfinite(population)) {
    throw ValidationError("population must be positive");
  }
  if (s0 < 0.0 || i0 < 0.0 || r0_init < 0.0) {
    throw ValidationError("initial compartments must be >= 0");
  }
  const double sum = s0 + i0 + r0_init;
  if (std::abs(sum - population) > 1e-9 * population) {
    throw ValidationError("s0 + i0 + r0 must equal the population (got " +
                          std::to_string(sum) + " vs " +
                          std::to_string(population) + ")");
  }
}

SirParams SirParams::closed_population(double beta, double gamma,
                                       double population, double i0) {
  SirParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.population = population;
  p.i0 = i0;
  p.s0 = population - i0;
  p.r0_init = 0.0;
  p.validate();
  return p;
}

std::size_t SirTrajectory::peak_infectious_index() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < i.size(); ++k) {
    if (i[k] > i[best]) best = k;
  }
  return best;
}

double basic_reproduction_number(const SirParams& p) {
  p.validate();
  return p.beta / p.gamma;
}

SirTrajectory integrate_sir(const SirParams& p, double t_max, double step) {
  p.validate();
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ValidationError("step must be positive");
  }
  if (!(t_max >= step)) throw ValidationError("t_max must be >= step");

  const double n = p.population;
  const auto ds = [&](double s, double i) { return -p.beta * s * i / n; };
  const auto di = [&](double s, double i) {
    return p.beta * s * i / n - p.gamma * i;
  };
  const auto dr = [&](double /*s*/, double i) { return p.gamma * i; };

  const long long steps =
      static_cast<long long>(std::ceil(t_max / step - 1e-9));

  SirTrajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.s.reserve(static_cast<std::size_t>(steps) + 1);
  traj.i.reserve(static_cast<std::size_t>(steps) + 1);
  traj.r.reserve(static_cast<std::size_t>(steps) + 1);

  double s = p.s0, i = p.i0, r = p.r0_init;
  const auto record = [&](double t) {
    if (std::abs(s + i + r - n) > 1e-6 * n) {
      throw StepTooLarge("conservation drift exceeds 1e-6 at t = " +
                         std::to_string(t) + "; shrink the step");
    }
    if (s < -1e-9 * n || i < -1e-9 * n || r < -1e-9 * n) {
      throw StepTooLarge("negative compartment at t = " + std::to_string(t) +
                         "; shrink the step");
    }
    traj.times.push_back(t);
    traj.s.push_back(s);
    traj.i.push_back(i);
    traj.r.push_back(r);
  };

  record(0.0);
  for (long long k = 1; k <= steps; ++k) {
    const double h = step;

    const double s1 = ds(s, i), i1 = di(s, i), r1 = dr(s, i);
    const double s2 = ds(s + 0.5 * h * s1, i + 0.5 * h * i1);
    const double i2 = di(s + 0.5 * h * s1, i + 0.5 * h * i1);
    const double r2 = dr(s + 0.5 * h * s1, i + 0.5 * h * i1);
    const double s3 = ds(s + 0.5 * h * s2, i + 0.5 * h * i2);
    const double i3 = di(s + 0.5 * h * s2, i + 0.5 * h * i2);
    const double r3 = dr(s + 0.5 * h * s2, i + 0.5 * h * i2);
    const double s4 = ds(s + h * s3, i + h * i3);
    const double i4 = di(s + h * s3, i + h * i3);
    const double r4 = dr(s + h * s3, i + h * i3);

    s += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
    i += h / 6.0 * (i1 + 2.0 * i2 + 2.0 * i3 + i4);
    r += h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);

    record(static_cast<double>(k) * step);
  }
  return traj;
}

ThresholdReport threshold_report(const SirParams& p, double behavioral_ratio,
                                 double tol) {
  const double r0 = basic_reproduction_number(p);
  const bool grows = r0 * (p.s0 / p.population) > 1.0;
  const RegimeClass regime = classify_regime(behavioral_ratio, tol);

  const int epi_side = grows ? 1 : -1;
  const int behavior_side = regime.regime == Regime::Supercritical ? 1
                            : regime.regime == Regime::Subcritical ? -1
                                                                   : 0;
  return {r0, grows, regime, epi_side == behavior_side};
}

}  // namespace netresp
