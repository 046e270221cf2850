#include "netresp/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "netresp/mathutil.hpp"

namespace netresp {

namespace {

constexpr double kLogDoubleMax = 709.782712893384;  // ln(DBL_MAX)

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

std::string num(double x) { return std::to_string(x); }

}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(weight), "w must be finite (got " + num(weight) + ")");
  require(std::isfinite(branching) && branching >= 1.0,
          "b must be >= 1 (got " + num(branching) + ")");
  require(std::isfinite(attenuation) && attenuation > 0.0 && attenuation <= 1.0,
          "alpha must be in (0, 1] (got " + num(attenuation) + ")");
  require(std::isfinite(compliance) && compliance >= 0.0 && compliance <= 1.0,
          "q must be in [0, 1] (got " + num(compliance) + ")");
  require(depth >= 1, "d must be >= 1 (got " + std::to_string(depth) + ")");
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "?";
}

double effective_ratio(const ModelParams& p) {
  p.validate();
  return p.branching * (p.attenuation * p.compliance);
}

RegimeClass classify_regime(double ratio, double tol) {
  require(std::isfinite(ratio) && ratio >= 0.0,
          "ratio must be finite and >= 0 (got " + num(ratio) + ")");
  require(std::isfinite(tol) && tol >= 0.0, "tolerance must be >= 0");
  if (std::abs(ratio - 1.0) <= tol) return {Regime::Critical, tol};
  if (ratio < 1.0) return {Regime::Subcritical, tol};
  return {Regime::Supercritical, tol};
}

SeriesValue geometric_multiplier(double ratio, int depth) {
  require(std::isfinite(ratio) && ratio >= 0.0,
          "ratio must be finite and >= 0 (got " + num(ratio) + ")");
  require(depth >= 1, "d must be >= 1 (got " + std::to_string(depth) + ")");

  const double delta = ratio - 1.0;
  if (std::abs(delta) <= kNearCriticalBand) {
    // Near the knife-edge the closed form divides two vanishing quantities;
    // sum the series directly instead.  Exactly d at ratio == 1.
    KbnSum sum;
    double term = 1.0;
    for (int j = 0; j < depth; ++j) {
      sum.add(term);
      term *= ratio;
    }
    return {sum.value(), false, 0.0};
  }

  if (ratio > 1.0) {
    const double log_total = depth * std::log(ratio);
    if (log_total > kLogDoubleMax) return {0.0, true, log_total};
  }

  double multiplier;
  if (std::abs(delta) < 1e-5) {
    // Close to critical (but outside the summation band) 1 - r^d loses
    // digits; expm1/log1p keeps full precision here.
    multiplier = std::expm1(depth * std::log1p(delta)) / delta;
  } else {
    multiplier = (1.0 - pow_int(ratio, depth)) / (1.0 - ratio);
  }
  if (!std::isfinite(multiplier)) return {0.0, true, depth * std::log(ratio)};
  return {multiplier, false, 0.0};
}

SeriesValue network_multiplier(const ModelParams& p) {
  return geometric_multiplier(effective_ratio(p), p.depth);
}

SeriesValue total_responsibility(const ModelParams& p) {
  const SeriesValue m = network_multiplier(p);
  if (p.weight == 0.0) return {0.0, false, 0.0};  // every term is zero
  if (m.overflow) return m;
  const double total = (p.weight * p.branching) * m.value;
  if (!std::isfinite(total)) {
    return {0.0, true,
            std::log(std::abs(p.weight) * p.branching) + std::log(m.value)};
  }
  return {total, false, 0.0};
}

double dyadic_baseline(const ModelParams& p) {
  p.validate();
  return p.weight * p.branching;
}

double infinite_horizon_multiplier(double ratio, double tol) {
  require(std::isfinite(ratio) && ratio >= 0.0,
          "ratio must be finite and >= 0 (got " + num(ratio) + ")");
  if (ratio >= 1.0 - tol) {
    throw DivergentHorizon("infinite-horizon multiplier requires r < 1 (got r = " +
                           num(ratio) + ")");
  }
  return 1.0 / (1.0 - ratio);
}

HopBreakdown hop_breakdown(const ModelParams& p) {
  p.validate();
  HopBreakdown out;
  out.layers.reserve(static_cast<std::size_t>(p.depth));

  const double hop_discount = p.attenuation * p.compliance;
  const double layer_ratio = p.branching * hop_discount;   // same bits as r
  const double count_ratio = p.branching * p.compliance;

  double count = p.branching;                  // C_1 = b exactly
  double impact = p.weight;                    // w * alpha^0
  double layer = p.weight * p.branching;       // w * b
  KbnSum total;

  for (int k = 1; k <= p.depth; ++k) {
    if (!std::isfinite(count) || !std::isfinite(layer)) {
      out.overflow = true;
      out.log_magnitude = p.depth * std::log(layer_ratio);
      break;
    }
    out.layers.push_back({k, count, impact, layer});
    total.add(layer);
    count *= count_ratio;
    impact *= p.attenuation;
    layer *= layer_ratio;
  }
  out.total = total.value();
  return out;
}

namespace {

// ln of a finite multiplier, or its log-scale estimate when overflowed.
double log_multiplier(const SeriesValue& m, double ratio) {
  if (!m.overflow) return std::log(m.value);
  // M_d ~ r^d / (r - 1) once r^d dwarfs 1.
  return m.log_magnitude - std::log(ratio - 1.0);
}

}  // namespace

double capture_share_first_k(double ratio, int depth, int first_k) {
  require(depth >= 1, "d must be >= 1");
  require(first_k >= 1 && first_k <= depth,
          "K must satisfy 1 <= K <= d (got K = " + std::to_string(first_k) +
              ", d = " + std::to_string(depth) + ")");
  const SeriesValue mk = geometric_multiplier(ratio, first_k);
  const SeriesValue md = geometric_multiplier(ratio, depth);
  if (!md.overflow) return mk.value / md.value;
  return std::exp(log_multiplier(mk, ratio) - log_multiplier(md, ratio));
}

double capture_share_first_k_infinite(double ratio, int first_k, double tol) {
  require(first_k >= 1, "K must be >= 1");
  if (ratio >= 1.0 - tol) {
    throw DivergentHorizon(
        "infinite-horizon capture share requires r < 1 (got r = " + num(ratio) +
        ")");
  }
  return 1.0 - pow_int(ratio, first_k);
}

double tail_share_last_k(double ratio, int depth, int last_k) {
  require(std::isfinite(ratio) && ratio > 1.0,
          "tail share requires r > 1 (got r = " + num(ratio) + ")");
  require(depth >= 1, "d must be >= 1");
  require(last_k >= 1 && last_k <= depth, "K must satisfy 1 <= K <= d");
  if (last_k == depth) return 1.0;
  return 1.0 - capture_share_first_k(ratio, depth, depth - last_k);
}

double tail_share_last_k_limit(double ratio, int last_k) {
  require(std::isfinite(ratio) && ratio > 1.0,
          "tail share requires r > 1 (got r = " + num(ratio) + ")");
  require(last_k >= 1, "K must be >= 1");
  return 1.0 - 1.0 / pow_int(ratio, last_k);
}

PerturbationEstimate critical_perturbation_estimate(int depth, double eps) {
  require(depth >= 1, "d must be >= 1");
  require(std::isfinite(eps), "eps must be finite");
  const double d = static_cast<double>(depth);
  PerturbationEstimate out;
  out.exact = (eps == 0.0) ? d : std::expm1(d * std::log1p(eps)) / eps;
  out.approx = d + 0.5 * d * (d - 1.0) * eps;
  return out;
}

SeriesValue reach_count(double branching, double compliance, int depth) {
  require(std::isfinite(branching) && branching >= 1.0,
          "b must be >= 1 (got " + num(branching) + ")");
  require(std::isfinite(compliance) && compliance >= 0.0 && compliance <= 1.0,
          "q must be in [0, 1] (got " + num(compliance) + ")");
  const SeriesValue m = geometric_multiplier(branching * compliance, depth);
  if (m.overflow) return m;
  const double reached = branching * m.value;
  if (!std::isfinite(reached)) {
    return {0.0, true, std::log(branching) + std::log(m.value)};
  }
  return {reached, false, 0.0};
}

void DepthSchedule::validate(int depth) const {
  require(depth >= 1, "d must be >= 1");
  const std::size_t hops = static_cast<std::size_t>(depth - 1);
  if (response.empty()) {
    if (attenuation.size() < hops) {
      throw ScheduleLengthError("alpha_schedule needs at least " +
                                std::to_string(hops) + " entries, got " +
                                std::to_string(attenuation.size()));
    }
  }
  if (compliance.size() < hops) {
    throw ScheduleLengthError("q_schedule needs at least " +
                              std::to_string(hops) + " entries, got " +
                              std::to_string(compliance.size()));
  }
  for (std::size_t i = 0; i < hops && response.empty(); ++i) {
    require(std::isfinite(attenuation[i]) && attenuation[i] > 0.0 &&
                attenuation[i] <= 1.0,
            "alpha_schedule[" + std::to_string(i) + "] must be in (0, 1]");
  }
  for (std::size_t i = 0; i < hops; ++i) {
    require(std::isfinite(compliance[i]) && compliance[i] >= 0.0 &&
                compliance[i] <= 1.0,
            "q_schedule[" + std::to_string(i) + "] must be in [0, 1]");
  }
  if (!response.empty()) {
    if (response.size() < static_cast<std::size_t>(depth)) {
      throw ScheduleLengthError("response table needs at least " +
                                std::to_string(depth) + " entries, got " +
                                std::to_string(response.size()));
    }
    for (std::size_t i = 0; i < response.size(); ++i) {
      require(std::isfinite(response[i]) && response[i] > 0.0,
              "response[" + std::to_string(i) + "] must be positive");
      if (i > 0) {
        require(response[i] <= response[i - 1],
                "response table must be non-increasing (violated at index " +
                    std::to_string(i) + ")");
      }
    }
  }
}

SeriesValue total_with_schedules(double weight, double branching, int depth,
                                 const DepthSchedule& sched) {
  require(std::isfinite(weight), "w must be finite");
  require(std::isfinite(branching) && branching >= 1.0, "b must be >= 1");
  sched.validate(depth);

  KbnSum total;
  double att_prod = 1.0;
  double q_prod = 1.0;
  double b_pow = 1.0;
  for (int k = 1; k <= depth; ++k) {
    b_pow *= branching;
    const double response =
        sched.response.empty() ? att_prod : sched.response[k - 1];
    const double term = weight * response * b_pow * q_prod;
    if (!std::isfinite(term)) {
      const double log_mag = std::log(std::abs(weight)) + std::log(response) +
                             k * std::log(branching) + std::log(q_prod);
      return {0.0, true, log_mag};
    }
    total.add(term);
    if (k < depth) {
      if (sched.response.empty()) att_prod *= sched.attenuation[k - 1];
      q_prod *= sched.compliance[k - 1];
    }
  }
  return {total.value(), false, 0.0};
}

LeverSolution solve_critical_lever(Lever unknown, double known_a,
                                   double known_b) {
  require(std::isfinite(known_a) && known_a > 0.0 && std::isfinite(known_b) &&
              known_b > 0.0,
          "known lever factors must be positive");
  const double value = 1.0 / (known_a * known_b);
  bool feasible = false;
  switch (unknown) {
    case Lever::Branching: feasible = value >= 1.0; break;
    case Lever::Attenuation: feasible = value > 0.0 && value <= 1.0; break;
    case Lever::Compliance: feasible = value >= 0.0 && value <= 1.0; break;
  }
  return {value, feasible};
}

}  // namespace netresp
