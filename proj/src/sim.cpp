#include "netresp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "netresp/rng.hpp"

namespace netresp {

void SimConfig::validate() const {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (max_nodes_per_trial < 1) throw ValidationError("node cap must be >= 1");
  if (!(confidence_z > 0.0) || !std::isfinite(confidence_z)) {
    throw ValidationError("confidence z must be positive");
  }
}

namespace {

constexpr long long kTrialBlock = 1024;

struct BlockAcc {
  double sum = 0.0;
  double sum_sq = 0.0;
  long long truncated = 0;
  std::vector<double> count_sum;
  std::vector<double> count_sum_sq;
};

// Runs trials in fixed blocks: trials within a block are processed serially
// in index order, blocks may run concurrently, and block partials are
// combined in block order.  Results are bit-identical for any thread count
// because every random draw depends only on (master_seed, trial_index).
//
// run_trial(scratch, trial_index, counts, truncated) -> trial total; counts
// holds the number of agents affected per depth.
template <typename ScratchFactory, typename TrialRunner>
SimResult run_blocks(int depth, const SimConfig& cfg,
                     ScratchFactory make_scratch, TrialRunner run_trial) {
  cfg.validate();
  const long long trials = cfg.trials;
  const long long nblocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockAcc> blocks(static_cast<std::size_t>(nblocks));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.exec == Exec::Parallel)
#endif
  for (long long bi = 0; bi < nblocks; ++bi) {
    BlockAcc& acc = blocks[static_cast<std::size_t>(bi)];
    acc.count_sum.assign(static_cast<std::size_t>(depth), 0.0);
    acc.count_sum_sq.assign(static_cast<std::size_t>(depth), 0.0);
    auto scratch = make_scratch();
    std::vector<long long> counts(static_cast<std::size_t>(depth), 0);

    const long long begin = bi * kTrialBlock;
    const long long end = std::min(trials, begin + kTrialBlock);
    for (long long t = begin; t < end; ++t) {
      std::fill(counts.begin(), counts.end(), 0);
      bool truncated = false;
      const double total = run_trial(scratch, t, counts, truncated);
      acc.sum += total;
      acc.sum_sq += total * total;
      if (truncated) ++acc.truncated;
      for (int k = 0; k < depth; ++k) {
        const double c = static_cast<double>(counts[static_cast<std::size_t>(k)]);
        acc.count_sum[static_cast<std::size_t>(k)] += c;
        acc.count_sum_sq[static_cast<std::size_t>(k)] += c * c;
      }
    }
  }

  KbnSum sum, sum_sq;
  std::vector<KbnSum> csum(static_cast<std::size_t>(depth));
  std::vector<KbnSum> csum_sq(static_cast<std::size_t>(depth));
  long long truncated = 0;
  for (const BlockAcc& acc : blocks) {
    sum.add(acc.sum);
    sum_sq.add(acc.sum_sq);
    truncated += acc.truncated;
    for (int k = 0; k < depth; ++k) {
      csum[static_cast<std::size_t>(k)].add(acc.count_sum[static_cast<std::size_t>(k)]);
      csum_sq[static_cast<std::size_t>(k)].add(acc.count_sum_sq[static_cast<std::size_t>(k)]);
    }
  }

  const double n = static_cast<double>(trials);
  const auto stderr_of = [&](double s, double sq) {
    if (trials < 2) return 0.0;
    const double mean = s / n;
    const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
  };

  SimResult out;
  out.trials = trials;
  out.trials_truncated = truncated;
  out.mean = sum.value() / n;
  out.std_error = stderr_of(sum.value(), sum_sq.value());
  out.ci_low = out.mean - cfg.confidence_z * out.std_error;
  out.ci_high = out.mean + cfg.confidence_z * out.std_error;
  out.per_depth_mean_counts.resize(static_cast<std::size_t>(depth));
  out.per_depth_std_error.resize(static_cast<std::size_t>(depth));
  for (int k = 0; k < depth; ++k) {
    const double s = csum[static_cast<std::size_t>(k)].value();
    out.per_depth_mean_counts[static_cast<std::size_t>(k)] = s / n;
    out.per_depth_std_error[static_cast<std::size_t>(k)] =
        stderr_of(s, csum_sq[static_cast<std::size_t>(k)].value());
  }
  return out;
}

}  // namespace

SimResult simulate_branching(const ModelParams& p, const SimConfig& cfg) {
  p.validate();
  if (p.branching > 1e15) {
    throw ValidationError("b too large for agent-level simulation");
  }
  const long long whole = static_cast<long long>(std::floor(p.branching));
  const double frac = p.branching - static_cast<double>(whole);
  const long long cap = cfg.max_nodes_per_trial;

  struct NoScratch {};
  return run_blocks(
      p.depth, cfg, [] { return NoScratch{}; },
      [&](NoScratch&, long long trial, std::span<long long> counts,
          bool& truncated) -> double {
        Xoshiro256 rng = trial_rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
        double total = 0.0;
        double hop_factor = 1.0;  // alpha^(k-1)
        long long counted = 0;
        long long propagators = 1;  // the initiator spreads at hop 0
        for (int k = 1; k <= p.depth && propagators > 0; ++k) {
          long long affected = 0;
          for (long long i = 0; i < propagators; ++i) {
            affected += whole;
            if (frac > 0.0 && rng.bernoulli(frac)) ++affected;
            if (affected > cap) break;  // beyond the cap; rest is discarded
          }
          long long effective = affected;
          if (counted + affected > cap) {
            effective = cap - counted;
            truncated = true;
          }
          counts[static_cast<std::size_t>(k - 1)] = effective;
          counted += effective;
          total += (p.weight * hop_factor) * static_cast<double>(effective);
          if (truncated) break;
          hop_factor *= p.attenuation;
          if (k == p.depth) break;
          long long next = 0;
          for (long long i = 0; i < affected; ++i) {
            if (rng.bernoulli(p.compliance)) ++next;
          }
          propagators = next;
        }
        return total;
      });
}

SimResult simulate_graph_cascade(const WeightedDigraph& g, double weight,
                                 double attenuation, double compliance,
                                 SeedSpec seed, int depth,
                                 const SimConfig& cfg) {
  if (!std::isfinite(weight)) throw ValidationError("w must be finite");
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw ValidationError("alpha must be in (0, 1]");
  }
  if (!(compliance >= 0.0 && compliance <= 1.0)) {
    throw ValidationError("q must be in [0, 1]");
  }
  if (depth < 1) throw ValidationError("d must be >= 1");
  if (seed.node < 0 || seed.node >= g.node_count()) {
    throw ValidationError("seed node outside node range");
  }
  if (!g.unit_weights()) {
    throw ValidationError(
        "cascade simulation requires a unit-weight graph (weighted "
        "activation probabilities are not modeled)");
  }

  const long long cap = cfg.max_nodes_per_trial;
  const std::size_t n = static_cast<std::size_t>(g.node_count());

  struct Scratch {
    std::vector<int> activated;  // stamp = trial+1 when activated this trial
    std::vector<int> spread;     // stamp when the node's arcs were attempted
    std::vector<int> frontier;
    std::vector<int> next;
  };

  return run_blocks(
      depth, cfg,
      [&] {
        Scratch s;
        s.activated.assign(n, 0);
        s.spread.assign(n, 0);
        return s;
      },
      [&](Scratch& s, long long trial, std::span<long long> counts,
          bool& truncated) -> double {
        Xoshiro256 rng = trial_rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
        const int stamp = static_cast<int>(trial % 2000000000LL) + 1;
        if (stamp == 1) {
          std::fill(s.activated.begin(), s.activated.end(), 0);
          std::fill(s.spread.begin(), s.spread.end(), 0);
        }

        double total = 0.0;
        double hop_factor = 1.0;  // alpha^(k-1)
        long long counted = 0;

        // Hop 1: the seed's arcs fire unconditionally and are spent.
        s.spread[static_cast<std::size_t>(seed.node)] = stamp;
        s.frontier.clear();
        for (int v : g.out_neighbors(seed.node)) {
          if (s.activated[static_cast<std::size_t>(v)] != stamp) {
            s.activated[static_cast<std::size_t>(v)] = stamp;
            s.frontier.push_back(v);
          }
        }

        for (int k = 1; k <= depth && !s.frontier.empty(); ++k) {
          long long effective = static_cast<long long>(s.frontier.size());
          if (counted + effective > cap) {
            effective = cap - counted;
            truncated = true;
          }
          counts[static_cast<std::size_t>(k - 1)] = effective;
          counted += effective;
          total += (weight * hop_factor) * static_cast<double>(effective);
          if (truncated || k == depth) break;
          hop_factor *= attenuation;

          s.next.clear();
          for (int v : s.frontier) {
            if (s.spread[static_cast<std::size_t>(v)] == stamp) continue;
            s.spread[static_cast<std::size_t>(v)] = stamp;
            for (int u : g.out_neighbors(v)) {
              if (rng.bernoulli(compliance) &&
                  s.activated[static_cast<std::size_t>(u)] != stamp) {
                s.activated[static_cast<std::size_t>(u)] = stamp;
                s.next.push_back(u);
              }
            }
          }
          std::swap(s.frontier, s.next);
        }
        return total;
      });
}

AnalyticComparison compare_to_analytic(const SimResult& sim, double analytic) {
  if (sim.std_error > 0.0) {
    const double z = (sim.mean - analytic) / sim.std_error;
    return {z, std::abs(z) <= 4.0};
  }
  // Deterministic run: exact equality required.
  if (sim.mean == analytic) return {0.0, true};
  return {std::copysign(std::numeric_limits<double>::infinity(),
                        sim.mean - analytic),
          false};
}

}  // namespace netresp
