// Compares the serial reference kernels with the OpenMP paths and checks
// that both produce identical bits while at it.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netresp/graph.hpp"
#include "netresp/sim.hpp"
#include "netresp/sweep.hpp"
#include "netresp/walk.hpp"

using namespace netresp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %10.4fs %12.4fs %8.2fx   %s\n", name, serial, parallel,
              serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n\n");
#endif
  std::printf("%-28s %11s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  // Walk sums on a mid-sized random graph.
  {
    const WeightedDigraph g = make_erdos_renyi(20000, 0.002, 7);
    WalkTotal a, b;
    auto t0 = Clock::now();
    for (int rep = 0; rep < 20; ++rep) {
      a = graph_total(1.0, 0.9, 0.4, g, SeedSpec{0}, 12, Exec::Serial);
    }
    const double serial = seconds_since(t0);
    t0 = Clock::now();
    for (int rep = 0; rep < 20; ++rep) {
      b = graph_total(1.0, 0.9, 0.4, g, SeedSpec{0}, 12, Exec::Parallel);
    }
    const double parallel = seconds_since(t0);
    row("walk sum, ER(20000, 0.002)", serial, parallel, a.value == b.value);
  }

  // Branching Monte Carlo.
  {
    ModelParams p{1.0, 2.0, 0.8, 0.5, 10};
    SimConfig cfg;
    cfg.trials = 300000;
    cfg.master_seed = 11;
    cfg.exec = Exec::Serial;
    auto t0 = Clock::now();
    const SimResult a = simulate_branching(p, cfg);
    const double serial = seconds_since(t0);
    cfg.exec = Exec::Parallel;
    t0 = Clock::now();
    const SimResult b = simulate_branching(p, cfg);
    const double parallel = seconds_since(t0);
    row("branching sim, 300k trials", serial, parallel,
        a.mean == b.mean && a.std_error == b.std_error);
  }

  // Graph cascade Monte Carlo.
  {
    const WeightedDigraph g = make_barabasi_albert(2000, 3, 5);
    SimConfig cfg;
    cfg.trials = 50000;
    cfg.master_seed = 13;
    cfg.exec = Exec::Serial;
    auto t0 = Clock::now();
    const SimResult a =
        simulate_graph_cascade(g, 1.0, 0.7, 0.05, SeedSpec{0}, 6, cfg);
    const double serial = seconds_since(t0);
    cfg.exec = Exec::Parallel;
    t0 = Clock::now();
    const SimResult b =
        simulate_graph_cascade(g, 1.0, 0.7, 0.05, SeedSpec{0}, 6, cfg);
    const double parallel = seconds_since(t0);
    row("cascade sim, BA(2000, 3)", serial, parallel,
        a.mean == b.mean && a.std_error == b.std_error);
  }

  // Sweep grid evaluation.
  {
    SweepSpec spec;
    spec.base = load_preset("pandemic");
    spec.axes.push_back({"b", linear_grid(1.0, 20.0, 300)});
    spec.axes.push_back({"q", linear_grid(0.0, 1.0, 300)});
    std::ostringstream sa, sb;
    auto t0 = Clock::now();
    sweep_grid(spec, sa, Exec::Serial);
    const double serial = seconds_since(t0);
    t0 = Clock::now();
    sweep_grid(spec, sb, Exec::Parallel);
    const double parallel = seconds_since(t0);
    row("sweep, 90k rows", serial, parallel, sa.str() == sb.str());
  }

  return 0;
}
