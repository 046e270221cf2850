#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "netresp/mathutil.hpp"
#include "netresp/scenario.hpp"

namespace netresp {

struct SweepAxis {
  std::string param;           // one of w, b, alpha, q, d
  std::vector<double> values;  // d values must be integral
};

struct SweepSpec {
  ScenarioSpec base;
  std::vector<SweepAxis> axes;
  long long max_rows = 1'000'000;
  double regime_tol = kDefaultRegimeTol;

  void validate() const;  // axis names, domains, and the row cap
};

// Inclusive linear grid: start, start+h, ..., stop with h = (stop-start)/(count-1).
std::vector<double> linear_grid(double start, double stop, int count);

// Emits one CSV row per grid point in row-major axis order (first axis
// outermost).  Rows may be computed concurrently but the output order and
// bytes are deterministic.
void sweep_grid(const SweepSpec& spec, std::ostream& out,
                Exec exec = Exec::Parallel);

}  // namespace netresp
