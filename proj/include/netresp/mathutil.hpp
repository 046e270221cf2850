#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace netresp {

// Kahan-Babuska-Neumaier compensated accumulator.
struct KbnSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Integer power by binary exponentiation.  Deterministic across libm
// implementations, and exact whenever every intermediate product is
// representable (e.g. pow_int(2.5, 7) == 610.3515625 bit for bit).
inline double pow_int(double base, long long exponent) {
  if (exponent < 0) return 1.0 / pow_int(base, -exponent);
  double result = 1.0;
  double factor = base;
  while (exponent > 0) {
    if (exponent & 1) result *= factor;
    exponent >>= 1;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

// Execution policy for the data-parallel kernels.  Serial is the reference
// path kept for testing; Parallel uses OpenMP when compiled in.  Both must
// produce bit-identical results.
enum class Exec { Serial, Parallel };

inline constexpr std::size_t kSumBlock = 4096;

// Sum with a fixed block structure: per-block serial partials combined in
// index order.  The result does not depend on the thread count.
double block_sum(std::span<const double> values, Exec exec = Exec::Serial);

}  // namespace netresp
