#include "netresp/mathutil.hpp"

#include <vector>

namespace netresp {

double block_sum(std::span<const double> values, Exec exec) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  const long long nblocks =
      static_cast<long long>((n + kSumBlock - 1) / kSumBlock);
  std::vector<double> partials(static_cast<std::size_t>(nblocks), 0.0);

  // Per-block partials may be filled concurrently; each block is summed
  // serially so the bits never depend on the thread count.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
  (void)exec;
#endif
  for (long long bi = 0; bi < nblocks; ++bi) {
    const std::size_t begin = static_cast<std::size_t>(bi) * kSumBlock;
    const std::size_t end = begin + kSumBlock < n ? begin + kSumBlock : n;
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += values[i];
    partials[static_cast<std::size_t>(bi)] = acc;
  }

  KbnSum total;
  for (double p : partials) total.add(p);
  return total.value();
}

}  // namespace netresp
