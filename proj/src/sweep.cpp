#include "netresp/sweep.hpp"

#include <cmath>
#include <sstream>

#include "netresp/report.hpp"

namespace netresp {

namespace {

bool known_param(const std::string& name) {
  return name == "w" || name == "b" || name == "alpha" || name == "q" ||
         name == "d";
}

void apply(ModelParams& p, const std::string& name, double value) {
  if (name == "w") {
    p.weight = value;
  } else if (name == "b") {
    p.branching = value;
  } else if (name == "alpha") {
    p.attenuation = value;
  } else if (name == "q") {
    p.compliance = value;
  } else {
    p.depth = static_cast<int>(std::llround(value));
  }
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw ValidationError("grid count must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ValidationError("grid endpoints must be finite");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    values.push_back(start);
    return values;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    values.push_back(start + static_cast<double>(i) * step);
  }
  return values;
}

void SweepSpec::validate() const {
  base.validate();
  if (axes.empty()) throw ValidationError("sweep needs at least one axis");

  long long rows = 1;
  for (const SweepAxis& axis : axes) {
    if (!known_param(axis.param)) {
      throw ValidationError("unknown sweep parameter '" + axis.param +
                            "' (expected one of w, b, alpha, q, d)");
    }
    if (axis.values.empty()) {
      throw ValidationError("axis '" + axis.param + "' has no values");
    }
    const long long count = static_cast<long long>(axis.values.size());
    if (rows > max_rows / count) {
      throw GridCapExceeded("sweep grid exceeds the row cap of " +
                            std::to_string(max_rows));
    }
    rows *= count;
  }

  // Every grid point must respect its parameter's domain; probe each axis
  // value against the base spec.
  for (const SweepAxis& axis : axes) {
    for (double v : axis.values) {
      if (axis.param == "d") {
        const double rounded = std::llround(v);
        if (!(std::abs(v - rounded) <= 1e-9) || rounded < 1) {
          throw ValidationError("axis 'd' values must be integers >= 1 (got " +
                                format_double(v) + ")");
        }
        continue;
      }
      ModelParams probe = base.params;
      apply(probe, axis.param, v);
      probe.validate();
    }
  }
}

void sweep_grid(const SweepSpec& spec, std::ostream& out, Exec exec) {
  spec.validate();

  long long rows = 1;
  for (const SweepAxis& axis : spec.axes) {
    rows *= static_cast<long long>(axis.values.size());
  }

  std::vector<std::string> lines(static_cast<std::size_t>(rows));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
  (void)exec;
#endif
  for (long long row = 0; row < rows; ++row) {
    // Row-major decode: the first axis varies slowest.
    ModelParams params = spec.base.params;
    long long rest = row;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const SweepAxis& axis = spec.axes[a];
      const long long count = static_cast<long long>(axis.values.size());
      const long long idx = rest % count;
      rest /= count;
      apply(params, axis.param, axis.values[static_cast<std::size_t>(idx)]);
    }
    std::ostringstream line;
    write_csv_row(line, spec.base.label, params, spec.regime_tol);
    lines[static_cast<std::size_t>(row)] = line.str();
  }

  write_csv_header(out);
  for (const std::string& line : lines) out << line;
}

}  // namespace netresp
