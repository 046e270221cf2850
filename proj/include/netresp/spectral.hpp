#pragma once

#include <string>

#include "netresp/errors.hpp"
#include "netresp/graph.hpp"
#include "netresp/mathutil.hpp"

namespace netresp {

struct SpectralEstimate {
  double rho = 0.0;
  int iterations = 0;
  bool converged = false;
  double tolerance = 0.0;  // relative Rayleigh-quotient change at the end
};

class NotConverged : public Error {
 public:
  explicit NotConverged(const SpectralEstimate& best)
      : Error("power iteration did not converge after " +
              std::to_string(best.iterations) +
              " iterations (best estimate " + std::to_string(best.rho) + ")"),
        best_(best) {}

  const SpectralEstimate& best() const { return best_; }

 private:
  SpectralEstimate best_;
};

// Perron-root estimate by power iteration on the unit-shifted operator
// A + I, with the shift subtracted on return.  The shift keeps periodic
// (e.g. bipartite) nonnegative matrices from oscillating: rho(A + I) is
// exactly rho(A) + 1 for nonnegative A.  A short unshifted sweep first
// detects nilpotent structure (DAGs), where the iterate dies exactly and
// rho = 0 is returned without engaging the slow defective-eigenvalue path.
// max_iter exhaustion returns converged = false with the best estimate.
SpectralEstimate spectral_radius(const WeightedDigraph& g, double tol = 1e-10,
                                 int max_iter = 10000);

struct NeumannCheck {
  bool convergent;  // alpha*q*rho(A) < 1 - tol
  double margin;    // alpha*q*rho(A)
  SpectralEstimate spectral;
};

// Whether the infinite-horizon walk sum sum_j (alpha*q*A)^j converges.
// Throws NotConverged when the spectral estimate is not trustworthy.
NeumannCheck neumann_convergent(double attenuation, double compliance,
                                const WeightedDigraph& g, double tol);

}  // namespace netresp
