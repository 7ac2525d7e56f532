#pragma once

#include <functional>
#include <string_view>

namespace revchar::quad {

enum class Status { Converged, Divergent, MaxDepth };

std::string_view to_string(Status s);

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  // Bisection depth budget for panels whose level refinement stalls.
  int max_depth = 50;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;  // absolute
  Status status = Status::Converged;
  double l1 = 0.0;  // integral of |f|, used for relative checks

  bool converged() const { return status == Status::Converged; }
};

using ScalarFn = std::function<double(double)>;

// Adaptive double-exponential (tanh-sinh) quadrature over (lo, hi). The
// rule is open: f is never evaluated at lo or hi, so integrable endpoint
// singularities are fine. A panel is refined by halving the step until two
// successive levels agree; panels that stall are bisected.
//
// Divergent is reported when the outermost non-zero terms of the transformed
// sum fail to decay, when a term is non-finite, or when the estimate grows by
// more than 1.5x for 5 consecutive levels.
QuadResult integrate_finite(const ScalarFn& f, double lo, double hi,
                            const Tolerance& tol = {});

// Integral over (-inf, hi] through x = hi - u / (1 - u), u in (0, 1).
QuadResult integrate_lower_unbounded(const ScalarFn& f, double hi,
                                     const Tolerance& tol = {});

// Integral over [lo, +inf) through x = lo + u / (1 - u).
QuadResult integrate_upper_unbounded(const ScalarFn& f, double lo,
                                     const Tolerance& tol = {});

// Dispatches on which endpoints are infinite. Both infinite is rejected.
QuadResult integrate(const ScalarFn& f, double lo, double hi,
                     const Tolerance& tol = {});

}  // namespace revchar::quad
