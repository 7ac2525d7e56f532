#pragma once

#include <map>
#include <optional>

#include "revchar/distributions.hpp"
#include "revchar/quadrature.hpp"

namespace revchar {

// mu_k = E[X^k]: the family's closed form when derived, else quadrature.
// Throws DivergentMoment when the integral does not converge.
double raw_moment(const DistributionModel& model, int k, const quad::Tolerance& tol = {});

struct MomentSet {
  double mu = 0.0;
  double sigma2 = 0.0;
  std::map<int, double> raw;      // k -> mu_k
  std::optional<double> eta;      // b / mu
  std::optional<double> c_ratio;  // sigma / mu

  double at(int k) const;
};

// Raw moments of orders 0..max(max_k, 2), plus mean, variance and, when the
// mean is non-zero, eta = b / mu and c = sigma / mu.
MomentSet moment_set(const DistributionModel& model, int max_k = 2,
                     const quad::Tolerance& tol = {});

}  // namespace revchar
