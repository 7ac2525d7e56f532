#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "revchar/distributions.hpp"
#include "revchar/quadrature.hpp"
#include "revchar/sample.hpp"

namespace revchar {

// E[g(X)] for X distributed as `model`.
struct ExpectationSpec {
  const DistributionModel& model;
  std::function<double(double)> weight;
  // Interior points where the weight may be singular; the integral is split
  // there so each singularity sits on a panel end.
  std::vector<double> breakpoints = {};
};

// Signed integral of g(x) f(x) over the support. Points where the density is
// zero or subnormal contribute nothing, so g is not evaluated where F has
// underflowed.
quad::QuadResult expectation(const ExpectationSpec& spec, const quad::Tolerance& tol = {});

// int_a^t F(x) dx. Throws SupportError unless a < t <= b. The absolute
// tolerance is scaled by F(t) so the ratio with F(t) keeps its precision deep
// in a tail.
quad::QuadResult cdf_cumulative_integral(const DistributionModel& model, double t,
                                         const quad::Tolerance& tol = {});

// n inverse-CDF draws from a seeded 64-bit Mersenne Twister stream; the
// uniforms are strictly inside (0, 1). Throws std::invalid_argument for n = 0.
SampleSet sample_inverse_cdf(const DistributionModel& model, std::size_t n, std::uint64_t seed);

struct MonteCarloEstimate {
  double mean;
  double std_error;
};

// Sample mean of g and its standard error (n - 1 denominator). Throws
// NonFiniteWeight when g is not finite at a sample point.
MonteCarloEstimate mc_expectation(const SampleSet& samples, const std::function<double(double)>& g);

}  // namespace revchar
