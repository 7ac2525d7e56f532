#pragma once

#include <optional>
#include <span>

#include "revchar/distributions.hpp"
#include "revchar/quadrature.hpp"

namespace revchar {

// Reversed hazard rate, expected inactivity time and reversed aging intensity
// at one point.
struct FunctionalValue {
  double t;
  double phi;
  double m;
  std::optional<double> rai;
};

// phi(t) = f(t) / F(t) for a < t <= b, preferring the family's closed form.
// Throws SupportError outside (a, b] and ZeroMass when F(t) underflows.
double rhr(const DistributionModel& model, double t);

// m(t) = E[t - X | X <= t] = int_a^t F / F(t), closed form when attached.
double eit(const DistributionModel& model, double t, const quad::Tolerance& tol = {});

// Reversed aging intensity (t - b) f(t) / (F(t) ln F(t)).
//  - t <= a: SupportError; b = +inf: UnboundedSupport.
//  - t >= b: 0 by convention, although the limit from the left is 1 whenever
//    phi(b-) is finite and positive. Callers tabulating near b see the jump.
//  - |ln F(t)| < 1e-12 inside the support returns that limit value 1.
double rai(const DistributionModel& model, double t);

FunctionalValue evaluate(const DistributionModel& model, double t, const quad::Tolerance& tol = {});

// Routes that never consult the attached closed forms; they exist to check
// those forms and each other.
namespace numeric {

double rhr(const DistributionModel& model, double t);
double eit(const DistributionModel& model, double t, const quad::Tolerance& tol = {});
// (t - b) f(t) / (F(t) ln F(t)) with f, F and ln F from the cdf only.
double rai_log_form(const DistributionModel& model, double t);
// (b - t) phi(t) / int_t^b phi(u) du, phi = f / F.
double rai_integral_form(const DistributionModel& model, double t, const quad::Tolerance& tol = {});

}  // namespace numeric

// max over the grid of |phi m - (1 - m')|, with phi and m from the numeric
// routes and m' by central differences, h = max(1e-6, 1e-6 |t|).
double rhr_eit_identity_residual(const DistributionModel& model, std::span<const double> grid);

// exp(-int_t^b phi(u) du) with phi = f / F, for a < t; b may be +inf.
double cdf_from_rhr(const DistributionModel& model, double t, const quad::Tolerance& tol = {});

// Points quantile(i / (n + 1)), i = 1..n: interior and evenly spaced in
// probability, so unbounded supports are covered sensibly.
std::vector<double> probability_grid(const DistributionModel& model, int n);

}  // namespace revchar
