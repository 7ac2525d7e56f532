#include "revchar/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "format.hpp"
#include "revchar/errors.hpp"

namespace revchar {

quad::QuadResult expectation(const ExpectationSpec& spec, const quad::Tolerance& tol) {
  const auto& model = spec.model;
  const auto& g = spec.weight;
  const auto integrand = [&](double x) {
    const double f = model.density(x);
    if (f < std::numeric_limits<double>::min()) return 0.0;
    return g(x) * f;
  };
  const auto& s = model.support();
  std::vector<double> cuts{s.lower};
  for (double x : spec.breakpoints) {
    if (x > s.lower && x < s.upper) cuts.push_back(x);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(s.upper);
  if (cuts.size() == 2) return quad::integrate(integrand, s.lower, s.upper, tol);

  quad::QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto piece = quad::integrate(integrand, cuts[i], cuts[i + 1], tol);
    total.value += piece.value;
    total.err_estimate += piece.err_estimate;
    total.l1 += piece.l1;
    if (piece.status == quad::Status::Divergent) {
      total.status = quad::Status::Divergent;
      break;
    }
    if (piece.status == quad::Status::MaxDepth) total.status = quad::Status::MaxDepth;
  }
  return total;
}

quad::QuadResult cdf_cumulative_integral(const DistributionModel& model, double t,
                                         const quad::Tolerance& tol) {
  const auto& s = model.support();
  if (!(t > s.lower && t <= s.upper) || std::isinf(t)) {
    throw SupportError(model.spec().to_string() + ": cumulative cdf integral needs a < t <= b, got t=" +
                       detail::format_double(t));
  }
  quad::Tolerance scaled = tol;
  const double Ft = model.cdf(t);
  if (Ft > 0.0) scaled.abs = std::max(tol.abs * Ft, std::numeric_limits<double>::min());
  const auto F = [&](double x) { return model.cdf(x); };
  if (!s.lower_finite()) return quad::integrate_lower_unbounded(F, t, scaled);
  return quad::integrate_finite(F, s.lower, t, scaled);
}

SampleSet sample_inverse_cdf(const DistributionModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_inverse_cdf needs n >= 1");
  std::mt19937_64 engine(seed);
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // 53 random bits centred in their cell: never 0, never 1.
    const double u = (double(engine() >> 11) + 0.5) * 0x1.0p-53;
    draws.push_back(model.quantile(u));
  }
  return SampleSet(std::move(draws));
}

MonteCarloEstimate mc_expectation(const SampleSet& samples, const std::function<double(double)>& g) {
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (double x : samples.values()) {
    const double v = g(x);
    if (!std::isfinite(v)) {
      throw NonFiniteWeight("weight is not finite at sample point " + detail::format_double(x));
    }
    ++count;
    const double delta = v - mean;
    mean += delta / double(count);
    m2 += delta * (v - mean);
  }
  const double var = count > 1 ? m2 / double(count - 1) : 0.0;
  return {mean, std::sqrt(var / double(count))};
}

}  // namespace revchar
