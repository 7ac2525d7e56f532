#include "revchar/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"
#include "revchar/errors.hpp"
#include "revchar/expectation.hpp"

namespace revchar {

namespace {

void require_left_open(const DistributionModel& model, double t, const char* what) {
  const auto& s = model.support();
  if (!(t > s.lower && t <= s.upper) || std::isinf(t)) {
    throw SupportError(model.spec().to_string() + ": " + what + " needs a < t <= b, got t=" +
                       detail::format_double(t));
  }
}

double checked_cdf(const DistributionModel& model, double t, const char* what) {
  const double F = model.cdf(t);
  if (!(F > std::numeric_limits<double>::min())) {
    throw ZeroMass(model.spec().to_string() + ": " + what + " undefined, F(t) is zero at t=" +
                   detail::format_double(t));
  }
  return F;
}

double require_converged(const quad::QuadResult& r, const DistributionModel& model, const char* what) {
  if (!r.converged()) {
    throw Error(model.spec().to_string() + ": " + what + " quadrature " +
                std::string(quad::to_string(r.status)));
  }
  return r.value;
}

}  // namespace

namespace numeric {

double rhr(const DistributionModel& model, double t) {
  require_left_open(model, t, "rhr");
  const double F = checked_cdf(model, t, "rhr");
  return model.density(t) / F;
}

double eit(const DistributionModel& model, double t, const quad::Tolerance& tol) {
  require_left_open(model, t, "eit");
  const double F = checked_cdf(model, t, "eit");
  const auto r = cdf_cumulative_integral(model, t, tol);
  return require_converged(r, model, "eit") / F;
}

double rai_log_form(const DistributionModel& model, double t) {
  const auto& s = model.support();
  if (!s.upper_finite()) {
    throw UnboundedSupport(model.spec().to_string() + ": reversed aging intensity needs finite b");
  }
  if (t >= s.upper) return 0.0;
  if (!(t > s.lower)) {
    throw SupportError(model.spec().to_string() + ": rai undefined for t <= a");
  }
  const double F = checked_cdf(model, t, "rai");
  const double lnF = std::log(F);
  const double f = model.density(t);
  if (std::abs(lnF) < 1e-12) return 1.0;
  return (t - s.upper) * f / (F * lnF);
}

double rai_integral_form(const DistributionModel& model, double t, const quad::Tolerance& tol) {
  const auto& s = model.support();
  if (!s.upper_finite()) {
    throw UnboundedSupport(model.spec().to_string() + ": reversed aging intensity needs finite b");
  }
  if (t >= s.upper) return 0.0;
  if (!(t > s.lower)) {
    throw SupportError(model.spec().to_string() + ": rai undefined for t <= a");
  }
  const double phi_t = numeric::rhr(model, t);
  const auto r = quad::integrate_finite(
      [&](double u) { return model.density(u) / model.cdf(u); }, t, s.upper, tol);
  return (s.upper - t) * phi_t / require_converged(r, model, "rai");
}

}  // namespace numeric

double rhr(const DistributionModel& model, double t) {
  require_left_open(model, t, "rhr");
  checked_cdf(model, t, "rhr");
  if (auto closed = model.closed_rhr(t)) return *closed;
  return numeric::rhr(model, t);
}

double eit(const DistributionModel& model, double t, const quad::Tolerance& tol) {
  require_left_open(model, t, "eit");
  checked_cdf(model, t, "eit");
  if (auto closed = model.closed_eit(t)) return *closed;
  return numeric::eit(model, t, tol);
}

double rai(const DistributionModel& model, double t) {
  const auto& s = model.support();
  if (!s.upper_finite()) {
    throw UnboundedSupport(model.spec().to_string() + ": reversed aging intensity needs finite b");
  }
  if (t >= s.upper) return 0.0;
  if (!(t > s.lower)) {
    throw SupportError(model.spec().to_string() + ": rai undefined for t <= a");
  }
  if (auto closed = model.closed_rai(t)) return *closed;
  // ln F from the family's log-cdf keeps precision as F -> 1.
  const double lnF = model.log_cdf(t);
  if (std::abs(lnF) < 1e-12) return 1.0;
  return (t - s.upper) * rhr(model, t) / lnF;
}

FunctionalValue evaluate(const DistributionModel& model, double t, const quad::Tolerance& tol) {
  FunctionalValue v{t, rhr(model, t), eit(model, t, tol), std::nullopt};
  if (model.support().upper_finite()) v.rai = rai(model, t);
  return v;
}

double rhr_eit_identity_residual(const DistributionModel& model, std::span<const double> grid) {
  // m' is a difference quotient, so m itself has to be resolved far below h.
  quad::Tolerance tight;
  tight.rel = 1e-14;
  tight.abs = 1e-300;
  double worst = 0.0;
  for (double t : grid) {
    const double h = std::max(1e-6, 1e-6 * std::abs(t));
    const double m = numeric::eit(model, t, tight);
    const double dm = (numeric::eit(model, t + h, tight) - numeric::eit(model, t - h, tight)) / (2 * h);
    const double phi = numeric::rhr(model, t);
    worst = std::max(worst, std::abs(phi * m - (1.0 - dm)));
  }
  return worst;
}

double cdf_from_rhr(const DistributionModel& model, double t, const quad::Tolerance& tol) {
  const auto& s = model.support();
  require_left_open(model, t, "cdf_from_rhr");
  if (t >= s.upper) return 1.0;
  const quad::ScalarFn phi = [&](double u) {
    const double F = model.cdf(u);
    return F > 0.0 ? model.density(u) / F : 0.0;
  };
  const auto r = s.upper_finite() ? quad::integrate_finite(phi, t, s.upper, tol)
                                  : quad::integrate_upper_unbounded(phi, t, tol);
  return std::exp(-require_converged(r, model, "cdf_from_rhr"));
}

std::vector<double> probability_grid(const DistributionModel& model, int n) {
  std::vector<double> grid;
  grid.reserve(std::max(n, 0));
  for (int i = 1; i <= n; ++i) grid.push_back(model.quantile(double(i) / double(n + 1)));
  return grid;
}

}  // namespace revchar
