#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "revchar/distributions.hpp"
#include "revchar/errors.hpp"
#include "revchar/functionals.hpp"
#include "test_support.hpp"

namespace {

using namespace revchar;
using revchar::testing::gk_integral;
using revchar::testing::interior_grid;
using revchar::testing::rel_err;
using revchar::testing::two_settings_per_family;

DistributionModel model(const FamilySpec& s) { return make_distribution(s); }

TEST(RhrTest, WorkedExamples) {
  const auto t3 = model(FamilySpec::type3ev(2, 0));
  for (double t : {-5.0, -1.0, -0.1}) EXPECT_DOUBLE_EQ(rhr(t3, t), 2.0);
  EXPECT_DOUBLE_EQ(rhr(model(FamilySpec::power(1, 2)), 0.5), 4.0);
  EXPECT_NEAR(rhr(model(FamilySpec::inverse_weibull(1, 1)), 2.0), 0.25, 1e-15);
}

TEST(RhrTest, NumericOracleIsDensityOverCdf) {
  const auto iw = model(FamilySpec::inverse_weibull(1, 1));
  const double t = 2.0;
  const double F = std::exp(-1.0 / t);
  const double f = F / (t * t);
  EXPECT_NEAR(numeric::rhr(iw, t), f / F, 1e-15);
}

TEST(RhrTest, Errors) {
  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_THROW(rhr(p, 0.0), SupportError);
  EXPECT_THROW(rhr(p, 1.5), SupportError);
  EXPECT_THROW(rhr(model(FamilySpec::type3ev(1, 0)), -800.0), ZeroMass);
  EXPECT_NO_THROW(rhr(p, 1.0));
}

TEST(EitTest, WorkedExamples) {
  EXPECT_NEAR(eit(model(FamilySpec::type3ev(2, 0)), -0.3), 0.5, 1e-14);
  EXPECT_NEAR(eit(model(FamilySpec::power(1, 2)), 0.6), 0.2, 1e-14);
  EXPECT_NEAR(eit(model(FamilySpec::uniform(1)), 0.5), 0.25, 1e-14);

  EXPECT_NEAR(numeric::eit(model(FamilySpec::type3ev(2, 0)), -0.3), 0.5, 1e-10);
  EXPECT_NEAR(numeric::eit(model(FamilySpec::power(1, 2)), 0.6), 0.2, 1e-10);
  EXPECT_NEAR(numeric::eit(model(FamilySpec::uniform(1)), 0.5), 0.25, 1e-10);
}

TEST(EitTest, Errors) {
  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_THROW(eit(p, 0.0), SupportError);
  EXPECT_THROW(eit(p, 2.0), SupportError);
  EXPECT_THROW(eit(model(FamilySpec::type3ev(1, 0)), -800.0), ZeroMass);
}

TEST(EitTest, BoundedByDistanceToLowerEnd) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    if (!m.support().lower_finite()) continue;
    for (double t : interior_grid(m, 32)) {
      const double v = eit(m, t);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, t - m.support().lower) << s.to_string();
    }
  }
}

TEST(RaiTest, WorkedExamples) {
  const auto t3 = model(FamilySpec::type3ev(1.5, 2));
  for (double t : {-3.0, 0.0, 1.9}) EXPECT_NEAR(rai(t3, t), 1.0, 1e-12);

  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_NEAR(rai(p, 0.5), 1.0 / std::numbers::ln2, 1e-14);
  EXPECT_NEAR((0.5 - 1.0) * 4.0 / std::log(0.25), 1.442695, 1e-6);
  EXPECT_NEAR(numeric::rai_log_form(p, 0.5), 1.0 / std::numbers::ln2, 1e-14);
  EXPECT_NEAR(numeric::rai_integral_form(p, 0.5), 1.0 / std::numbers::ln2, 1e-10);

  EXPECT_THROW(rai(model(FamilySpec::inverse_weibull(1, 1)), 2.0), UnboundedSupport);
  EXPECT_THROW(numeric::rai_integral_form(model(FamilySpec::inverse_weibull(1, 1)), 2.0), UnboundedSupport);
}

TEST(RaiTest, EndpointConventions) {
  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_EQ(rai(p, 1.0), 0.0);
  EXPECT_EQ(rai(p, 3.0), 0.0);
  EXPECT_THROW(rai(p, 0.0), SupportError);
  EXPECT_THROW(rai(p, -1.0), SupportError);
  // Left limit at b: ln F underflows the 1e-12 threshold.
  EXPECT_NEAR(numeric::rai_log_form(p, 1.0 - 1e-14), 1.0, 1e-9);
}

TEST(RaiTest, BothFormsAgree) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    if (!m.support().upper_finite()) continue;
    for (double t : interior_grid(m, 32)) {
      EXPECT_LE(rel_err(numeric::rai_integral_form(m, t), numeric::rai_log_form(m, t)), 1e-6)
          << s.to_string() << " t=" << t;
    }
  }
}

TEST(RaiTest, OrderingFollowsRhrMonotonicity) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    if (!m.support().upper_finite()) continue;
    const auto grid = interior_grid(m, 32);
    // Monotone direction of phi from its tabulated values between the grid and b.
    std::vector<double> pts = grid;
    const double b = m.support().upper;
    for (int i = 1; i <= 16; ++i) pts.push_back(grid.back() + (b - grid.back()) * i / 17.0);
    int sign = 0;
    bool monotone = true;
    for (std::size_t i = 1; i < pts.size() && monotone; ++i) {
      const double d = numeric::rhr(m, pts[i]) - numeric::rhr(m, pts[i - 1]);
      const int si = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
      if (si == 0 || (sign != 0 && si != sign)) monotone = false;
      sign = si;
    }
    if (!monotone) continue;
    for (double t : grid) {
      const double L = rai(m, t);
      if (sign < 0) {
        EXPECT_GT(L, 1.0) << s.to_string() << " t=" << t;
      } else {
        EXPECT_LT(L, 1.0) << s.to_string() << " t=" << t;
      }
    }
  }
}

TEST(RaiTest, OrderingOnNamedFamilies) {
  const auto p = model(FamilySpec::power(1, 2));
  for (double t : interior_grid(p, 32)) EXPECT_GT(rai(p, t), 1.0);
  const auto e = model(FamilySpec::exp_linked_eit(1, 0));
  for (double t : interior_grid(e, 32)) EXPECT_LT(rai(e, t), 1.0);
}

TEST(ClosedFormsTest, MatchNumericPaths) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    for (double t : interior_grid(m, 32)) {
      if (auto c = m.closed_rhr(t)) EXPECT_LE(rel_err(*c, numeric::rhr(m, t)), 1e-6) << s.to_string();
      if (auto c = m.closed_eit(t)) EXPECT_LE(rel_err(*c, numeric::eit(m, t)), 1e-6) << s.to_string();
      if (auto c = m.closed_rai(t)) EXPECT_LE(rel_err(*c, numeric::rai_log_form(m, t)), 1e-6) << s.to_string();
    }
  }
}

TEST(ClosedFormsTest, EitMatchesIndependentQuadrature) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    for (double t : interior_grid(m, 8)) {
      const double lo = m.support().lower_finite() ? m.support().lower : -INFINITY;
      const double oracle = gk_integral([&](double x) { return m.cdf(x); }, lo, t) / m.cdf(t);
      EXPECT_LE(rel_err(eit(m, t), oracle), 1e-8) << s.to_string() << " t=" << t;
    }
  }
}

TEST(IdentityTest, WorkedExamples) {
  auto grid_of = [](const DistributionModel& m) { return interior_grid(m, 32); };
  const auto t3 = model(FamilySpec::type3ev(1, 0));
  EXPECT_LE(rhr_eit_identity_residual(t3, grid_of(t3)), 1e-4);
  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_LE(rhr_eit_identity_residual(p, grid_of(p)), 1e-4);
  const auto l = model(FamilySpec::linear_mit(0.5, 1, 1, 2));
  EXPECT_LE(rhr_eit_identity_residual(l, grid_of(l)), 1e-4);
}

TEST(IdentityTest, HoldsForEveryFamily) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    const auto grid = probability_grid(m, 32);
    EXPECT_LE(rhr_eit_identity_residual(m, grid), 1e-4) << s.to_string();
  }
}

TEST(CdfFromRhrTest, WorkedExamples) {
  EXPECT_NEAR(cdf_from_rhr(model(FamilySpec::type3ev(2, 0)), -1.0), std::exp(-2.0), 1e-12);
  EXPECT_NEAR(cdf_from_rhr(model(FamilySpec::power(1, 2)), 0.5), 0.25, 1e-6);
  const auto fr = model(FamilySpec::finite_range(0.5, 1, 1));
  EXPECT_NEAR(cdf_from_rhr(fr, 0.5), cdf_at(fr, 0.5), 1e-6);
}

TEST(CdfFromRhrTest, ReconstructsEveryFamily) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = model(s);
    for (double t : probability_grid(m, 32)) {
      EXPECT_NEAR(cdf_from_rhr(m, t), m.cdf(t), 1e-6) << s.to_string() << " t=" << t;
    }
  }
}

TEST(CdfFromRhrTest, Errors) {
  const auto p = model(FamilySpec::power(1, 2));
  EXPECT_THROW(cdf_from_rhr(p, 0.0), SupportError);
  EXPECT_THROW(cdf_from_rhr(p, 2.0), SupportError);
  EXPECT_DOUBLE_EQ(cdf_from_rhr(p, 1.0), 1.0);
}

TEST(EvaluateTest, OmitsRaiForUnboundedSupport) {
  const auto v = evaluate(model(FamilySpec::inverse_weibull(1, 1)), 2.0);
  EXPECT_FALSE(v.rai.has_value());
  const auto w = evaluate(model(FamilySpec::power(1, 2)), 0.5);
  ASSERT_TRUE(w.rai.has_value());
  EXPECT_DOUBLE_EQ(w.phi, 4.0);
  EXPECT_NEAR(w.m, 0.5 / 3.0, 1e-15);
}

TEST(ProbabilityGridTest, EvenlySpacedInProbability) {
  const auto m = model(FamilySpec::type3ev(1, 0));
  const auto g = probability_grid(m, 9);
  ASSERT_EQ(g.size(), 9u);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(m.cdf(g[i]), (i + 1) / 10.0, 1e-14);
}

}  // namespace
