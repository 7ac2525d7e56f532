#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "revchar/quadrature.hpp"

namespace {

using namespace revchar::quad;

void expect_converged_within_tol(const QuadResult& r, const Tolerance& tol = {}) {
  ASSERT_EQ(r.status, Status::Converged);
  EXPECT_LE(r.err_estimate, std::max(tol.abs, tol.rel * std::abs(r.value)));
}

TEST(IntegrateFiniteTest, Polynomial) {
  const auto r = integrate_finite([](double x) { return x; }, 0.0, 1.0);
  expect_converged_within_tol(r);
  EXPECT_NEAR(r.value, 0.5, 1e-10);
}

TEST(IntegrateFiniteTest, IntegrableEndpointSingularity) {
  const auto r = integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  expect_converged_within_tol(r);
  EXPECT_NEAR(r.value, 2.0, 1e-8);

  const auto s = integrate_finite([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0);
  ASSERT_EQ(s.status, Status::Converged);
  EXPECT_NEAR(s.value, 10.0, 1e-7);

  const auto l = integrate_finite([](double x) { return std::log(x); }, 0.0, 1.0);
  ASSERT_EQ(l.status, Status::Converged);
  EXPECT_NEAR(l.value, -1.0, 1e-10);
}

TEST(IntegrateFiniteTest, HarmonicDiverges) {
  EXPECT_EQ(integrate_finite([](double x) { return 1.0 / x; }, 0.0, 1.0).status, Status::Divergent);
  EXPECT_EQ(integrate_finite([](double x) { return 1.0 / (1.0 - x); }, 0.0, 1.0).status, Status::Divergent);
  EXPECT_EQ(integrate_finite([](double x) { return 1.0 / (x * x); }, 0.0, 1.0).status, Status::Divergent);
}

TEST(IntegrateFiniteTest, InteriorSingularityExhaustsDepth) {
  Tolerance tol;
  tol.max_depth = 20;
  const auto r = integrate_finite([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, tol);
  EXPECT_EQ(r.status, Status::MaxDepth);
}

TEST(IntegrateFiniteTest, SignedValuesPreserved) {
  const auto r = integrate_finite([](double x) { return -x * x; }, -1.0, 0.0);
  expect_converged_within_tol(r);
  EXPECT_NEAR(r.value, -1.0 / 3.0, 1e-14);
  EXPECT_NEAR(r.l1, 1.0 / 3.0, 1e-14);
}

TEST(IntegrateFiniteTest, SmoothWithSharpFeature) {
  const auto r = integrate_finite([](double x) { return std::exp(-1.0 / x); }, 0.0, 10.49);
  ASSERT_EQ(r.status, Status::Converged);
  // x e^(-1/x) - E1(1/x) evaluated at 10.49
  const double u = 1.0 / 10.49;
  const double e1 = std::expint(-u) * -1.0;
  EXPECT_NEAR(r.value, 10.49 * std::exp(-u) - e1, 1e-9);
}

TEST(IntegrateFiniteTest, InvalidArgumentsThrow) {
  EXPECT_THROW(integrate_finite([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
  Tolerance bad;
  bad.rel = -1.0;
  EXPECT_THROW(integrate_finite([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST(IntegrateLowerUnboundedTest, WorkedExamples) {
  const auto a = integrate_lower_unbounded([](double x) { return std::exp(x); }, 0.0);
  expect_converged_within_tol(a);
  EXPECT_NEAR(a.value, 1.0, 1e-8);

  const auto b = integrate_lower_unbounded([](double x) { return -x * std::exp(-0.5 * x * x); }, 0.0);
  expect_converged_within_tol(b);
  EXPECT_NEAR(b.value, 1.0, 1e-8);

  const auto c = integrate_lower_unbounded([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
  ASSERT_EQ(c.status, Status::Converged);
  EXPECT_NEAR(c.value, std::numbers::pi / 2.0, 1e-8);
}

TEST(IntegrateLowerUnboundedTest, NonDecayingTailDiverges) {
  EXPECT_EQ(integrate_lower_unbounded([](double) { return 1.0; }, 0.0).status, Status::Divergent);
  EXPECT_EQ(integrate_lower_unbounded([](double x) { return 1.0 / (1.0 - x); }, 0.0).status, Status::Divergent);
}

TEST(IntegrateLowerUnboundedTest, AgreesWithTruncatedFiniteIntegrals) {
  const ScalarFn fns[] = {
      [](double x) { return std::exp(2.0 * x); },
      [](double x) { return x * x * std::exp(x); },
      [](double x) { return std::exp(-x * x); },
  };
  for (const auto& f : fns) {
    const double full = integrate_lower_unbounded(f, 0.5).value;
    double prev_gap = INFINITY;
    for (double L : {-5.0, -10.0, -20.0, -40.0}) {
      const double gap = std::abs(full - integrate_finite(f, L, 0.5).value);
      EXPECT_LE(gap, prev_gap + 1e-14);
      prev_gap = gap;
    }
    EXPECT_LE(prev_gap, 1e-10);
  }
}

TEST(IntegrateUpperUnboundedTest, DecayAndDivergence) {
  const auto e = integrate_upper_unbounded([](double x) { return std::exp(-x); }, 0.0);
  ASSERT_EQ(e.status, Status::Converged);
  EXPECT_NEAR(e.value, 1.0, 1e-10);

  const auto p = integrate_upper_unbounded([](double x) { return std::pow(x, -1.1); }, 1.0);
  ASSERT_EQ(p.status, Status::Converged);
  EXPECT_NEAR(p.value, 10.0, 1e-6);

  EXPECT_EQ(integrate_upper_unbounded([](double x) { return 1.0 / x; }, 1.0).status, Status::Divergent);
}

TEST(IntegrateTest, DispatchesOnInfiniteEnds) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, -INFINITY, 0.0).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate([](double x) { return x; }, 0.0, 2.0).value, 2.0, 1e-12);
  EXPECT_THROW(integrate([](double) { return 0.0; }, -INFINITY, INFINITY), std::invalid_argument);
}

TEST(IntegrateTest, NonFiniteTermIsDivergent) {
  const auto r = integrate_finite([](double x) { return x < 0.5 ? NAN : 1.0; }, 0.0, 1.0);
  EXPECT_EQ(r.status, Status::Divergent);
}

TEST(StatusTest, Names) {
  EXPECT_EQ(to_string(Status::Converged), "Converged");
  EXPECT_EQ(to_string(Status::Divergent), "Divergent");
  EXPECT_EQ(to_string(Status::MaxDepth), "MaxDepth");
}

}  // namespace
