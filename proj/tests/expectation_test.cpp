#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "revchar/distributions.hpp"
#include "revchar/errors.hpp"
#include "revchar/expectation.hpp"
#include "test_support.hpp"

namespace {

using namespace revchar;
using quad::Status;
using revchar::testing::gk_integral;
using revchar::testing::two_settings_per_family;

TEST(ExpectationTest, WorkedExamples) {
  const auto t3 = make_distribution(FamilySpec::type3ev(1, 0));
  const auto one = expectation({t3, [](double) { return 1.0; }});
  ASSERT_EQ(one.status, Status::Converged);
  EXPECT_NEAR(one.value, 1.0, 1e-10);

  const auto p = make_distribution(FamilySpec::power(1, 2));
  const auto four = expectation({p, [](double x) { return 2.0 / x; }});
  ASSERT_EQ(four.status, Status::Converged);
  EXPECT_NEAR(four.value, 4.0, 1e-9);

  const auto u = make_distribution(FamilySpec::uniform(1));
  EXPECT_EQ(expectation({u, [](double x) { return 1.0 / x; }}).status, Status::Divergent);
}

TEST(ExpectationTest, NormalizesForEveryFamily) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = make_distribution(s);
    const auto r = expectation({m, [](double) { return 1.0; }});
    ASSERT_EQ(r.status, Status::Converged) << s.to_string();
    EXPECT_NEAR(r.value, 1.0, 1e-8) << s.to_string();
  }
}

TEST(ExpectationTest, NegativeWeightOnNegativeSupportStaysNegative) {
  const auto m = make_distribution(FamilySpec::reflected_weibull(0.5, 1));
  const auto r = expectation({m, [](double x) { return x; }});
  ASSERT_EQ(r.status, Status::Converged);
  EXPECT_LT(r.value, 0.0);
  // E[X] = -Gamma(3/2) / sqrt(theta) for F = exp(-theta x^2)
  EXPECT_NEAR(r.value, -std::tgamma(1.5) / std::sqrt(0.5), 1e-10);
}

TEST(ExpectationTest, MatchesIndependentQuadrature) {
  for (const auto& s : two_settings_per_family()) {
    const auto m = make_distribution(s);
    auto g = [](double x) { return std::exp(-x * x) + 0.5 / (1.0 + x * x); };
    const auto r = expectation({m, g});
    const double oracle = gk_integral([&](double x) { return g(x) * m.density(x); }, m.support().lower,
                                      m.support().upper);
    ASSERT_EQ(r.status, Status::Converged) << s.to_string();
    EXPECT_NEAR(r.value, oracle, 1e-9) << s.to_string();
  }
}

TEST(ExpectationTest, BreakpointsSplitInteriorSingularities) {
  const auto u = make_distribution(FamilySpec::uniform(1));
  auto g = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
  const auto r = expectation({u, g, {0.3}});
  ASSERT_EQ(r.status, Status::Converged);
  // Doubles cannot resolve |x - 0.3| below ulp(0.3), which costs about 2 sqrt(ulp).
  EXPECT_NEAR(r.value, 2.0 * std::sqrt(0.3) + 2.0 * std::sqrt(0.7), 1e-7);

  auto pole = [](double x) { return 1.0 / (x - 0.5); };
  EXPECT_EQ(expectation({u, pole, {0.5}}).status, Status::Divergent);
}

TEST(CdfCumulativeIntegralTest, WorkedExamples) {
  const auto a = cdf_cumulative_integral(make_distribution(FamilySpec::type3ev(2, 0)), 0.0);
  ASSERT_EQ(a.status, Status::Converged);
  EXPECT_NEAR(a.value, 0.5, 1e-12);

  const auto b = cdf_cumulative_integral(make_distribution(FamilySpec::power(1, 2)), 1.0);
  ASSERT_EQ(b.status, Status::Converged);
  EXPECT_NEAR(b.value, 1.0 / 3.0, 1e-12);

  const auto c = cdf_cumulative_integral(make_distribution(FamilySpec::uniform(1)), 0.5);
  ASSERT_EQ(c.status, Status::Converged);
  EXPECT_NEAR(c.value, 0.125, 1e-12);
}

TEST(CdfCumulativeIntegralTest, OutsideSupportThrows) {
  const auto p = make_distribution(FamilySpec::power(1, 2));
  EXPECT_THROW(cdf_cumulative_integral(p, 0.0), SupportError);
  EXPECT_THROW(cdf_cumulative_integral(p, 1.5), SupportError);
  EXPECT_THROW(cdf_cumulative_integral(p, -1.0), SupportError);
}

TEST(CdfCumulativeIntegralTest, KeepsRelativePrecisionDeepInTail) {
  // int_-inf^t e^x dx = e^t, far below abs_tol.
  const auto m = make_distribution(FamilySpec::type3ev(1, 0));
  const auto r = cdf_cumulative_integral(m, -40.0);
  ASSERT_EQ(r.status, Status::Converged);
  EXPECT_NEAR(r.value / std::exp(-40.0), 1.0, 1e-9);
}

TEST(SampleInverseCdfTest, DeterministicAndInSupport) {
  const auto p = make_distribution(FamilySpec::power(1, 2));
  const auto a = sample_inverse_cdf(p, 4, 7);
  const auto b = sample_inverse_cdf(p, 4, 7);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GT(a[i], 0.0);
    EXPECT_LT(a[i], 1.0);
    EXPECT_EQ(a[i], b[i]);
  }
  const auto c = sample_inverse_cdf(p, 4, 8);
  bool differs = false;
  for (std::size_t i = 0; i < 4; ++i) differs = differs || a[i] != c[i];
  EXPECT_TRUE(differs);
}

TEST(SampleInverseCdfTest, Type3EvSampleMean) {
  const auto s = sample_inverse_cdf(make_distribution(FamilySpec::type3ev(1, 0)), 100000, 1);
  double sum = 0.0;
  for (double x : s.values()) sum += x;
  EXPECT_NEAR(sum / double(s.size()), -1.0, 0.02);
}

TEST(SampleInverseCdfTest, EmptyRequestThrows) {
  EXPECT_THROW(sample_inverse_cdf(make_distribution(FamilySpec::power(1, 2)), 0, 1), std::invalid_argument);
}

TEST(McExpectationTest, SmallSampleArithmetic) {
  const auto r = mc_expectation(SampleSet({1.0, 2.0, 3.0}), [](double x) { return x; });
  EXPECT_DOUBLE_EQ(r.mean, 2.0);
  EXPECT_NEAR(r.std_error, std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(McExpectationTest, AgreesWithQuadrature) {
  const auto s = sample_inverse_cdf(make_distribution(FamilySpec::power(1, 2)), 1000000, 3);
  const auto r = mc_expectation(s, [](double x) { return 2.0 / x; });
  EXPECT_LE(std::abs(r.mean - 4.0), 4.0 * r.std_error);
}

TEST(McExpectationTest, NonFiniteWeightThrows) {
  EXPECT_THROW(mc_expectation(SampleSet({0.0, 1.0}), [](double x) { return 1.0 / x; }), NonFiniteWeight);
}

TEST(SampleSetTest, SortsAndValidates) {
  const SampleSet s({3.0, 1.0, 2.0});
  EXPECT_EQ(s.min(), 1.0);
  EXPECT_EQ(s.max(), 3.0);
  EXPECT_THROW(SampleSet({}), std::invalid_argument);
  EXPECT_THROW(SampleSet({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

}  // namespace
