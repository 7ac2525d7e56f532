#pragma once

#include <string>
#include <vector>

#include "revchar/characterizations.hpp"
#include "revchar/sample.hpp"

namespace revchar {

// Plug-in inactivity time t - mean{x_i : x_i <= t}, from prefix sums so
// repeated queries cost O(log n).
class EmpiricalEit {
 public:
  explicit EmpiricalEit(const SampleSet& sample);

  // Throws NoMass when t < min(sample).
  double operator()(double t) const;
  // Value at the i-th order statistic (0-based), counting ties at x_(i).
  double at_order_statistic(std::size_t i) const;

 private:
  const SampleSet& sample_;
  std::vector<long double> prefix_;  // prefix_[j] = x_(0) + ... + x_(j-1)
};

double empirical_eit(const SampleSet& sample, double t);

struct GapStatistic {
  TheoremId theorem;
  double lhs_hat;
  double rhs_hat;
  double ratio_hat;
  double trimmed_fraction;
  // False when the x-weight changes sign over the retained points, or vanishes.
  bool applicable = true;
};

inline constexpr TheoremId kEmpiricalTheorems[] = {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_4};

// Plug-in ratios for the inactivity-time checks, averaged over the order
// statistics x_(i) with i > ceil(trim n) and m_hat(x_(i)) > 0. Throws
// TooFewPoints for n < 50 and std::invalid_argument for trim outside [0, 1).
std::vector<GapStatistic> gap_statistics(const SampleSet& sample, double trim = 0.05);

struct Candidate {
  std::string name;
  TheoremId theorem;
};

// type3ev -> T3_1, linearmit (power class) -> T3_4, finiterange -> T3_2.
std::vector<Candidate> default_candidates();

struct RankingEntry {
  Candidate candidate;
  double ratio_hat;
  double score;   // |ratio_hat - 1|, +inf when not applicable
  double spread;  // |ratio(0.10) - ratio(0.02)|
  bool applicable;
};

struct RankingReport {
  double trim;
  std::size_t n;
  std::vector<RankingEntry> ranking;  // best first
};

// Ranks candidates by score; equal scores fall back to the smaller spread,
// then to input order.
RankingReport identify(const SampleSet& sample, const std::vector<Candidate>& candidates,
                       double trim = 0.05);

std::string ranking_to_json(const RankingReport& report);

}  // namespace revchar
