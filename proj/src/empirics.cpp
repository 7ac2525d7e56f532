#include "revchar/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "format.hpp"
#include "revchar/errors.hpp"

namespace revchar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMinGapPoints = 50;
constexpr double kSpreadTrimLow = 0.02;
constexpr double kSpreadTrimHigh = 0.10;

struct Accum {
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  std::size_t n = 0;
  int sign = 0;
  bool mixed = false;

  void add(double weight, double a, double b) {
    const int s = (weight > 0) - (weight < 0);
    if (s == 0 || (sign != 0 && s != sign)) mixed = true;
    if (sign == 0) sign = s;
    lhs += a;
    rhs += b;
    ++n;
  }
};

}  // namespace

EmpiricalEit::EmpiricalEit(const SampleSet& sample) : sample_(sample), prefix_(sample.size() + 1, 0.0L) {
  const auto v = sample.values();
  for (std::size_t i = 0; i < v.size(); ++i) prefix_[i + 1] = prefix_[i] + v[i];
}

double EmpiricalEit::operator()(double t) const {
  if (!(t >= sample_.min())) {
    throw NoMass("empirical inactivity time needs t >= min(sample) = " + detail::format_double(sample_.min()) +
                 ", got t=" + detail::format_double(t));
  }
  const auto v = sample_.values();
  const std::size_t j = std::size_t(std::upper_bound(v.begin(), v.end(), t) - v.begin());
  return double(t - prefix_[j] / (long double)j);
}

double EmpiricalEit::at_order_statistic(std::size_t i) const { return (*this)(sample_[i]); }

double empirical_eit(const SampleSet& sample, double t) { return EmpiricalEit(sample)(t); }

std::vector<GapStatistic> gap_statistics(const SampleSet& sample, double trim) {
  if (sample.size() < kMinGapPoints) {
    throw TooFewPoints("gap statistics need at least " + std::to_string(kMinGapPoints) + " points, got " +
                       std::to_string(sample.size()));
  }
  if (!(trim >= 0.0 && trim < 1.0)) throw std::invalid_argument("trim must lie in [0, 1)");

  const EmpiricalEit eit(sample);
  const std::size_t n = sample.size();
  const auto skip = std::size_t(std::ceil(trim * double(n)));

  Accum t31, t32, t34;
  for (std::size_t i = skip; i < n; ++i) {
    const double x = sample[i];
    const double m = eit.at_order_statistic(i);
    if (!(m > 0.0)) continue;
    t31.add(1.0, 1.0 / m, m);
    t32.add(x, 1.0 / (x * m), x * m);
    t34.add(x, m / x, x / m);
  }
  if (t31.n == 0) throw TooFewPoints("no retained order statistic has a positive inactivity time");

  auto make = [&](TheoremId id, const Accum& a, bool needs_positive) {
    GapStatistic g{id, kNaN, kNaN, kNaN, trim, true};
    if (a.mixed || (needs_positive && a.sign < 0)) {
      g.applicable = false;
      return g;
    }
    const double lhs = double(a.lhs / (long double)a.n);
    const double mean_rhs = double(a.rhs / (long double)a.n);
    g.lhs_hat = lhs;
    g.rhs_hat = 1.0 / mean_rhs;
    g.ratio_hat = lhs * mean_rhs;
    return g;
  };
  return {make(TheoremId::T3_1, t31, false), make(TheoremId::T3_2, t32, true),
          make(TheoremId::T3_4, t34, false)};
}

std::vector<Candidate> default_candidates() {
  return {{"type3ev", TheoremId::T3_1}, {"linearmit", TheoremId::T3_4}, {"finiterange", TheoremId::T3_2}};
}

RankingReport identify(const SampleSet& sample, const std::vector<Candidate>& candidates, double trim) {
  const auto base = gap_statistics(sample, trim);
  const auto lo = gap_statistics(sample, kSpreadTrimLow);
  const auto hi = gap_statistics(sample, kSpreadTrimHigh);
  auto find = [](const std::vector<GapStatistic>& gs, TheoremId id) -> const GapStatistic* {
    for (const auto& g : gs) {
      if (g.theorem == id) return &g;
    }
    return nullptr;
  };

  RankingReport report{trim, sample.size(), {}};
  for (const auto& c : candidates) {
    const GapStatistic* g = find(base, c.theorem);
    if (!g) throw std::invalid_argument("no empirical statistic for " + std::string(theorem_key(c.theorem)));
    RankingEntry e{c, g->ratio_hat, kInf, kInf, g->applicable};
    if (g->applicable) {
      e.score = std::abs(g->ratio_hat - 1.0);
      const GapStatistic* gl = find(lo, c.theorem);
      const GapStatistic* gh = find(hi, c.theorem);
      if (gl->applicable && gh->applicable) e.spread = std::abs(gh->ratio_hat - gl->ratio_hat);
    }
    report.ranking.push_back(e);
  }
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [](const RankingEntry& a, const RankingEntry& b) {
                     if (a.score != b.score) return a.score < b.score;
                     return a.spread < b.spread;
                   });
  return report;
}

std::string ranking_to_json(const RankingReport& report) {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json {
    if (!std::isfinite(v)) return nullptr;
    return v;
  };
  ordered_json j;
  j["n"] = report.n;
  j["trim"] = report.trim;
  auto arr = ordered_json::array();
  std::size_t rank = 1;
  for (const auto& e : report.ranking) {
    arr.push_back({{"rank", rank++},
                   {"candidate", e.candidate.name},
                   {"theorem", std::string(theorem_key(e.candidate.theorem))},
                   {"ratio_hat", num(e.ratio_hat)},
                   {"score", num(e.score)},
                   {"spread", num(e.spread)},
                   {"applicable", e.applicable}});
  }
  j["ranking"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace revchar
