#include "revchar/distributions.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "format.hpp"
#include "revchar/errors.hpp"

namespace revchar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_param(Family f, const std::string& what) {
  throw ParameterError(std::string(family_name(f)) + ": " + what);
}

void require(bool ok, Family f, const std::string& what) {
  if (!ok) bad_param(f, what);
}

void require_finite(double v, Family f, const char* key) {
  require(std::isfinite(v), f, std::string(key) + " must be finite");
}

int as_int(double v, Family f, const char* key) {
  require(std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e6, f,
          std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

// log(x / b) that stays accurate as x approaches b.
double log_ratio(double x, double b) {
  if (x > 0.5 * b && x < 2.0 * b) return std::log1p((x - b) / b);
  return std::log(x / b);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Type3EV:
      return "type3ev";
    case Family::Power:
      return "power";
    case Family::InverseWeibull:
      return "invweibull";
    case Family::TruncEVPower:
      return "truncevpower";
    case Family::BaseALinkedRHR:
      return "basealinkedrhr";
    case Family::ReflectedWeibull:
      return "reflectedweibull";
    case Family::FiniteRange:
      return "finiterange";
    case Family::LinearMIT:
      return "linearmit";
    case Family::ExpLinkedEIT:
      return "explinkedeit";
    case Family::BaseALinkedEIT:
      return "basealinkedeit";
    case Family::Uniform:
      return "uniform";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  const std::string key = lower(trim(name));
  for (Family f : kAllFamilies) {
    if (family_name(f) == key) return f;
  }
  return std::nullopt;
}

const std::vector<std::string>& family_keys(Family f) {
  static const std::map<Family, std::vector<std::string>> keys = {
      {Family::Type3EV, {"gamma", "b"}},
      {Family::Power, {"b", "c"}},
      {Family::InverseWeibull, {"nu", "delta"}},
      {Family::TruncEVPower, {"alpha", "b"}},
      {Family::BaseALinkedRHR, {"theta", "a", "b"}},
      {Family::ReflectedWeibull, {"theta", "k"}},
      {Family::FiniteRange, {"theta", "b", "k"}},
      {Family::LinearMIT, {"xi", "alpha", "beta", "b"}},
      {Family::ExpLinkedEIT, {"theta", "b"}},
      {Family::BaseALinkedEIT, {"gamma", "delta", "a", "b"}},
      {Family::Uniform, {"b"}},
  };
  return keys.at(f);
}

double FamilySpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) bad_param(family, "missing parameter '" + key + "'");
  return it->second;
}

std::string FamilySpec::to_string() const {
  std::string out(family_name(family));
  char sep = ':';
  for (const auto& key : family_keys(family)) {
    auto it = params.find(key);
    if (it == params.end()) continue;
    out += sep;
    out += key;
    out += '=';
    out += detail::format_double(it->second);
    sep = ',';
  }
  return out;
}

FamilySpec FamilySpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = trim(text.substr(0, colon));
  auto fam = family_from_name(name);
  if (!fam) throw ParameterError("unknown family '" + std::string(name) + "'");
  FamilySpec spec;
  spec.family = *fam;
  const auto& keys = family_keys(*fam);
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        bad_param(*fam, "expected key=value, got '" + std::string(item) + "'");
      }
      const std::string key = lower(trim(item.substr(0, eq)));
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        bad_param(*fam, "unknown parameter '" + key + "'");
      }
      auto value = detail::parse_double(item.substr(eq + 1));
      if (!value) bad_param(*fam, "parameter '" + key + "' is not a number");
      if (!spec.params.emplace(key, *value).second) {
        bad_param(*fam, "parameter '" + key + "' given twice");
      }
    }
  }
  // The integer exponent defaults to the simplest member of the class.
  if ((*fam == Family::ReflectedWeibull || *fam == Family::FiniteRange) && !spec.params.count("k")) {
    spec.params["k"] = 1.0;
  }
  for (const auto& key : keys) {
    if (!spec.params.count(key)) bad_param(*fam, "missing parameter '" + key + "'");
  }
  return spec;
}

FamilySpec FamilySpec::type3ev(double gamma, double b) {
  return {Family::Type3EV, {{"gamma", gamma}, {"b", b}}};
}
FamilySpec FamilySpec::power(double b, double c) { return {Family::Power, {{"b", b}, {"c", c}}}; }
FamilySpec FamilySpec::inverse_weibull(double nu, double delta) {
  return {Family::InverseWeibull, {{"nu", nu}, {"delta", delta}}};
}
FamilySpec FamilySpec::trunc_ev_power(double alpha, double b) {
  return {Family::TruncEVPower, {{"alpha", alpha}, {"b", b}}};
}
FamilySpec FamilySpec::base_a_linked_rhr(double theta, double a, double b) {
  return {Family::BaseALinkedRHR, {{"theta", theta}, {"a", a}, {"b", b}}};
}
FamilySpec FamilySpec::reflected_weibull(double theta, int k) {
  return {Family::ReflectedWeibull, {{"theta", theta}, {"k", double(k)}}};
}
FamilySpec FamilySpec::finite_range(double theta, double b, int k) {
  return {Family::FiniteRange, {{"theta", theta}, {"b", b}, {"k", double(k)}}};
}
FamilySpec FamilySpec::linear_mit(double xi, double alpha, double beta, double b) {
  return {Family::LinearMIT, {{"xi", xi}, {"alpha", alpha}, {"beta", beta}, {"b", b}}};
}
FamilySpec FamilySpec::exp_linked_eit(double theta, double b) {
  return {Family::ExpLinkedEIT, {{"theta", theta}, {"b", b}}};
}
FamilySpec FamilySpec::base_a_linked_eit(double gamma, double delta, double a, double b) {
  return {Family::BaseALinkedEIT, {{"gamma", gamma}, {"delta", delta}, {"a", a}, {"b", b}}};
}
FamilySpec FamilySpec::uniform(double b) { return {Family::Uniform, {{"b", b}}}; }

bool SupportInterval::lower_finite() const { return std::isfinite(lower); }
bool SupportInterval::upper_finite() const { return std::isfinite(upper); }

namespace detail {

// Per-family formulas. Every method is called with a < x <= b only.
class FamilyImpl {
 public:
  virtual ~FamilyImpl() = default;

  virtual SupportInterval support() const = 0;
  virtual double log_cdf(double x) const = 0;
  virtual double pdf(double x) const = 0;
  virtual double rhr(double x) const = 0;
  virtual std::optional<double> quantile(double) const { return std::nullopt; }
  virtual std::optional<double> eit(double) const { return std::nullopt; }
  virtual std::optional<double> rai(double) const { return std::nullopt; }
  virtual std::optional<double> raw_moment(int) const { return std::nullopt; }
};

namespace {

// X = b - E with E ~ Exp(gamma): binomial expansion of E[(b - E)^k].
double ev_moment(double gamma, double b, int k) {
  double sum = 0.0;
  double binom = 1.0;
  double fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      binom = binom * (k - j + 1) / j;
      fact *= j;
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += binom * std::pow(b, k - j) * sign * fact / std::pow(gamma, j);
  }
  return sum;
}

class Type3EVImpl final : public FamilyImpl {
 public:
  explicit Type3EVImpl(const FamilySpec& s) : gamma_(s.param("gamma")), b_(s.param("b")) {
    require(gamma_ > 0 && std::isfinite(gamma_), Family::Type3EV, "gamma must be > 0");
    require_finite(b_, Family::Type3EV, "b");
    require(b_ >= 0, Family::Type3EV, "b must be >= 0");
  }
  SupportInterval support() const override { return {-kInf, b_}; }
  double log_cdf(double x) const override { return gamma_ * (x - b_); }
  double pdf(double x) const override { return gamma_ * std::exp(gamma_ * (x - b_)); }
  double rhr(double) const override { return gamma_; }
  std::optional<double> quantile(double p) const override { return b_ + std::log(p) / gamma_; }
  std::optional<double> eit(double) const override { return 1.0 / gamma_; }
  std::optional<double> rai(double) const override { return 1.0; }
  std::optional<double> raw_moment(int k) const override { return ev_moment(gamma_, b_, k); }

 private:
  double gamma_, b_;
};

// Power law (x / b)^c on (0, b]; Uniform is the c = 1 member.
class PowerImpl final : public FamilyImpl {
 public:
  PowerImpl(Family tag, double b, double c) : b_(b), c_(c) {
    require(b_ > 0 && std::isfinite(b_), tag, "b must be > 0");
    require(c_ > 0 && std::isfinite(c_), tag, "c must be > 0");
  }
  SupportInterval support() const override { return {0.0, b_}; }
  double log_cdf(double x) const override { return c_ * log_ratio(x, b_); }
  double pdf(double x) const override { return c_ * std::pow(x, c_ - 1.0) / std::pow(b_, c_); }
  double rhr(double x) const override { return c_ / x; }
  std::optional<double> quantile(double p) const override { return b_ * std::pow(p, 1.0 / c_); }
  std::optional<double> eit(double x) const override { return x / (c_ + 1.0); }
  std::optional<double> rai(double x) const override {
    const double lr = log_ratio(x, b_);
    if (std::abs(c_ * lr) < 1e-12) return 1.0;
    return (x - b_) / (x * lr);
  }
  std::optional<double> raw_moment(int k) const override {
    return c_ * std::pow(b_, k) / (c_ + k);
  }

 private:
  double b_, c_;
};

class InverseWeibullImpl final : public FamilyImpl {
 public:
  explicit InverseWeibullImpl(const FamilySpec& s) : nu_(s.param("nu")), delta_(s.param("delta")) {
    require(nu_ > 0 && std::isfinite(nu_), Family::InverseWeibull, "nu must be > 0");
    require(delta_ > 0 && std::isfinite(delta_), Family::InverseWeibull, "delta must be > 0");
  }
  SupportInterval support() const override { return {0.0, kInf}; }
  double log_cdf(double x) const override { return -nu_ * std::pow(x, -delta_); }
  double pdf(double x) const override {
    const double z = nu_ * std::pow(x, -delta_);
    return delta_ * z / x * std::exp(-z);
  }
  double rhr(double x) const override { return nu_ * delta_ * std::pow(x, -delta_ - 1.0); }
  std::optional<double> quantile(double p) const override {
    return std::pow(-std::log(p) / nu_, -1.0 / delta_);
  }
  // E[X^k] = nu^(k/delta) Gamma(1 - k/delta), finite only for k < delta.
  std::optional<double> raw_moment(int k) const override {
    if (k == 0) return 1.0;
    if (k >= delta_) {
      throw DivergentMoment("invweibull: moment of order " + std::to_string(k) +
                            " diverges (needs k < delta)");
    }
    return std::pow(nu_, k / delta_) * std::tgamma(1.0 - k / delta_);
  }

 private:
  double nu_, delta_;
};

class TruncEVPowerImpl final : public FamilyImpl {
 public:
  explicit TruncEVPowerImpl(const FamilySpec& s) : alpha_(s.param("alpha")), b_(s.param("b")) {
    require(alpha_ > 0 && std::isfinite(alpha_), Family::TruncEVPower, "alpha must be > 0");
    require_finite(b_, Family::TruncEVPower, "b");
  }
  SupportInterval support() const override { return {-kInf, b_}; }
  double log_cdf(double x) const override {
    return -alpha_ * std::exp(-b_) * std::expm1(b_ - x);
  }
  double pdf(double x) const override { return std::exp(std::log(alpha_) - x + log_cdf(x)); }
  double rhr(double x) const override { return alpha_ * std::exp(-x); }
  std::optional<double> quantile(double p) const override {
    return -std::log(std::exp(-b_) - std::log(p) / alpha_);
  }

 private:
  double alpha_, b_;
};

class BaseALinkedRHRImpl final : public FamilyImpl {
 public:
  explicit BaseALinkedRHRImpl(const FamilySpec& s)
      : theta_(s.param("theta")), a_(s.param("a")), b_(s.param("b")), ln_a_(std::log(a_)) {
    require(theta_ > 0 && std::isfinite(theta_), Family::BaseALinkedRHR, "theta must be > 0");
    require(a_ > 1 && std::isfinite(a_), Family::BaseALinkedRHR, "a must be > 1");
    require_finite(b_, Family::BaseALinkedRHR, "b");
  }
  SupportInterval support() const override { return {-kInf, b_}; }
  double log_cdf(double x) const override {
    return -theta_ * std::pow(a_, -b_) * std::expm1((b_ - x) * ln_a_);
  }
  double pdf(double x) const override {
    return std::exp(std::log(theta_ * ln_a_) - x * ln_a_ + log_cdf(x));
  }
  double rhr(double x) const override { return theta_ * ln_a_ * std::pow(a_, -x); }
  std::optional<double> quantile(double p) const override {
    return -std::log(std::pow(a_, -b_) - std::log(p) / theta_) / ln_a_;
  }

 private:
  double theta_, a_, b_, ln_a_;
};

class ReflectedWeibullImpl final : public FamilyImpl {
 public:
  explicit ReflectedWeibullImpl(const FamilySpec& s)
      : theta_(s.param("theta")), k_(as_int(s.param("k"), Family::ReflectedWeibull, "k")),
        n_(k_ + 1) {
    require(theta_ > 0 && std::isfinite(theta_), Family::ReflectedWeibull, "theta must be > 0");
    require(k_ > 0 && k_ % 2 == 1, Family::ReflectedWeibull, "k must be an odd positive integer");
  }
  SupportInterval support() const override { return {-kInf, 0.0}; }
  double log_cdf(double x) const override { return -theta_ * std::pow(-x, n_); }
  double pdf(double x) const override {
    return theta_ * n_ * std::pow(-x, k_) * std::exp(log_cdf(x));
  }
  double rhr(double x) const override { return theta_ * n_ * std::pow(-x, k_); }
  std::optional<double> quantile(double p) const override {
    return -std::pow(-std::log(p) / theta_, 1.0 / n_);
  }
  // int_{-inf}^t F = theta^(-1/n) Gamma(1/n, theta |t|^n) / n.
  std::optional<double> eit(double x) const override {
    const double z = theta_ * std::pow(-x, n_);
    const double tail = boost::math::tgamma(1.0 / n_, z) * std::pow(theta_, -1.0 / n_) / n_;
    return tail * std::exp(z);
  }
  std::optional<double> rai(double) const override { return double(n_); }
  std::optional<double> raw_moment(int j) const override {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(theta_, -double(j) / n_) * std::tgamma(1.0 + double(j) / n_);
  }

 private:
  double theta_;
  int k_, n_;
};

class FiniteRangeImpl final : public FamilyImpl {
 public:
  explicit FiniteRangeImpl(const FamilySpec& s)
      : theta_(s.param("theta")), b_(s.param("b")),
        k_(as_int(s.param("k"), Family::FiniteRange, "k")), n_(k_ + 1) {
    require(theta_ > 0 && std::isfinite(theta_), Family::FiniteRange, "theta must be > 0");
    require(b_ > 0 && std::isfinite(b_), Family::FiniteRange, "b must be > 0");
    require(k_ > 0, Family::FiniteRange, "k must be a positive integer");
  }
  SupportInterval support() const override { return {0.0, b_}; }
  double log_cdf(double x) const override {
    return k_ * log_ratio(x, b_) + theta_ * (std::pow(x, n_) - std::pow(b_, n_));
  }
  double pdf(double x) const override {
    const double F = std::exp(log_cdf(x));
    return F * (k_ / x + theta_ * n_ * std::pow(x, k_));
  }
  double rhr(double x) const override { return k_ / x + theta_ * n_ * std::pow(x, k_); }

 private:
  double theta_, b_;
  int k_, n_;
};

// Reconstructed from phi m = 1 - m' with m(x) = xi (alpha + beta x).
class LinearMITImpl final : public FamilyImpl {
 public:
  explicit LinearMITImpl(const FamilySpec& s)
      : xi_(s.param("xi")), alpha_(s.param("alpha")), beta_(s.param("beta")), b_(s.param("b")) {
    constexpr Family f = Family::LinearMIT;
    require(xi_ > 0 && std::isfinite(xi_), f, "xi must be > 0");
    require_finite(alpha_, f, "alpha");
    require_finite(beta_, f, "beta");
    require_finite(b_, f, "b");
    if (beta_ == 0.0) {
      require(alpha_ > 0, f, "alpha must be > 0 when beta = 0");
    } else {
      require(alpha_ + beta_ * b_ > 0, f, "alpha + beta b must be > 0");
      if (beta_ > 0) require(xi_ * beta_ < 1.0, f, "xi beta must be < 1 when beta > 0");
      exponent_ = (1.0 - xi_ * beta_) / (xi_ * beta_);
    }
  }
  SupportInterval support() const override {
    if (beta_ > 0) return {-alpha_ / beta_, b_};
    return {-kInf, b_};
  }
  double log_cdf(double x) const override {
    if (beta_ == 0.0) return (x - b_) / (xi_ * alpha_);
    return exponent_ * std::log1p(beta_ * (x - b_) / (alpha_ + beta_ * b_));
  }
  double pdf(double x) const override {
    if (beta_ == 0.0) return std::exp(log_cdf(x)) / (xi_ * alpha_);
    return exponent_ * beta_ / (alpha_ + beta_ * b_) *
           std::exp((exponent_ - 1.0) * std::log1p(beta_ * (x - b_) / (alpha_ + beta_ * b_)));
  }
  double rhr(double x) const override { return (1.0 - xi_ * beta_) / (xi_ * (alpha_ + beta_ * x)); }
  std::optional<double> quantile(double p) const override {
    if (beta_ == 0.0) return b_ + xi_ * alpha_ * std::log(p);
    return b_ + (alpha_ + beta_ * b_) * std::expm1(std::log(p) / exponent_) / beta_;
  }
  std::optional<double> eit(double x) const override { return xi_ * (alpha_ + beta_ * x); }
  std::optional<double> rai(double x) const override {
    if (beta_ == 0.0) return 1.0;
    const double lg = std::log1p(beta_ * (x - b_) / (alpha_ + beta_ * b_));
    if (std::abs(exponent_ * lg) < 1e-12) return 1.0;
    return (x - b_) * beta_ / ((alpha_ + beta_ * x) * lg);
  }
  std::optional<double> raw_moment(int k) const override {
    if (beta_ != 0.0) return std::nullopt;
    // beta = 0 is Type 3 EV with gamma = 1 / (xi alpha).
    return ev_moment(1.0 / (xi_ * alpha_), b_, k);
  }

 private:
  double xi_, alpha_, beta_, b_;
  double exponent_ = 0.0;
};

class ExpLinkedEITImpl final : public FamilyImpl {
 public:
  explicit ExpLinkedEITImpl(const FamilySpec& s) : theta_(s.param("theta")), b_(s.param("b")) {
    require(theta_ > 0 && std::isfinite(theta_), Family::ExpLinkedEIT, "theta must be > 0");
    require_finite(b_, Family::ExpLinkedEIT, "b");
  }
  SupportInterval support() const override { return {-kInf, b_}; }
  double log_cdf(double x) const override {
    return (x - b_) + theta_ * std::exp(b_) * std::expm1(x - b_);
  }
  double pdf(double x) const override {
    return std::exp(log_cdf(x)) * (1.0 + theta_ * std::exp(x));
  }
  double rhr(double x) const override { return 1.0 + theta_ * std::exp(x); }

 private:
  double theta_, b_;
};

class BaseALinkedEITImpl final : public FamilyImpl {
 public:
  explicit BaseALinkedEITImpl(const FamilySpec& s)
      : gamma_(s.param("gamma")), delta_(s.param("delta")), a_(s.param("a")), b_(s.param("b")),
        ln_a_(std::log(a_)) {
    constexpr Family f = Family::BaseALinkedEIT;
    require(gamma_ > 0 && std::isfinite(gamma_), f, "gamma must be > 0");
    require(delta_ > 0 && std::isfinite(delta_), f, "delta must be > 0");
    require(a_ > 1 && std::isfinite(a_), f, "a must be > 1");
    require_finite(b_, f, "b");
  }
  SupportInterval support() const override { return {-kInf, b_}; }
  double log_cdf(double x) const override {
    return gamma_ * (x - b_) + delta_ * std::pow(a_, b_) * std::expm1((x - b_) * ln_a_);
  }
  double pdf(double x) const override {
    return std::exp(log_cdf(x)) * (gamma_ + delta_ * ln_a_ * std::pow(a_, x));
  }
  double rhr(double x) const override { return gamma_ + delta_ * ln_a_ * std::pow(a_, x); }

 private:
  double gamma_, delta_, a_, b_, ln_a_;
};

std::shared_ptr<const FamilyImpl> build(const FamilySpec& s) {
  for (const auto& [key, value] : s.params) {
    const auto& keys = family_keys(s.family);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      bad_param(s.family, "unknown parameter '" + key + "'");
    }
    if (std::isnan(value)) bad_param(s.family, key + " is NaN");
  }
  switch (s.family) {
    case Family::Type3EV:
      return std::make_shared<Type3EVImpl>(s);
    case Family::Power:
      return std::make_shared<PowerImpl>(Family::Power, s.param("b"), s.param("c"));
    case Family::InverseWeibull:
      return std::make_shared<InverseWeibullImpl>(s);
    case Family::TruncEVPower:
      return std::make_shared<TruncEVPowerImpl>(s);
    case Family::BaseALinkedRHR:
      return std::make_shared<BaseALinkedRHRImpl>(s);
    case Family::ReflectedWeibull:
      return std::make_shared<ReflectedWeibullImpl>(s);
    case Family::FiniteRange:
      return std::make_shared<FiniteRangeImpl>(s);
    case Family::LinearMIT:
      return std::make_shared<LinearMITImpl>(s);
    case Family::ExpLinkedEIT:
      return std::make_shared<ExpLinkedEITImpl>(s);
    case Family::BaseALinkedEIT:
      return std::make_shared<BaseALinkedEITImpl>(s);
    case Family::Uniform:
      return std::make_shared<PowerImpl>(Family::Uniform, s.param("b"), 1.0);
  }
  throw ParameterError("unknown family");
}

}  // namespace
}  // namespace detail

DistributionModel::DistributionModel(const FamilySpec& spec)
    : spec_(spec), impl_(detail::build(spec)) {
  support_ = impl_->support();
}

double DistributionModel::log_cdf(double t) const {
  if (std::isnan(t)) return t;
  if (t <= support_.lower) return -kInf;
  if (t >= support_.upper) return 0.0;
  return std::min(impl_->log_cdf(t), 0.0);
}

double DistributionModel::cdf(double t) const {
  if (std::isnan(t)) return t;
  if (t <= support_.lower) return 0.0;
  if (t >= support_.upper) return 1.0;
  return std::exp(log_cdf(t));
}

double DistributionModel::pdf(double t) const {
  if (!support_.contains_open(t)) {
    throw SupportError(spec_.to_string() + ": pdf undefined at t=" + detail::format_double(t) +
                       " outside the open support");
  }
  return impl_->pdf(t);
}

double DistributionModel::density(double t) const {
  if (!(t > support_.lower && t <= support_.upper) || std::isinf(t)) return 0.0;
  const double v = impl_->pdf(t);
  return std::isfinite(v) && v > 0.0 ? v : 0.0;
}

double DistributionModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile needs p in (0, 1), got " + detail::format_double(p));
  }
  if (auto q = impl_->quantile(p)) {
    return std::clamp(*q, support_.lower, support_.upper);
  }
  // Bracketed root of log F(x) - log p; log scale keeps the tails well
  // conditioned.
  const double target = std::log(p);
  auto fn = [&](double x) { return log_cdf(x) - target; };
  double hi = support_.upper;
  double lo = support_.lower;
  if (!std::isfinite(lo)) {
    double step = 1.0;
    lo = hi - step;
    while (fn(lo) > 0.0) {
      hi = lo;
      step *= 2.0;
      lo -= step;
      if (!std::isfinite(lo)) throw DomainError("quantile bracket failed");
    }
  } else {
    // log F is -inf at a finite lower end; walk in until it is finite.
    const double a = lo;
    double w = hi - a;
    lo = a + 0.5 * w;
    double flo = fn(lo);
    while (flo > 0.0 || !std::isfinite(flo)) {
      if (flo > 0.0) hi = lo;
      w *= 0.5;
      lo = a + 0.5 * w;
      if (!(lo > a)) return a;
      flo = fn(lo);
    }
  }
  boost::uintmax_t iters = 400;
  auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
  auto r = boost::math::tools::toms748_solve(fn, lo, hi, fn(lo), fn(hi), tol, iters);
  return 0.5 * (r.first + r.second);
}

std::optional<double> DistributionModel::closed_rhr(double t) const { return impl_->rhr(t); }
std::optional<double> DistributionModel::closed_eit(double t) const { return impl_->eit(t); }
std::optional<double> DistributionModel::closed_rai(double t) const { return impl_->rai(t); }
std::optional<double> DistributionModel::closed_raw_moment(int k) const {
  return impl_->raw_moment(k);
}

bool DistributionModel::has_closed_eit() const {
  const double mid = std::isfinite(support_.lower)
                         ? (std::isfinite(support_.upper) ? 0.5 * (support_.lower + support_.upper)
                                                          : support_.lower + 1.0)
                         : support_.upper - 1.0;
  return impl_->eit(mid).has_value();
}

bool DistributionModel::has_closed_rai() const {
  if (!support_.upper_finite()) return false;
  const double mid = std::isfinite(support_.lower) ? 0.5 * (support_.lower + support_.upper)
                                                   : support_.upper - 1.0;
  return impl_->rai(mid).has_value();
}

DistributionModel make_distribution(const FamilySpec& spec) { return DistributionModel(spec); }
double cdf_at(const DistributionModel& model, double t) { return model.cdf(t); }
double pdf_at(const DistributionModel& model, double t) { return model.pdf(t); }
double quantile_at(const DistributionModel& model, double p) { return model.quantile(p); }

}  // namespace revchar
