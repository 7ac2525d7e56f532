#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revchar {

enum class Family {
  Type3EV,           // F = exp(gamma (x - b)) on (-inf, b]
  Power,             // F = (x / b)^c on (0, b]
  InverseWeibull,    // F = exp(-nu x^-delta) on (0, inf)
  TruncEVPower,      // F = exp(-alpha (e^-x - e^-b)) on (-inf, b]
  BaseALinkedRHR,    // F = exp(-theta (a^-x - a^-b)) on (-inf, b]
  ReflectedWeibull,  // F = exp(-theta x^(k+1)) on (-inf, 0], k odd
  FiniteRange,       // F = (x / b)^k exp(theta (x^(k+1) - b^(k+1))) on (0, b]
  LinearMIT,         // expected inactivity time xi (alpha + beta x)
  ExpLinkedEIT,      // F = e^(x - b) exp(theta (e^x - e^b)) on (-inf, b]
  BaseALinkedEIT,    // F = e^(gamma (x - b)) exp(delta (a^x - a^b)) on (-inf, b]
  Uniform,           // F = x / b on (0, b]
};

inline constexpr Family kAllFamilies[] = {
    Family::Type3EV,      Family::Power,       Family::InverseWeibull, Family::TruncEVPower,
    Family::BaseALinkedRHR, Family::ReflectedWeibull, Family::FiniteRange, Family::LinearMIT,
    Family::ExpLinkedEIT, Family::BaseALinkedEIT, Family::Uniform,
};

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Parameter keys accepted by a family, in canonical order.
const std::vector<std::string>& family_keys(Family f);

// A family tag with named parameters. The text form is
// `family:key=value,key=value`, case-insensitive and order-free.
struct FamilySpec {
  Family family = Family::Type3EV;
  std::map<std::string, double> params;

  double param(const std::string& key) const;
  std::string to_string() const;
  static FamilySpec parse(std::string_view text);

  bool operator==(const FamilySpec&) const = default;

  static FamilySpec type3ev(double gamma, double b);
  static FamilySpec power(double b, double c);
  static FamilySpec inverse_weibull(double nu, double delta);
  static FamilySpec trunc_ev_power(double alpha, double b);
  static FamilySpec base_a_linked_rhr(double theta, double a, double b);
  static FamilySpec reflected_weibull(double theta, int k);
  static FamilySpec finite_range(double theta, double b, int k);
  static FamilySpec linear_mit(double xi, double alpha, double beta, double b);
  static FamilySpec exp_linked_eit(double theta, double b);
  static FamilySpec base_a_linked_eit(double gamma, double delta, double a, double b);
  static FamilySpec uniform(double b);
};

struct SupportInterval {
  double lower;  // may be -inf
  double upper;  // finite except for InverseWeibull

  bool lower_finite() const;
  bool upper_finite() const;
  bool contains_open(double t) const { return t > lower && t < upper; }
};

namespace detail {
class FamilyImpl;
}

// An immutable, validated distribution. Copies share the underlying family.
class DistributionModel {
 public:
  explicit DistributionModel(const FamilySpec& spec);

  const FamilySpec& spec() const { return spec_; }
  const SupportInterval& support() const { return support_; }
  Family family() const { return spec_.family; }

  // 0 for t <= a, 1 for t >= b.
  double cdf(double t) const;
  // -inf for t <= a, 0 for t >= b; accurate near b where cdf rounds to 1.
  double log_cdf(double t) const;
  // Throws SupportError outside (a, b).
  double pdf(double t) const;
  // Non-throwing density for internal integrands: 0 outside (a, b], and the
  // left limit at b.
  double density(double t) const;
  // Throws DomainError outside (0, 1).
  double quantile(double p) const;

  // Closed forms derived per family; empty when not derived.
  std::optional<double> closed_rhr(double t) const;
  std::optional<double> closed_eit(double t) const;
  std::optional<double> closed_rai(double t) const;
  // Empty when not derived; throws DivergentMoment when known to diverge.
  std::optional<double> closed_raw_moment(int k) const;

  bool has_closed_eit() const;
  bool has_closed_rai() const;

 private:
  FamilySpec spec_;
  SupportInterval support_;
  std::shared_ptr<const detail::FamilyImpl> impl_;
};

DistributionModel make_distribution(const FamilySpec& spec);
double cdf_at(const DistributionModel& model, double t);
double pdf_at(const DistributionModel& model, double t);
double quantile_at(const DistributionModel& model, double p);

}  // namespace revchar
