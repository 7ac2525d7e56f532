#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revchar/distributions.hpp"
#include "revchar/quadrature.hpp"

namespace revchar {

enum class TheoremId {
  T2_1, T2_2, T2_4, T2_5, T2_6, T2_7, T2_8, T2_9, T2_10,
  T3_1, T3_2, T3_3, T3_4, T3_5, T3_6, T3_7,
  T4_1, T4_2, T4_3, T4_4,
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::T2_1, TheoremId::T2_2, TheoremId::T2_4, TheoremId::T2_5, TheoremId::T2_6,
    TheoremId::T2_7, TheoremId::T2_8, TheoremId::T2_9, TheoremId::T2_10, TheoremId::T3_1,
    TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4, TheoremId::T3_5, TheoremId::T3_6,
    TheoremId::T3_7, TheoremId::T4_1, TheoremId::T4_2, TheoremId::T4_3, TheoremId::T4_4,
};

std::string_view theorem_key(TheoremId id);
std::optional<TheoremId> theorem_from_key(std::string_view key);

// Theorems whose printed equality family does not reproduce the functional
// form of m forced by the equality condition. Checked, never asserted equal.
bool is_suspect(TheoremId id);

enum class SupportRequirement { Any, Nonnegative, FiniteB };
std::string_view to_string(SupportRequirement r);

enum class RhsKind {
  One,          // product of two expectations >= 1
  MuKSquared,   // product of two expectations >= mu_k^2
  MomentBound,  // single expectation against a moment expression in b
};

enum class Verdict {
  Equality,
  StrictInequality,
  Violated,        // converged, ratio below 1 - eq_tol
  Divergent,       // some component integral or moment does not converge
  Unresolved,      // quadrature ran out of depth or budget
  DomainMismatch,  // support requirement fails or the bound is undefined
};
std::string_view to_string(Verdict v);

// Which way the bound runs. Ge is lhs >= rhs; Le appears for the moment bounds
// when b^(k+1) - mu_(k+1) < 0, where dividing through flips the product form.
enum class Direction { Ge, Le };
std::string_view to_string(Direction d);

// Pointwise quantities available to a weight.
struct PointValues {
  double x;
  double phi;
  double m;    // NaN unless the check needs the inactivity time
  double rai;  // NaN unless the check needs the aging intensity
};

struct Weight {
  std::string label;
  std::function<double(const PointValues&)> fn;
};

struct CheckSpec {
  TheoremId id = TheoremId::T2_1;
  std::optional<int> k;
  std::optional<double> base;                          // a > 1
  std::optional<std::pair<double, double>> linear;     // (alpha, beta)

  std::vector<Weight> lhs_weights;  // one or two
  RhsKind rhs = RhsKind::One;
  std::string rhs_label;
  SupportRequirement support = SupportRequirement::Any;
  bool needs_eit = false;
  bool needs_rai = false;

  // "T2_4(k=2)", "T3_5(alpha=1,beta=-0.5)", plain key when unparameterized.
  std::string label() const;
};

// Builds the check for one theorem. Throws ParameterError when k, a or
// (alpha, beta) is invalid for it; missing ones take the catalog defaults.
CheckSpec make_check(TheoremId id, std::optional<int> k = std::nullopt,
                     std::optional<double> base = std::nullopt,
                     std::optional<std::pair<double, double>> linear = std::nullopt);

// The 20 checks with default k, a and (alpha, beta).
std::vector<CheckSpec> theorem_catalog();

// Parses "T2_4", "T2_4:k=3", "T3_5:alpha=1,beta=0", "T2_6:a=3".
CheckSpec parse_check(std::string_view text);

// The distribution at which the check is an equality, built from `params`:
//   T2_4: {theta} -> InverseWeibull(theta / (k - 1), k - 1)
//   T4_1: {mu, b} -> Type3EV(1 / (b - mu), b), or {gamma, b}
//   T3_4: {xi, beta, b} -> LinearMIT(xi, 0, beta, b)
//   T3_5: {xi, b} -> LinearMIT(xi, alpha, beta, b) with the check's (alpha, beta)
//   T2_9/T2_10: {theta} -> ReflectedWeibull(theta, k)
// and otherwise the printed family with its own parameter keys, minus any the
// check pins (k, a). Throws ParameterError on missing or unknown keys.
DistributionModel equality_family(const CheckSpec& spec, const std::map<std::string, double>& params);

// True when `family` belongs to the check's printed equality family,
// including reparameterizations (Uniform as Power with c = 1, LinearMIT with
// beta = 0 as Type3EV, alpha = 0 as Power).
bool characterizes(const CheckSpec& spec, const FamilySpec& family);

struct ComponentResult {
  std::string label;
  quad::QuadResult result;
};

struct CheckReport {
  std::string theorem;  // CheckSpec::label()
  TheoremId id = TheoremId::T2_1;
  FamilySpec model;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;
  double gap = 0.0;
  Verdict verdict = Verdict::DomainMismatch;
  Direction direction = Direction::Ge;
  bool suspect = false;
  bool sign_definite = true;
  bool expected_equality = false;  // characterizes(spec, model)
  std::optional<double> p;         // phi m = p for the linear inactivity time class
  std::string note;
  quad::Tolerance tol;
  double eq_tol = 1e-4;
  std::vector<ComponentResult> components;

  // Converged row whose inequality runs the wrong way beyond eq_tol.
  bool direction_violated() const { return verdict == Verdict::Violated; }
};

CheckReport run_check(const CheckSpec& spec, const DistributionModel& model,
                      const quad::Tolerance& tol = {}, double eq_tol = 1e-4);

// One parameterization per family, each with a support that does not cross 0.
std::vector<FamilySpec> default_models();

// Spec-major, model-minor. `threads` <= 0 uses the hardware concurrency.
std::vector<CheckReport> run_matrix(const std::vector<DistributionModel>& models,
                                    const std::vector<CheckSpec>& specs,
                                    const quad::Tolerance& tol = {}, double eq_tol = 1e-4,
                                    int threads = 0);

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);

}  // namespace revchar
