#include "revchar/characterizations.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "format.hpp"
#include "revchar/errors.hpp"
#include "revchar/expectation.hpp"
#include "revchar/functionals.hpp"
#include "revchar/moments.hpp"

namespace revchar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TheoremInfo {
  TheoremId id;
  std::string_view key;
};

constexpr TheoremInfo kTheorems[] = {
    {TheoremId::T2_1, "T2_1"},   {TheoremId::T2_2, "T2_2"}, {TheoremId::T2_4, "T2_4"},
    {TheoremId::T2_5, "T2_5"},   {TheoremId::T2_6, "T2_6"}, {TheoremId::T2_7, "T2_7"},
    {TheoremId::T2_8, "T2_8"},   {TheoremId::T2_9, "T2_9"}, {TheoremId::T2_10, "T2_10"},
    {TheoremId::T3_1, "T3_1"},   {TheoremId::T3_2, "T3_2"}, {TheoremId::T3_3, "T3_3"},
    {TheoremId::T3_4, "T3_4"},   {TheoremId::T3_5, "T3_5"}, {TheoremId::T3_6, "T3_6"},
    {TheoremId::T3_7, "T3_7"},   {TheoremId::T4_1, "T4_1"}, {TheoremId::T4_2, "T4_2"},
    {TheoremId::T4_3, "T4_3"},   {TheoremId::T4_4, "T4_4"},
};

bool uses_k(TheoremId id) {
  switch (id) {
    case TheoremId::T2_4:
    case TheoremId::T2_8:
    case TheoremId::T2_10:
    case TheoremId::T3_3:
    case TheoremId::T4_2:
    case TheoremId::T4_4:
      return true;
    default:
      return false;
  }
}

bool uses_base(TheoremId id) { return id == TheoremId::T2_6 || id == TheoremId::T3_7; }

int default_k(TheoremId id) {
  switch (id) {
    case TheoremId::T2_10:
      return 3;
    case TheoremId::T4_2:
    case TheoremId::T4_4:
      return 1;
    default:
      return 2;
  }
}

std::string pow_label(int k) { return k == 1 ? "x" : "x^" + std::to_string(k); }

std::string num(double v) { return detail::format_double(v); }

bool close_rel(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

bool type3ev_like(const FamilySpec& f) {
  return f.family == Family::Type3EV || (f.family == Family::LinearMIT && f.param("beta") == 0.0);
}

bool power_like(const FamilySpec& f) {
  return f.family == Family::Power || f.family == Family::Uniform ||
         (f.family == Family::LinearMIT && f.param("alpha") == 0.0 && f.param("beta") != 0.0);
}

bool support_ok(SupportRequirement r, const SupportInterval& s) {
  switch (r) {
    case SupportRequirement::Any:
      return true;
    case SupportRequirement::Nonnegative:
      return s.lower >= 0.0;
    case SupportRequirement::FiniteB:
      return s.upper_finite();
  }
  return false;
}

bool straddles_zero(const SupportInterval& s) { return s.lower < 0.0 && s.upper > 0.0; }

// alpha + beta x keeps one strict sign on the open support.
bool linear_sign_definite(double alpha, double beta, const SupportInterval& s) {
  auto sign_at = [&](double x) -> int {
    if (std::isinf(x)) return beta == 0.0 ? (alpha > 0) - (alpha < 0) : ((beta * x > 0) ? 1 : -1);
    const double v = alpha + beta * x;
    return (v > 0) - (v < 0);
  };
  const int lo = sign_at(s.lower);
  const int hi = sign_at(s.upper);
  // A zero at an endpoint is allowed; only an interior crossing breaks it.
  if (lo == 0) return hi != 0;
  if (hi == 0) return true;
  return lo == hi;
}

bool sign_definite_for(const CheckSpec& spec, const SupportInterval& s) {
  const int k = spec.k.value_or(0);
  switch (spec.id) {
    case TheoremId::T2_7:
    case TheoremId::T2_9:
    case TheoremId::T3_4:
      return !straddles_zero(s);
    case TheoremId::T2_8:
    case TheoremId::T2_10:
    case TheoremId::T4_2:
    case TheoremId::T4_4:
      return k % 2 == 0 || !straddles_zero(s);
    case TheoremId::T3_5:
      return linear_sign_definite(spec.linear->first, spec.linear->second, s);
    default:
      return true;
  }
}

std::optional<double> linear_class_p(const CheckSpec& spec, const FamilySpec& f) {
  if (spec.id != TheoremId::T3_4 && spec.id != TheoremId::T3_5) return std::nullopt;
  if (f.family == Family::LinearMIT) return 1.0 - f.param("xi") * f.param("beta");
  if (f.family == Family::Power) return f.param("c") / (f.param("c") + 1.0);
  if (f.family == Family::Uniform) return 0.5;
  return std::nullopt;
}

std::map<std::string, double> take_params(const std::map<std::string, double>& params,
                                          std::initializer_list<std::string_view> keys,
                                          const std::string& who) {
  std::map<std::string, double> out;
  for (const auto& [key, value] : params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParameterError(who + ": unknown parameter '" + key + "'");
    }
    out[key] = value;
  }
  for (auto key : keys) {
    if (!out.count(std::string(key))) {
      throw ParameterError(who + ": missing parameter '" + std::string(key) + "'");
    }
  }
  return out;
}

}  // namespace

std::string_view theorem_key(TheoremId id) {
  for (const auto& t : kTheorems) {
    if (t.id == id) return t.key;
  }
  return "?";
}

std::optional<TheoremId> theorem_from_key(std::string_view key) {
  std::string upper(key);
  for (auto& c : upper) c = char(std::toupper(static_cast<unsigned char>(c)));
  std::replace(upper.begin(), upper.end(), '.', '_');
  for (const auto& t : kTheorems) {
    if (t.key == upper) return t.id;
  }
  return std::nullopt;
}

bool is_suspect(TheoremId id) {
  return id == TheoremId::T3_2 || id == TheoremId::T3_3 || id == TheoremId::T3_6 ||
         id == TheoremId::T3_7;
}

std::string_view to_string(SupportRequirement r) {
  switch (r) {
    case SupportRequirement::Any:
      return "Any";
    case SupportRequirement::Nonnegative:
      return "Nonnegative";
    case SupportRequirement::FiniteB:
      return "FiniteB";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equality:
      return "Equality";
    case Verdict::StrictInequality:
      return "StrictInequality";
    case Verdict::Violated:
      return "Violated";
    case Verdict::Divergent:
      return "Divergent";
    case Verdict::Unresolved:
      return "Unresolved";
    case Verdict::DomainMismatch:
      return "DomainMismatch";
  }
  return "?";
}

std::string_view to_string(Direction d) { return d == Direction::Ge ? "ge" : "le"; }

std::string CheckSpec::label() const {
  std::string out(theorem_key(id));
  if (k) out += "(k=" + std::to_string(*k) + ")";
  if (base) out += "(a=" + num(*base) + ")";
  if (linear) out += "(alpha=" + num(linear->first) + ",beta=" + num(linear->second) + ")";
  return out;
}

CheckSpec make_check(TheoremId id, std::optional<int> k, std::optional<double> base,
                     std::optional<std::pair<double, double>> linear) {
  const std::string key(theorem_key(id));
  CheckSpec s;
  s.id = id;
  if (uses_k(id)) {
    s.k = k.value_or(default_k(id));
  } else if (k) {
    throw ParameterError(key + " takes no k");
  }
  if (uses_base(id)) {
    s.base = base.value_or(2.0);
    if (!(*s.base > 1.0) || !std::isfinite(*s.base)) throw ParameterError(key + ": base a must be > 1");
  } else if (base) {
    throw ParameterError(key + " takes no base a");
  }
  if (id == TheoremId::T3_5) {
    s.linear = linear.value_or(std::pair{1.0, -0.5});
    const auto [al, be] = *s.linear;
    if (!std::isfinite(al) || !std::isfinite(be) || (al == 0.0 && be == 0.0)) {
      throw ParameterError(key + ": alpha and beta must be finite and not both zero");
    }
  } else if (linear) {
    throw ParameterError(key + " takes no (alpha, beta)");
  }

  const int kk = s.k.value_or(0);
  switch (id) {
    case TheoremId::T2_4:
      if (kk < 2) throw ParameterError(key + ": k must be >= 2");
      break;
    case TheoremId::T2_8:
    case TheoremId::T3_3:
      if (kk < 1) throw ParameterError(key + ": k must be >= 1");
      break;
    case TheoremId::T2_10:
      if (kk < 1 || kk % 2 == 0) throw ParameterError(key + ": k must be an odd positive integer");
      break;
    case TheoremId::T4_2:
    case TheoremId::T4_4:
      if (kk < 0) throw ParameterError(key + ": k must be >= 0");
      break;
    default:
      break;
  }

  auto xk = [kk](double x) { return std::pow(x, kk); };
  const double a = s.base.value_or(2.0);
  const std::string xs = pow_label(kk);
  auto pair = [&s](std::string l1, std::function<double(const PointValues&)> f1, std::string l2,
                   std::function<double(const PointValues&)> f2) {
    s.lhs_weights = {{std::move(l1), std::move(f1)}, {std::move(l2), std::move(f2)}};
  };

  switch (id) {
    case TheoremId::T2_1:
      pair("1/phi", [](const PointValues& v) { return 1.0 / v.phi; }, "phi",
           [](const PointValues& v) { return v.phi; });
      break;
    case TheoremId::T2_2:
      s.support = SupportRequirement::Nonnegative;
      pair("1/(x*phi)", [](const PointValues& v) { return 1.0 / (v.x * v.phi); }, "x*phi",
           [](const PointValues& v) { return v.x * v.phi; });
      break;
    case TheoremId::T2_4:
      s.support = SupportRequirement::Nonnegative;
      pair("1/(" + xs + "*phi)", [xk](const PointValues& v) { return 1.0 / (xk(v.x) * v.phi); },
           xs + "*phi", [xk](const PointValues& v) { return xk(v.x) * v.phi; });
      break;
    case TheoremId::T2_5:
      pair("1/(e^x*phi)", [](const PointValues& v) { return std::exp(-v.x) / v.phi; }, "e^x*phi",
           [](const PointValues& v) { return std::exp(v.x) * v.phi; });
      break;
    case TheoremId::T2_6:
      pair("1/(a^x*phi)", [a](const PointValues& v) { return std::pow(a, -v.x) / v.phi; }, "a^x*phi",
           [a](const PointValues& v) { return std::pow(a, v.x) * v.phi; });
      break;
    case TheoremId::T2_7:
      s.support = SupportRequirement::FiniteB;
      s.rhs = RhsKind::MomentBound;
      s.rhs_label = "2/(eta^2-(1+c^2))";
      s.lhs_weights = {{"x*phi", [](const PointValues& v) { return v.x * v.phi; }}};
      break;
    case TheoremId::T2_8:
      s.support = SupportRequirement::FiniteB;
      s.rhs = RhsKind::MomentBound;
      s.rhs_label = "(k+1)*mu_k^2/(b^(k+1)-mu_(k+1))";
      s.lhs_weights = {{xs + "*phi", [xk](const PointValues& v) { return xk(v.x) * v.phi; }}};
      break;
    case TheoremId::T2_9:
      s.support = SupportRequirement::FiniteB;
      s.rhs = RhsKind::MomentBound;
      s.rhs_label = "2/(b^2-(1+c^2)*mu^2)";
      s.lhs_weights = {{"phi/x", [](const PointValues& v) { return v.phi / v.x; }}};
      break;
    case TheoremId::T2_10:
      s.support = SupportRequirement::FiniteB;
      s.rhs = RhsKind::MomentBound;
      s.rhs_label = "(k+1)/(b^(k+1)-mu_(k+1))";
      s.lhs_weights = {{"phi/" + xs, [xk](const PointValues& v) { return v.phi / xk(v.x); }}};
      break;
    case TheoremId::T3_1:
      pair("1/m", [](const PointValues& v) { return 1.0 / v.m; }, "m",
           [](const PointValues& v) { return v.m; });
      break;
    case TheoremId::T3_2:
      s.support = SupportRequirement::Nonnegative;
      pair("1/(x*m)", [](const PointValues& v) { return 1.0 / (v.x * v.m); }, "x*m",
           [](const PointValues& v) { return v.x * v.m; });
      break;
    case TheoremId::T3_3:
      s.support = SupportRequirement::Nonnegative;
      pair("1/(" + xs + "*m)", [xk](const PointValues& v) { return 1.0 / (xk(v.x) * v.m); },
           xs + "*m", [xk](const PointValues& v) { return xk(v.x) * v.m; });
      break;
    case TheoremId::T3_4:
      pair("m/x", [](const PointValues& v) { return v.m / v.x; }, "x/m",
           [](const PointValues& v) { return v.x / v.m; });
      break;
    case TheoremId::T3_5: {
      const auto [al, be] = *s.linear;
      pair("m/(alpha+beta*x)", [al, be](const PointValues& v) { return v.m / (al + be * v.x); },
           "(alpha+beta*x)/m", [al, be](const PointValues& v) { return (al + be * v.x) / v.m; });
      break;
    }
    case TheoremId::T3_6:
      pair("1/(e^x*m)", [](const PointValues& v) { return std::exp(-v.x) / v.m; }, "e^x*m",
           [](const PointValues& v) { return std::exp(v.x) * v.m; });
      break;
    case TheoremId::T3_7:
      pair("1/(a^x*m)", [a](const PointValues& v) { return std::pow(a, -v.x) / v.m; }, "a^x*m",
           [a](const PointValues& v) { return std::pow(a, v.x) * v.m; });
      break;
    case TheoremId::T4_1:
      pair("m/phi", [](const PointValues& v) { return v.m / v.phi; }, "phi/m",
           [](const PointValues& v) { return v.phi / v.m; });
      break;
    case TheoremId::T4_2:
      s.rhs = RhsKind::MuKSquared;
      s.rhs_label = "mu_k^2";
      pair(xs + "*m/phi", [xk](const PointValues& v) { return xk(v.x) * v.m / v.phi; },
           xs + "*phi/m", [xk](const PointValues& v) { return xk(v.x) * v.phi / v.m; });
      break;
    case TheoremId::T4_3:
      s.support = SupportRequirement::FiniteB;
      pair("rai/phi", [](const PointValues& v) { return v.rai / v.phi; }, "phi/rai",
           [](const PointValues& v) { return v.phi / v.rai; });
      break;
    case TheoremId::T4_4:
      s.support = SupportRequirement::FiniteB;
      s.rhs = RhsKind::MuKSquared;
      s.rhs_label = "mu_k^2";
      pair(xs + "*rai/phi", [xk](const PointValues& v) { return xk(v.x) * v.rai / v.phi; },
           xs + "*phi/rai", [xk](const PointValues& v) { return xk(v.x) * v.phi / v.rai; });
      break;
  }
  if (s.rhs == RhsKind::One) s.rhs_label = "1";
  s.needs_eit = id == TheoremId::T3_1 || id == TheoremId::T3_2 || id == TheoremId::T3_3 ||
                id == TheoremId::T3_4 || id == TheoremId::T3_5 || id == TheoremId::T3_6 ||
                id == TheoremId::T3_7 || id == TheoremId::T4_1 || id == TheoremId::T4_2;
  s.needs_rai = id == TheoremId::T4_3 || id == TheoremId::T4_4;
  return s;
}

std::vector<CheckSpec> theorem_catalog() {
  std::vector<CheckSpec> out;
  for (auto id : kAllTheorems) out.push_back(make_check(id));
  return out;
}

CheckSpec parse_check(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  auto id = theorem_from_key(head);
  if (!id) throw ParameterError("unknown theorem '" + std::string(head) + "'");
  std::optional<int> k;
  std::optional<double> base;
  std::optional<double> alpha, beta;
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParameterError("malformed theorem parameter '" + item + "'");
      std::string name = item.substr(0, eq);
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return char(std::tolower(c)); });
      const auto value = detail::parse_double(std::string_view(item).substr(eq + 1));
      if (!value) throw ParameterError("theorem parameter '" + name + "' is not a number");
      if (name == "k") {
        if (*value != std::floor(*value)) throw ParameterError("k must be an integer");
        k = int(*value);
      } else if (name == "a") {
        base = *value;
      } else if (name == "alpha") {
        alpha = *value;
      } else if (name == "beta") {
        beta = *value;
      } else {
        throw ParameterError("unknown theorem parameter '" + name + "'");
      }
    }
  }
  std::optional<std::pair<double, double>> linear;
  if (alpha || beta) {
    if (!alpha || !beta) throw ParameterError("T3_5 needs both alpha and beta");
    linear = std::pair{*alpha, *beta};
  }
  return make_check(*id, k, base, linear);
}

DistributionModel equality_family(const CheckSpec& spec, const std::map<std::string, double>& params) {
  const std::string who = "equality_family(" + spec.label() + ")";
  const int k = spec.k.value_or(0);
  switch (spec.id) {
    case TheoremId::T2_1:
    case TheoremId::T2_7:
    case TheoremId::T2_8:
    case TheoremId::T3_1:
    case TheoremId::T4_2:
    case TheoremId::T4_3:
    case TheoremId::T4_4: {
      auto p = take_params(params, {"gamma", "b"}, who);
      return DistributionModel(FamilySpec::type3ev(p["gamma"], p["b"]));
    }
    case TheoremId::T4_1: {
      if (params.count("mu")) {
        auto p = take_params(params, {"mu", "b"}, who);
        if (!(p["b"] > p["mu"])) throw ParameterError(who + ": needs b > mu");
        return DistributionModel(FamilySpec::type3ev(1.0 / (p["b"] - p["mu"]), p["b"]));
      }
      auto p = take_params(params, {"gamma", "b"}, who);
      return DistributionModel(FamilySpec::type3ev(p["gamma"], p["b"]));
    }
    case TheoremId::T2_2: {
      auto p = take_params(params, {"b", "c"}, who);
      return DistributionModel(FamilySpec::power(p["b"], p["c"]));
    }
    case TheoremId::T2_4: {
      auto p = take_params(params, {"theta"}, who);
      if (!(p["theta"] > 0)) throw ParameterError(who + ": theta must be > 0");
      return DistributionModel(FamilySpec::inverse_weibull(p["theta"] / (k - 1), k - 1));
    }
    case TheoremId::T2_5: {
      auto p = take_params(params, {"alpha", "b"}, who);
      return DistributionModel(FamilySpec::trunc_ev_power(p["alpha"], p["b"]));
    }
    case TheoremId::T2_6: {
      auto p = take_params(params, {"theta", "b"}, who);
      return DistributionModel(FamilySpec::base_a_linked_rhr(p["theta"], *spec.base, p["b"]));
    }
    case TheoremId::T2_9: {
      auto p = take_params(params, {"theta"}, who);
      return DistributionModel(FamilySpec::reflected_weibull(p["theta"], 1));
    }
    case TheoremId::T2_10: {
      auto p = take_params(params, {"theta"}, who);
      return DistributionModel(FamilySpec::reflected_weibull(p["theta"], k));
    }
    case TheoremId::T3_2: {
      auto p = take_params(params, {"theta", "b"}, who);
      return DistributionModel(FamilySpec::finite_range(p["theta"], p["b"], 1));
    }
    case TheoremId::T3_3: {
      auto p = take_params(params, {"theta", "b"}, who);
      return DistributionModel(FamilySpec::finite_range(p["theta"], p["b"], k));
    }
    case TheoremId::T3_4: {
      auto p = take_params(params, {"xi", "beta", "b"}, who);
      if (p["beta"] == 0.0) throw ParameterError(who + ": beta must be non-zero");
      return DistributionModel(FamilySpec::linear_mit(p["xi"], 0.0, p["beta"], p["b"]));
    }
    case TheoremId::T3_5: {
      auto p = take_params(params, {"xi", "b"}, who);
      return DistributionModel(
          FamilySpec::linear_mit(p["xi"], spec.linear->first, spec.linear->second, p["b"]));
    }
    case TheoremId::T3_6: {
      auto p = take_params(params, {"theta", "b"}, who);
      return DistributionModel(FamilySpec::exp_linked_eit(p["theta"], p["b"]));
    }
    case TheoremId::T3_7: {
      auto p = take_params(params, {"gamma", "delta", "b"}, who);
      return DistributionModel(
          FamilySpec::base_a_linked_eit(p["gamma"], p["delta"], *spec.base, p["b"]));
    }
  }
  throw ParameterError(who + ": unsupported theorem");
}

bool characterizes(const CheckSpec& spec, const FamilySpec& f) {
  const int k = spec.k.value_or(0);
  switch (spec.id) {
    case TheoremId::T2_1:
    case TheoremId::T2_7:
    case TheoremId::T2_8:
    case TheoremId::T3_1:
    case TheoremId::T4_1:
    case TheoremId::T4_2:
    case TheoremId::T4_3:
    case TheoremId::T4_4:
      return type3ev_like(f);
    case TheoremId::T2_2:
    case TheoremId::T3_4:
      return power_like(f);
    case TheoremId::T2_4:
      return f.family == Family::InverseWeibull && f.param("delta") == double(k - 1);
    case TheoremId::T2_5:
      return f.family == Family::TruncEVPower ||
             (f.family == Family::BaseALinkedRHR && close_rel(f.param("a"), std::numbers::e));
    case TheoremId::T2_6:
      return (f.family == Family::BaseALinkedRHR && close_rel(f.param("a"), *spec.base)) ||
             (f.family == Family::TruncEVPower && close_rel(*spec.base, std::numbers::e));
    case TheoremId::T2_9:
      return f.family == Family::ReflectedWeibull && f.param("k") == 1.0;
    case TheoremId::T2_10:
      return f.family == Family::ReflectedWeibull && f.param("k") == double(k);
    case TheoremId::T3_2:
      return f.family == Family::FiniteRange && f.param("k") == 1.0;
    case TheoremId::T3_3:
      return f.family == Family::FiniteRange && f.param("k") == double(k);
    case TheoremId::T3_5: {
      const auto [al, be] = *spec.linear;
      if (be == 0.0 && type3ev_like(f)) return true;
      if (al == 0.0 && power_like(f)) return f.family != Family::LinearMIT || f.param("beta") * be > 0;
      if (f.family != Family::LinearMIT) return false;
      const double am = f.param("alpha");
      const double bm = f.param("beta");
      return close_rel(am * be, bm * al) && am * al >= 0.0 && bm * be >= 0.0;
    }
    case TheoremId::T3_6:
      return f.family == Family::ExpLinkedEIT;
    case TheoremId::T3_7:
      return f.family == Family::BaseALinkedEIT && close_rel(f.param("a"), *spec.base);
  }
  return false;
}

CheckReport run_check(const CheckSpec& spec, const DistributionModel& model, const quad::Tolerance& tol,
                      double eq_tol) {
  CheckReport r;
  r.theorem = spec.label();
  r.id = spec.id;
  r.model = model.spec();
  r.tol = tol;
  r.eq_tol = eq_tol;
  r.suspect = is_suspect(spec.id);
  r.lhs = r.rhs = r.gap = kNaN;
  r.p = linear_class_p(spec, model.spec());
  const auto& s = model.support();

  if (!support_ok(spec.support, s)) {
    r.verdict = Verdict::DomainMismatch;
    r.note = spec.support == SupportRequirement::Nonnegative ? "support is not nonnegative"
                                                             : "support has no finite right endpoint";
    return r;
  }
  r.sign_definite = sign_definite_for(spec, s);
  r.expected_equality = characterizes(spec, model.spec());

  // Right-hand side first: a divergent moment settles the row.
  const int k = spec.k.value_or(0);
  double rhs = 1.0;
  try {
    switch (spec.rhs) {
      case RhsKind::One:
        break;
      case RhsKind::MuKSquared: {
        const double mk = k == 0 ? 1.0 : raw_moment(model, k, tol);
        rhs = mk * mk;
        break;
      }
      case RhsKind::MomentBound: {
        const double b = s.upper;
        double divisor = 0.0;
        if (spec.id == TheoremId::T2_7) {
          const MomentSet ms = moment_set(model, 2, tol);
          if (!ms.eta || !ms.c_ratio) {
            r.verdict = Verdict::DomainMismatch;
            r.note = "mean is zero, eta and c undefined";
            return r;
          }
          divisor = *ms.eta * *ms.eta - (1.0 + *ms.c_ratio * *ms.c_ratio);
          rhs = 2.0 / divisor;
        } else if (spec.id == TheoremId::T2_9) {
          const MomentSet ms = moment_set(model, 2, tol);
          divisor = b * b - (ms.sigma2 + ms.mu * ms.mu);
          rhs = 2.0 / divisor;
        } else {
          const double mk1 = raw_moment(model, k + 1, tol);
          divisor = std::pow(b, k + 1) - mk1;
          if (spec.id == TheoremId::T2_8) {
            const double mk = raw_moment(model, k, tol);
            rhs = (k + 1) * mk * mk / divisor;
          } else {
            rhs = (k + 1) / divisor;
          }
        }
        r.direction = divisor < 0.0 ? Direction::Le : Direction::Ge;
        break;
      }
    }
  } catch (const DivergentMoment& e) {
    r.verdict = Verdict::Divergent;
    r.note = e.what();
    return r;
  }
  if (!std::isfinite(rhs) || rhs == 0.0) {
    r.verdict = Verdict::DomainMismatch;
    r.note = "bound is zero or undefined";
    return r;
  }
  r.rhs = rhs;

  bool inner_failed = false;
  const bool need_m = spec.needs_eit;
  const bool need_rai = spec.needs_rai;
  const bool closed_m = model.has_closed_eit();
  auto point = [&](double x) -> std::optional<PointValues> {
    const double F = model.cdf(x);
    if (!(F >= std::numeric_limits<double>::min())) return std::nullopt;
    PointValues v{x, 0.0, kNaN, kNaN};
    auto phi = model.closed_rhr(x);
    v.phi = phi ? *phi : model.density(x) / F;
    if (need_m) {
      if (closed_m) {
        v.m = *model.closed_eit(x);
      } else {
        const auto q = cdf_cumulative_integral(model, x, tol);
        if (!q.converged()) {
          inner_failed = true;
          return PointValues{x, kNaN, kNaN, kNaN};
        }
        v.m = q.value / F;
      }
    }
    if (need_rai) {
      auto closed = model.closed_rai(x);
      if (closed) {
        v.rai = *closed;
      } else {
        const double lnF = model.log_cdf(x);
        v.rai = std::abs(lnF) < 1e-12 ? 1.0 : (x - s.upper) * v.phi / lnF;
      }
    }
    return v;
  };

  std::vector<double> breakpoints;
  if (spec.linear && spec.linear->second != 0.0) {
    breakpoints.push_back(-spec.linear->first / spec.linear->second);
  }

  double lhs = 1.0;
  bool diverged = false;
  bool unresolved = false;
  for (const auto& w : spec.lhs_weights) {
    const auto& fn = w.fn;
    const auto q = expectation({model, [&](double x) {
                                  const auto v = point(x);
                                  return v ? fn(*v) : 0.0;
                                },
                                breakpoints},
                               tol);
    r.components.push_back({"E[" + w.label + "]", q});
    if (inner_failed) {
      unresolved = true;
      break;
    }
    if (q.status == quad::Status::Divergent) {
      diverged = true;
      break;
    }
    if (q.status == quad::Status::MaxDepth) unresolved = true;
    lhs *= q.value;
  }
  if (diverged) {
    r.verdict = Verdict::Divergent;
    r.rhs = kNaN;
    return r;
  }
  if (inner_failed) {
    r.verdict = Verdict::Unresolved;
    r.note = "inner inactivity-time quadrature did not converge";
    return r;
  }

  r.lhs = lhs;
  r.gap = lhs - rhs;
  r.ratio = lhs / rhs;
  if (unresolved) {
    r.verdict = Verdict::Unresolved;
  } else if (std::abs(*r.ratio - 1.0) <= eq_tol) {
    r.verdict = Verdict::Equality;
  } else if (*r.ratio - 1.0 > eq_tol) {
    r.verdict = Verdict::StrictInequality;
  } else {
    r.verdict = Verdict::Violated;
  }
  return r;
}

std::vector<FamilySpec> default_models() {
  return {
      FamilySpec::type3ev(1.0, 0.0),
      FamilySpec::power(1.0, 2.0),
      FamilySpec::inverse_weibull(1.0, 1.0),
      FamilySpec::trunc_ev_power(1.0, 0.0),
      FamilySpec::base_a_linked_rhr(1.0, 2.0, 0.0),
      FamilySpec::reflected_weibull(0.5, 1),
      FamilySpec::finite_range(0.5, 1.0, 1),
      FamilySpec::linear_mit(1.0, 1.0, -0.5, 0.0),
      FamilySpec::exp_linked_eit(1.0, 0.0),
      FamilySpec::base_a_linked_eit(1.0, 1.0, 2.0, 0.0),
      FamilySpec::uniform(1.0),
  };
}

std::vector<CheckReport> run_matrix(const std::vector<DistributionModel>& models,
                                    const std::vector<CheckSpec>& specs, const quad::Tolerance& tol,
                                    double eq_tol, int threads) {
  const std::size_t cells = models.size() * specs.size();
  std::vector<CheckReport> out(cells);
  auto work = [&](std::size_t i) {
    out[i] = run_check(specs[i / models.size()], models[i % models.size()], tol, eq_tol);
  };
  std::size_t n = threads > 0 ? std::size_t(threads) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, cells);
  if (n <= 1) {
    for (std::size_t i = 0; i < cells; ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["family"] = std::string(family_name(r.model.family));
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& key : family_keys(r.model.family)) {
      auto it = r.model.params.find(key);
      if (it != r.model.params.end()) params[key] = it->second;
    }
    j["params"] = params;
    j["lhs"] = number_or_null(r.lhs);
    j["rhs"] = number_or_null(r.rhs);
    j["ratio"] = r.ratio ? number_or_null(*r.ratio) : nullptr;
    j["gap"] = number_or_null(r.gap);
    j["verdict"] = std::string(to_string(r.verdict));
    j["direction"] = std::string(to_string(r.direction));
    nlohmann::ordered_json errs = nlohmann::ordered_json::object();
    nlohmann::ordered_json statuses = nlohmann::ordered_json::object();
    for (const auto& c : r.components) {
      errs[c.label] = number_or_null(c.result.err_estimate);
      statuses[c.label] = std::string(quad::to_string(c.result.status));
    }
    j["err_estimates"] = errs;
    j["statuses"] = statuses;
    j["suspect"] = r.suspect;
    j["sign_definite"] = r.sign_definite;
    j["expected_equality"] = r.expected_equality;
    j["p"] = r.p ? nlohmann::ordered_json(*r.p) : nullptr;
    j["tolerances"] = {{"rel", r.tol.rel}, {"abs", r.tol.abs}, {"eq_tol", r.eq_tol}};
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "theorem,family,params,lhs,rhs,ratio,gap,verdict,direction,err_estimates,suspect,"
         "sign_definite,expected_equality,p\n";
  auto field = [](double v) { return std::isfinite(v) ? num(v) : std::string(); };
  for (const auto& r : reports) {
    std::string params;
    for (const auto& key : family_keys(r.model.family)) {
      auto it = r.model.params.find(key);
      if (it == r.model.params.end()) continue;
      if (!params.empty()) params += ';';
      params += key + "=" + num(it->second);
    }
    std::string errs;
    for (const auto& c : r.components) {
      if (!errs.empty()) errs += ';';
      errs += field(c.result.err_estimate);
    }
    out << '"' << r.theorem << "\"," << family_name(r.model.family) << ',' << params << ','
        << field(r.lhs) << ',' << field(r.rhs) << ',' << (r.ratio ? field(*r.ratio) : "") << ','
        << field(r.gap) << ',' << to_string(r.verdict) << ',' << to_string(r.direction) << ',' << errs
        << ',' << (r.suspect ? "true" : "false") << ',' << (r.sign_definite ? "true" : "false") << ','
        << (r.expected_equality ? "true" : "false") << ',' << (r.p ? num(*r.p) : "") << '\n';
  }
  return out.str();
}

}  // namespace revchar
