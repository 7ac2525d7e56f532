#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "format.hpp"
#include "revchar/characterizations.hpp"
#include "revchar/distributions.hpp"
#include "revchar/empirics.hpp"
#include "revchar/errors.hpp"
#include "revchar/expectation.hpp"
#include "revchar/functionals.hpp"

namespace {

using namespace revchar;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;

struct Config {
  std::vector<std::string> families;
  std::vector<std::string> theorems;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double eq_tol = 1e-4;
  int grid = 32;
  std::uint64_t seed = 1;
  double trim = 0.05;
  std::string format;  // json for verify, csv for table
  std::string out;
  int threads = 0;
  std::string sample_path;
  std::size_t n = 100000;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_positive(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(flag) + " must be a positive number, got " + detail::format_double(v));
  }
}

void validate_common(const Config& c) {
  require_positive(c.rel_tol, "--rel-tol");
  require_positive(c.abs_tol, "--abs-tol");
  require_positive(c.eq_tol, "--eq-tol");
  if (c.grid < 8) throw ConfigError("--grid must be at least 8, got " + std::to_string(c.grid));
  if (!(c.trim >= 0.0 && c.trim < 1.0)) throw ConfigError("--trim must lie in [0, 1)");
  if (!c.format.empty() && c.format != "json" && c.format != "csv") {
    throw ConfigError("--format must be json or csv, got '" + c.format + "'");
  }
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open --out file '" + c.out + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + c.out + "'");
}

quad::Tolerance tolerance(const Config& c) {
  quad::Tolerance t;
  t.rel = c.rel_tol;
  t.abs = c.abs_tol;
  return t;
}

std::vector<DistributionModel> models_from(const Config& c) {
  std::vector<DistributionModel> out;
  if (c.families.empty()) {
    for (const auto& f : default_models()) out.emplace_back(f);
  } else {
    for (const auto& text : c.families) out.emplace_back(FamilySpec::parse(text));
  }
  return out;
}

int cmd_verify(const Config& c) {
  validate_common(c);
  const auto models = models_from(c);
  std::vector<CheckSpec> specs;
  if (c.theorems.empty()) {
    specs = theorem_catalog();
  } else {
    for (const auto& t : c.theorems) specs.push_back(parse_check(t));
  }
  const auto reports = run_matrix(models, specs, tolerance(c), c.eq_tol, c.threads);
  emit(c, c.format == "csv" ? reports_to_csv(reports) : reports_to_json(reports));

  int violations = 0;
  int failed_equalities = 0;
  for (const auto& r : reports) {
    if (r.suspect || !r.sign_definite) continue;
    if (r.verdict == Verdict::Violated) {
      ++violations;
      std::cerr << "violation: " << r.theorem << " on " << r.model.to_string() << "\n";
    } else if (r.expected_equality && r.verdict != Verdict::Equality && r.verdict != Verdict::DomainMismatch) {
      ++failed_equalities;
      std::cerr << "equality not reproduced: " << r.theorem << " on " << r.model.to_string() << " ("
                << to_string(r.verdict) << ")\n";
    }
  }
  std::cerr << reports.size() << " checks, " << violations << " violations, " << failed_equalities
            << " failed equality rows\n";
  return violations + failed_equalities == 0 ? kExitOk : kExitViolation;
}

int cmd_table(const Config& c) {
  validate_common(c);
  if (c.families.size() != 1) throw ConfigError("table needs exactly one --family");
  const DistributionModel model(FamilySpec::parse(c.families.front()));
  const bool with_rai = model.support().upper_finite();
  if (!with_rai) {
    std::cerr << "warning: " << model.spec().to_string()
              << " has no finite right endpoint; reversed aging intensity column omitted\n";
  }
  const auto tol = tolerance(c);
  const auto grid = probability_grid(model, c.grid);

  std::ostringstream out;
  if (c.format != "json") {
    out << "t,F,f,phi,m" << (with_rai ? ",rai" : "") << "\n";
    for (double t : grid) {
      const auto v = evaluate(model, t, tol);
      out << detail::format_double(t) << ',' << detail::format_double(model.cdf(t)) << ','
          << detail::format_double(model.density(t)) << ',' << detail::format_double(v.phi) << ','
          << detail::format_double(v.m);
      if (with_rai) out << ',' << detail::format_double(*v.rai);
      out << "\n";
    }
  } else {
    auto rows = nlohmann::ordered_json::array();
    for (double t : grid) {
      const auto v = evaluate(model, t, tol);
      nlohmann::ordered_json row{{"t", t}, {"F", model.cdf(t)}, {"f", model.density(t)}, {"phi", v.phi}, {"m", v.m}};
      if (with_rai) row["rai"] = *v.rai;
      rows.push_back(row);
    }
    out << rows.dump(2) << "\n";
  }
  emit(c, out.str());
  return kExitOk;
}

int cmd_identify(const Config& c) {
  validate_common(c);
  std::optional<SampleSet> sample;
  if (!c.sample_path.empty()) {
    std::ifstream in(c.sample_path);
    if (!in) throw ConfigError("cannot open sample file '" + c.sample_path + "'");
    sample.emplace(read_sample(in));
  } else if (c.families.size() == 1) {
    if (c.n == 0) throw ConfigError("--n must be positive");
    sample.emplace(sample_inverse_cdf(DistributionModel(FamilySpec::parse(c.families.front())), c.n, c.seed));
  } else {
    throw ConfigError("identify needs a sample file, or one --family to draw a synthetic sample from");
  }
  const auto report = identify(*sample, default_candidates(), c.trim);
  emit(c, ranking_to_json(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Reversed hazard rate, inactivity time and aging intensity checks"};
  app.require_subcommand(1);

  auto add_tols = [&cfg](CLI::App* sub) {
    sub->add_option("--rel-tol", cfg.rel_tol, "relative quadrature tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "absolute quadrature tolerance");
  };

  auto* verify = app.add_subcommand("verify", "run the characterization matrix");
  verify->add_option("--family", cfg.families, "family spec, e.g. power:b=1,c=2 (repeatable)");
  verify->add_option("--theorem", cfg.theorems, "check, e.g. T2_4 or T3_5:alpha=1,beta=0 (repeatable)");
  add_tols(verify);
  verify->add_option("--eq-tol", cfg.eq_tol, "relative tolerance separating equality from strictness");
  verify->add_option("--format", cfg.format, "json (default) or csv");
  verify->add_option("--out", cfg.out, "output path (default stdout)");
  verify->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");

  auto* table = app.add_subcommand("table", "tabulate F, f, phi, m and the aging intensity");
  table->add_option("--family", cfg.families, "family spec")->required();
  table->add_option("--grid", cfg.grid, "number of probability-spaced points (>= 8)");
  add_tols(table);
  table->add_option("--format", cfg.format, "csv (default) or json");
  table->add_option("--out", cfg.out, "output path (default stdout)");

  auto* ident = app.add_subcommand("identify", "rank candidate families for a sample");
  ident->add_option("sample", cfg.sample_path, "sample file, one value per line");
  ident->add_option("--family", cfg.families, "draw a synthetic sample from this family instead");
  ident->add_option("--n", cfg.n, "synthetic sample size");
  ident->add_option("--seed", cfg.seed, "synthetic sample seed");
  ident->add_option("--trim", cfg.trim, "fraction of smallest order statistics dropped");
  ident->add_option("--out", cfg.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg);
    if (table->parsed()) return cmd_table(cfg);
    if (ident->parsed()) return cmd_identify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TooFewPoints& e) {
    std::cerr << "error: TooFewPoints: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "error: " << (cfg.sample_path.empty() ? "" : cfg.sample_path + ": ") << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
