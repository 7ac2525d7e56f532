#include "revchar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace revchar::quad {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Converged:
      return "Converged";
    case Status::Divergent:
      return "Divergent";
    case Status::MaxDepth:
      return "MaxDepth";
  }
  return "?";
}

namespace {

constexpr double kHalfPi = 1.57079632679489661923;
constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 8;
// Outermost non-zero term relative to the L1 mass above which the sum is
// taken as not decaying toward that endpoint.
constexpr double kTailRatio = 1e-3;
constexpr double kGrowthFactor = 1.5;
constexpr int kGrowthLevels = 5;
constexpr std::size_t kEvalBudget = 4'000'000;

// Integrand on the unit interval, given both u and c = 1 - u so that points
// next to either end keep full relative precision.
using UnitFn = std::function<double(double, double)>;

Status worst(Status a, Status b) {
  auto rank = [](Status s) {
    switch (s) {
      case Status::Converged:
        return 0;
      case Status::MaxDepth:
        return 1;
      case Status::Divergent:
        return 2;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

struct Node {
  double u;
  double c;
  double weight;  // dx/dt without the step h
  bool valid;
};

class UnitIntegrator {
 public:
  UnitIntegrator(const UnitFn& g, const Tolerance& tol) : g_(g), tol_(tol) {}

  QuadResult run() {
    QuadResult out;
    recurse(0.0, 1.0, 0, tol_.abs, out);
    out.err_estimate = std::abs(out.err_estimate);
    if (out.status == Status::Converged &&
        out.err_estimate > std::max(tol_.abs, tol_.rel * std::abs(out.value))) {
      out.status = Status::MaxDepth;
    }
    return out;
  }

 private:
  // Node at signed offset t of the panel [p, q].
  static Node node(double p, double q, double t) {
    const double hw = 0.5 * (q - p);
    if (t == 0.0) {
      const double u = p + hw;
      return {u, 1.0 - u, hw * kHalfPi, true};
    }
    const double at = std::abs(t);
    const double s = kHalfPi * std::sinh(at);
    const double e2s = std::exp(2.0 * s);
    if (!std::isfinite(e2s)) return {0, 0, 0, false};
    const double d = hw * 2.0 / (1.0 + e2s);
    const double ch = std::cosh(s);
    const double w = hw * kHalfPi * std::cosh(at) / (ch * ch);
    if (!(d > std::numeric_limits<double>::min()) || w == 0.0) return {0, 0, 0, false};
    if (t > 0) {
      const double cq = 1.0 - q;
      const double c = cq + d;
      if (q < 1.0 && c == cq) return {0, 0, 0, false};
      return {q - d, q < 1.0 ? c : d, w, true};
    }
    const double u = p + d;
    if (p > 0.0 && u == p) return {0, 0, 0, false};
    return {u, 1.0 - u, w, true};
  }

  struct Panel {
    double value = 0.0;
    double err = 0.0;
    double l1 = 0.0;
    Status status = Status::Converged;
    bool stalled = false;
  };

  Panel panel(double p, double q, double target_abs) {
    Panel res;
    double sum = 0.0;
    double abs_sum = 0.0;
    double prev = 0.0;
    int growth_run = 0;
    // Outermost non-zero term seen on each side: {|t|, |term|}.
    double tail_t[2] = {0.0, 0.0};
    double tail_v[2] = {0.0, 0.0};

    auto visit = [&](double t) -> int {
      const Node n = node(p, q, t);
      if (!n.valid) return 0;
      ++evals_;
      const double v = g_(n.u, n.c);
      if (!std::isfinite(v)) return -1;
      const double term = n.weight * v;
      sum += term;
      abs_sum += std::abs(term);
      if (term != 0.0) {
        const int side = t > 0 ? 1 : 0;
        const double at = std::abs(t);
        if (at >= tail_t[side]) {
          tail_t[side] = at;
          tail_v[side] = std::abs(term);
        }
      }
      return 1;
    };

    for (int level = 0; level <= kMaxLevel; ++level) {
      const double h = std::ldexp(1.0, -level);
      if (level == 0) {
        if (visit(0.0) < 0) {
          res.status = Status::Divergent;
          return res;
        }
      }
      for (int side = -1; side <= 1; side += 2) {
        for (long j = 0;; ++j) {
          const double t = side * (level == 0 ? double(j + 1) : (2.0 * j + 1.0) * h);
          const int r = visit(t);
          if (r < 0) {
            res.status = Status::Divergent;
            return res;
          }
          if (r == 0) break;
        }
      }
      const double est = sum * h;
      const double l1 = abs_sum * h;
      res.value = est;
      res.l1 = l1;

      // Tail test only at the ends of the full interval, and only once the
      // node spacing resolves where the integrand dies off.
      const bool open_end[2] = {p == 0.0, q == 1.0};
      for (int side = 0; side < 2 && level >= kMinLevel; ++side) {
        if (open_end[side] && l1 > 0.0 && tail_v[side] * h > kTailRatio * l1) {
          res.status = Status::Divergent;
          return res;
        }
      }
      if (level > 0 && prev != 0.0 && std::abs(est) > kGrowthFactor * std::abs(prev)) {
        if (++growth_run >= kGrowthLevels) {
          res.status = Status::Divergent;
          return res;
        }
      } else {
        growth_run = 0;
      }
      if (level >= kMinLevel) {
        const double err = std::abs(est - prev);
        if (err <= std::max(target_abs, tol_.rel * std::abs(est))) {
          res.err = err;
          return res;
        }
        res.err = err;
      }
      prev = est;
      if (evals_ > kEvalBudget) break;
    }
    res.stalled = true;
    return res;
  }

  void recurse(double p, double q, int depth, double target_abs, QuadResult& out) {
    Panel pr = panel(p, q, target_abs);
    if (pr.status == Status::Divergent) {
      out.value += pr.value;
      out.l1 += pr.l1;
      out.status = Status::Divergent;
      return;
    }
    if (!pr.stalled) {
      out.value += pr.value;
      out.err_estimate += pr.err;
      out.l1 += pr.l1;
      return;
    }
    if (depth >= tol_.max_depth || evals_ > kEvalBudget) {
      out.value += pr.value;
      out.err_estimate += pr.err;
      out.l1 += pr.l1;
      out.status = worst(out.status, Status::MaxDepth);
      return;
    }
    const double child_target = 0.5 * std::max(target_abs, tol_.rel * std::abs(pr.value));
    const double m = p + 0.5 * (q - p);
    recurse(p, m, depth + 1, child_target, out);
    if (out.status == Status::Divergent) return;
    recurse(m, q, depth + 1, child_target, out);
  }

  const UnitFn& g_;
  Tolerance tol_;
  std::size_t evals_ = 0;
};

// Far out on an infinite range, products like x^2 e^x evaluate to inf * 0.
// A NaN there is that overflow meeting an underflow and counts as 0; an
// infinite value still signals divergence.
constexpr double kFarTail = 1e100;

double far_tail_value(const ScalarFn& f, double x, double distance) {
  const double v = f(x);
  if (std::isnan(v) && distance > kFarTail) return 0.0;
  return v;
}

void check_tolerance(const Tolerance& tol) {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0) || tol.max_depth < 0) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
}

}  // namespace

QuadResult integrate_finite(const ScalarFn& f, double lo, double hi, const Tolerance& tol) {
  check_tolerance(tol);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("integrate_finite needs finite lo < hi");
  }
  const double width = hi - lo;
  const UnitFn g = [&](double u, double c) {
    const double x = u <= 0.5 ? lo + width * u : hi - width * c;
    if (!(x > lo && x < hi)) return 0.0;
    return width * f(x);
  };
  return UnitIntegrator(g, tol).run();
}

QuadResult integrate_lower_unbounded(const ScalarFn& f, double hi, const Tolerance& tol) {
  check_tolerance(tol);
  if (!std::isfinite(hi)) throw std::invalid_argument("integrate_lower_unbounded needs finite hi");
  const UnitFn g = [&](double u, double c) {
    const double x = hi - u / c;
    if (!(x < hi) || !std::isfinite(x)) return 0.0;
    const double v = far_tail_value(f, x, u / c);
    if (v == 0.0) return 0.0;
    return v / c / c;
  };
  return UnitIntegrator(g, tol).run();
}

QuadResult integrate_upper_unbounded(const ScalarFn& f, double lo, const Tolerance& tol) {
  check_tolerance(tol);
  if (!std::isfinite(lo)) throw std::invalid_argument("integrate_upper_unbounded needs finite lo");
  const UnitFn g = [&](double u, double c) {
    const double x = lo + u / c;
    if (!(x > lo) || !std::isfinite(x)) return 0.0;
    const double v = far_tail_value(f, x, u / c);
    if (v == 0.0) return 0.0;
    return v / c / c;
  };
  return UnitIntegrator(g, tol).run();
}

QuadResult integrate(const ScalarFn& f, double lo, double hi, const Tolerance& tol) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) throw std::invalid_argument("doubly infinite range is not supported");
  if (lo_inf) return integrate_lower_unbounded(f, hi, tol);
  if (hi_inf) return integrate_upper_unbounded(f, lo, tol);
  return integrate_finite(f, lo, hi, tol);
}

}  // namespace revchar::quad
