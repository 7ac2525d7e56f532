#include "revchar/moments.hpp"

#include <cmath>

#include "revchar/errors.hpp"
#include "revchar/expectation.hpp"

namespace revchar {

double raw_moment(const DistributionModel& model, int k, const quad::Tolerance& tol) {
  if (k < 0) throw std::invalid_argument("moment order must be non-negative");
  if (k == 0) return 1.0;
  if (auto closed = model.closed_raw_moment(k)) return *closed;
  const auto r = expectation({model, [k](double x) { return std::pow(x, k); }}, tol);
  if (!r.converged()) {
    throw DivergentMoment(model.spec().to_string() + ": moment of order " + std::to_string(k) +
                          " is " + std::string(quad::to_string(r.status)));
  }
  return r.value;
}

double MomentSet::at(int k) const {
  auto it = raw.find(k);
  if (it == raw.end()) throw std::out_of_range("moment order not computed");
  return it->second;
}

MomentSet moment_set(const DistributionModel& model, int max_k, const quad::Tolerance& tol) {
  MomentSet m;
  const int top = std::max(max_k, 2);
  for (int k = 0; k <= top; ++k) m.raw[k] = raw_moment(model, k, tol);
  m.mu = m.raw.at(1);
  m.sigma2 = m.raw.at(2) - m.mu * m.mu;
  if (m.mu != 0.0) {
    m.eta = model.support().upper / m.mu;
    m.c_ratio = std::sqrt(std::max(m.sigma2, 0.0)) / m.mu;
  }
  return m;
}

}  // namespace revchar
