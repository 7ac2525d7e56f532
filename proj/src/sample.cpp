#include "revchar/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "revchar/errors.hpp"

namespace revchar {

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("sample must not be empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("sample values must be finite");
  }
  std::sort(values_.begin(), values_.end());
}

SampleSet read_sample(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    auto v = detail::parse_double(view);
    if (!v || !std::isfinite(*v)) {
      throw ParseError(lineno, "not a finite number: '" + std::string(view) + "'");
    }
    values.push_back(*v);
  }
  if (values.empty()) throw ParseError(lineno, "no sample values found");
  return SampleSet(std::move(values));
}

}  // namespace revchar
