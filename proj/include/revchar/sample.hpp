#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <vector>

namespace revchar {

// Sorted, finite, non-empty sample.
class SampleSet {
 public:
  // Sorts the values; throws std::invalid_argument on empty input or a
  // non-finite value.
  explicit SampleSet(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// One decimal value per line. Blank lines and lines starting with '#' are
// skipped; anything else that is not a finite number raises ParseError with
// the line number.
SampleSet read_sample(std::istream& in);

}  // namespace revchar
