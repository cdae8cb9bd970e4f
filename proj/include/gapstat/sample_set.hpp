#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gapstat {

/// A validated multiset of observations on the closed unit interval.
///
/// Values are kept verbatim: no sorting, no deduplication. The interval
/// endpoints {0, 1} are *not* stored; gap operations add them on the fly, so a
/// set of `count()` observations always induces `count() + 1` gaps.
class SampleSet {
 public:
  /// Validates `raw`. Throws EmptyInputError or OutOfRangeError (NaN counts as
  /// out of range).
  static SampleSet validate(std::vector<double> raw);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t count() const noexcept { return values_.size(); }
  std::size_t n_gaps() const noexcept { return values_.size() + 1; }

 private:
  explicit SampleSet(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

inline SampleSet validate_samples(std::vector<double> raw) {
  return SampleSet::validate(std::move(raw));
}

}  // namespace gapstat
