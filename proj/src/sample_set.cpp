#include "gapstat/sample_set.hpp"

#include "gapstat/error.hpp"

namespace gapstat {

SampleSet SampleSet::validate(std::vector<double> raw) {
  if (raw.empty()) throw EmptyInputError();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    // written so that NaN fails the check
    if (!(v >= 0.0 && v <= 1.0)) throw OutOfRangeError(i, v);
  }
  return SampleSet(std::move(raw));
}

}  // namespace gapstat
