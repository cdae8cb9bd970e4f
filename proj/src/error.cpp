#include "gapstat/error.hpp"

#include <sstream>

namespace gapstat {

namespace {

std::string out_of_range_message(std::size_t index, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "value " << value << " at index " << index << " lies outside [0, 1]";
  return os.str();
}

}  // namespace

OutOfRangeError::OutOfRangeError(std::size_t index, double value)
    : Error(out_of_range_message(index, value)), index_(index), value_(value) {}

GridMismatchError::GridMismatchError(std::size_t lhs, std::size_t rhs)
    : Error("bucket grids differ: " + std::to_string(lhs) + " vs " + std::to_string(rhs) +
            " buckets") {}

CutoffExceededError::CutoffExceededError(std::size_t n, std::size_t cutoff)
    : Error("N = " + std::to_string(n) + " exceeds the exact-law cutoff " +
            std::to_string(cutoff) + "; use the asymptotic or extended form") {}

TooFewSamplesError::TooFewSamplesError(std::size_t have, std::size_t need)
    : Error("need at least " + std::to_string(need) + " samples, got " + std::to_string(have)) {}

}  // namespace gapstat
