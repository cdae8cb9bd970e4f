#pragma once

// Max-gap and min-gap extraction over the augmented set {0, 1} ∪ values.
//
// Three routes are provided:
//   * gaps_oracle        sorts a copy; the reference every other route must
//                        reproduce bit for bit.
//   * max_gap_gonzalez   pigeonhole binning, linear time, no sorting. The
//                        per-bucket state is a BucketSummary, which merges
//                        associatively so the binning can be split across
//                        workers and reduced.
//   * min_gap_rabin      randomized incremental grid sieve, expected linear
//                        time. Only the running time depends on the random
//                        insertion order; the reported gap does not.
//
// Ties in either extreme break toward the smaller left endpoint, then the
// smaller right endpoint.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gapstat/rng.hpp"
#include "gapstat/sample_set.hpp"

namespace gapstat::core {

struct GapPair {
  double left = 0.0;
  double right = 0.0;

  friend bool operator==(const GapPair&, const GapPair&) = default;
};

/// One extreme spacing: its length (right - left, as computed in double) and
/// the two consecutive-rank values that bound it.
struct GapExtreme {
  double length = 0.0;
  GapPair pair;
};

struct GapSummary {
  std::size_t n_gaps = 0;
  GapExtreme max;
  GapExtreme min;
};

struct MaxGapResult {
  std::size_t n_gaps = 0;
  GapExtreme max;
};

struct MinGapResult {
  std::size_t n_gaps = 0;
  GapExtreme min;
};

/// Sort-based reference: sorts {0, 1} ∪ values and scans consecutive
/// differences.
GapSummary gaps_oracle(const SampleSet& samples);

/// Per-bucket extrema over a fixed grid of equal-width buckets on [0, 1].
///
/// Bucket i covers [i/B, (i+1)/B); the value 1.0 is clamped into bucket B-1.
/// Merging is an element-wise min/max and therefore associative and
/// commutative, with `BucketSummary(B)` as the identity.
class BucketSummary {
 public:
  explicit BucketSummary(std::size_t bucket_count);

  /// Summary of `values` over a grid of `bucket_count` buckets.
  static BucketSummary of(std::span<const double> values, std::size_t bucket_count);

  void add(double v) noexcept;
  void add(std::span<const double> values) noexcept;

  std::size_t bucket_count() const noexcept { return lo_.size(); }
  std::size_t bucket_of(double v) const noexcept;

  bool occupied(std::size_t bucket) const noexcept { return lo_[bucket] <= hi_[bucket]; }
  double lo(std::size_t bucket) const noexcept { return lo_[bucket]; }
  double hi(std::size_t bucket) const noexcept { return hi_[bucket]; }
  bool empty() const noexcept { return global_min_ > global_max_; }
  double global_min() const noexcept { return global_min_; }
  double global_max() const noexcept { return global_max_; }

  friend bool operator==(const BucketSummary&, const BucketSummary&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
  double global_min_;
  double global_max_;
};

/// Throws GridMismatchError if the bucket counts differ.
BucketSummary merge_bucket_summaries(const BucketSummary& a, const BucketSummary& b);

/// Number of buckets used for `count` observations: one fewer than the
/// augmented point count M = count + 2.
constexpr std::size_t gonzalez_bucket_count(std::size_t count) noexcept { return count + 1; }

/// Summary holding only the two augmentation endpoints.
BucketSummary endpoint_summary(std::size_t bucket_count);

/// Result of scanning a summary's non-empty buckets in order.
struct MaxGapScan {
  /// Largest gap between the `hi` of one occupied bucket and the `lo` of the
  /// next occupied one.
  GapExtreme best;
  /// Buckets whose own extent is at least `best.length`. Their interior gaps
  /// could tie or (through rounding in the bucket index) beat the best
  /// cross-bucket gap, so they must be resolved against the data. For inputs
  /// that are not near-perfect lattices this list is empty.
  std::vector<std::size_t> unresolved;
};

/// Throws InvalidArgumentError if fewer than two values were summarized.
MaxGapScan scan_max_gap(const BucketSummary& summary);

/// Finishes a scan: examines consecutive values inside each unresolved bucket
/// (including the endpoints 0 and 1 when they fall there). `values` must be
/// the non-endpoint data that went into the summary.
GapExtreme resolve_max_gap(const MaxGapScan& scan, const BucketSummary& summary,
                           std::span<const double> values);

/// Linear-time max gap of {0, 1} ∪ samples.
MaxGapResult max_gap_gonzalez(const SampleSet& samples);

/// Same result as max_gap_gonzalez, but with the binning split into `parts`
/// contiguous chunks whose summaries are built independently and merged.
MaxGapResult max_gap_partitioned(const SampleSet& samples, std::size_t parts);

/// Expected-linear-time min gap of {0, 1} ∪ samples. `order` drives the random
/// insertion permutation.
MinGapResult min_gap_rabin(const SampleSet& samples, rng::Xorshift64Star& order);
MinGapResult min_gap_rabin(const SampleSet& samples, std::uint64_t seed = 0x5EEDULL);

}  // namespace gapstat::core
