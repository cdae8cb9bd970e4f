#include "gapstat/gap_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "gapstat/error.hpp"

namespace gapstat::core {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -0.0 and 0.0 compare equal but std::min/max pick by argument order; folding
// to +0.0 keeps merges commutative bit for bit.
inline double canonical(double v) noexcept { return v + 0.0; }

// Lexicographic (length, left, right) orderings used for tie-breaking.
inline bool better_max(const GapExtreme& a, const GapExtreme& b) noexcept {
  if (a.length != b.length) return a.length > b.length;
  if (a.pair.left != b.pair.left) return a.pair.left < b.pair.left;
  return a.pair.right < b.pair.right;
}

inline bool better_min(const GapExtreme& a, const GapExtreme& b) noexcept {
  if (a.length != b.length) return a.length < b.length;
  if (a.pair.left != b.pair.left) return a.pair.left < b.pair.left;
  return a.pair.right < b.pair.right;
}

inline GapExtreme make_gap(double a, double b) noexcept {
  if (b < a) std::swap(a, b);
  return GapExtreme{b - a, GapPair{a, b}};
}

std::vector<double> augmented(std::span<const double> values) {
  std::vector<double> points;
  points.reserve(values.size() + 2);
  points.push_back(0.0);
  for (double v : values) points.push_back(canonical(v));
  points.push_back(1.0);
  return points;
}

}  // namespace

GapSummary gaps_oracle(const SampleSet& samples) {
  std::vector<double> points = augmented(samples.values());
  std::sort(points.begin(), points.end());

  GapSummary out;
  out.n_gaps = samples.n_gaps();
  out.max = make_gap(points[0], points[1]);
  out.min = out.max;
  for (std::size_t i = 2; i < points.size(); ++i) {
    const GapExtreme g = make_gap(points[i - 1], points[i]);
    if (g.length > out.max.length) out.max = g;
    if (g.length < out.min.length) out.min = g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gonzalez binning

BucketSummary::BucketSummary(std::size_t bucket_count)
    : lo_(bucket_count, kInf), hi_(bucket_count, -kInf), global_min_(kInf), global_max_(-kInf) {
  if (bucket_count == 0) throw InvalidArgumentError("bucket grid needs at least one bucket");
}

BucketSummary BucketSummary::of(std::span<const double> values, std::size_t bucket_count) {
  BucketSummary s(bucket_count);
  s.add(values);
  return s;
}

std::size_t BucketSummary::bucket_of(double v) const noexcept {
  const std::size_t b = lo_.size();
  const auto idx = static_cast<std::size_t>(v * static_cast<double>(b));
  return std::min(idx, b - 1);
}

void BucketSummary::add(double v) noexcept {
  v = canonical(v);
  const std::size_t i = bucket_of(v);
  lo_[i] = std::min(lo_[i], v);
  hi_[i] = std::max(hi_[i], v);
  global_min_ = std::min(global_min_, v);
  global_max_ = std::max(global_max_, v);
}

void BucketSummary::add(std::span<const double> values) noexcept {
  for (double v : values) add(v);
}

BucketSummary merge_bucket_summaries(const BucketSummary& a, const BucketSummary& b) {
  if (a.bucket_count() != b.bucket_count()) {
    throw GridMismatchError(a.bucket_count(), b.bucket_count());
  }
  BucketSummary out(a.bucket_count());
  for (std::size_t i = 0; i < a.bucket_count(); ++i) {
    if (a.occupied(i)) {
      out.add(a.lo(i));
      out.add(a.hi(i));
    }
    if (b.occupied(i)) {
      out.add(b.lo(i));
      out.add(b.hi(i));
    }
  }
  return out;
}

BucketSummary endpoint_summary(std::size_t bucket_count) {
  BucketSummary s(bucket_count);
  s.add(0.0);
  s.add(1.0);
  return s;
}

MaxGapScan scan_max_gap(const BucketSummary& summary) {
  if (summary.empty()) throw InvalidArgumentError("cannot scan an empty bucket summary");

  MaxGapScan scan;
  bool have_prev = false;
  bool have_gap = false;
  double prev_hi = 0.0;
  for (std::size_t i = 0; i < summary.bucket_count(); ++i) {
    if (!summary.occupied(i)) continue;
    if (have_prev) {
      const GapExtreme g = make_gap(prev_hi, summary.lo(i));
      if (!have_gap || g.length > scan.best.length) {
        scan.best = g;
        have_gap = true;
      }
    }
    prev_hi = summary.hi(i);
    have_prev = true;
  }
  if (!have_gap) {
    // a single occupied bucket: everything lives inside it
    scan.best = make_gap(summary.global_min(), summary.global_min());
  }

  for (std::size_t i = 0; i < summary.bucket_count(); ++i) {
    if (!summary.occupied(i)) continue;
    const double extent = summary.hi(i) - summary.lo(i);
    if (extent > 0.0 && extent >= scan.best.length) scan.unresolved.push_back(i);
  }
  return scan;
}

GapExtreme resolve_max_gap(const MaxGapScan& scan, const BucketSummary& summary,
                           std::span<const double> values) {
  if (scan.unresolved.empty()) return scan.best;

  std::vector<char> flagged(summary.bucket_count(), 0);
  for (std::size_t b : scan.unresolved) flagged[b] = 1;

  std::vector<double> members;
  auto collect = [&](double v) {
    v = canonical(v);
    if (flagged[summary.bucket_of(v)]) members.push_back(v);
  };
  collect(0.0);
  for (double v : values) collect(v);
  collect(1.0);
  // Bucket index is monotone in value, so sorting by value keeps each
  // bucket's members contiguous.
  std::sort(members.begin(), members.end());

  GapExtreme best = scan.best;
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (summary.bucket_of(members[i - 1]) != summary.bucket_of(members[i])) continue;
    const GapExtreme g = make_gap(members[i - 1], members[i]);
    if (better_max(g, best)) best = g;
  }
  return best;
}

MaxGapResult max_gap_gonzalez(const SampleSet& samples) {
  BucketSummary summary = endpoint_summary(gonzalez_bucket_count(samples.count()));
  summary.add(samples.values());
  const MaxGapScan scan = scan_max_gap(summary);
  return MaxGapResult{samples.n_gaps(), resolve_max_gap(scan, summary, samples.values())};
}

MaxGapResult max_gap_partitioned(const SampleSet& samples, std::size_t parts) {
  const std::size_t buckets = gonzalez_bucket_count(samples.count());
  const auto values = samples.values();
  parts = std::clamp<std::size_t>(parts, 1, values.size());

  BucketSummary total = endpoint_summary(buckets);
  const std::size_t chunk = (values.size() + parts - 1) / parts;
  for (std::size_t start = 0; start < values.size(); start += chunk) {
    const std::size_t len = std::min(chunk, values.size() - start);
    total = merge_bucket_summaries(total, BucketSummary::of(values.subspan(start, len), buckets));
  }
  const MaxGapScan scan = scan_max_gap(total);
  return MaxGapResult{samples.n_gaps(), resolve_max_gap(scan, total, values)};
}

// ---------------------------------------------------------------------------
// Rabin-style randomized sieve

namespace {

// Below this cell width, x / width can overflow a 64-bit cell key.
constexpr double kMinCellWidth = 0x1.0p-60;

class CellGrid {
 public:
  explicit CellGrid(std::size_t expected) { cells_.reserve(expected); }

  void rebuild(double width, std::span<const double> points) {
    width_ = width;
    cells_.clear();
    for (double p : points) insert(p);
  }

  std::int64_t cell_of(double x) const noexcept {
    return static_cast<std::int64_t>(std::floor(x / width_));
  }

  void insert(double x) { cells_.emplace(cell_of(x), x); }

  // Visits every stored point in cells within two of x's cell. One extra
  // ring beyond the textbook three cells absorbs rounding in x / width.
  template <typename F>
  void for_each_near(double x, F&& visit) const {
    const std::int64_t c = cell_of(x);
    for (std::int64_t dc = -2; dc <= 2; ++dc) {
      auto [first, last] = cells_.equal_range(c + dc);
      for (auto it = first; it != last; ++it) visit(it->second);
    }
  }

 private:
  double width_ = 1.0;
  std::unordered_multimap<std::int64_t, double> cells_;
};

GapExtreme min_gap_sorted(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  GapExtreme best = make_gap(points[0], points[1]);
  for (std::size_t i = 2; i < points.size(); ++i) {
    const GapExtreme g = make_gap(points[i - 1], points[i]);
    if (g.length < best.length) best = g;
  }
  return best;
}

}  // namespace

MinGapResult min_gap_rabin(const SampleSet& samples, rng::Xorshift64Star& order) {
  std::vector<double> points = augmented(samples.values());
  const std::size_t m = points.size();

  {
    std::unordered_set<double> seen;
    seen.reserve(m);
    bool duplicate = false;
    double smallest = kInf;
    for (double p : points) {
      if (!seen.insert(p).second) {
        duplicate = true;
        smallest = std::min(smallest, p);
      }
    }
    if (duplicate) return MinGapResult{samples.n_gaps(), GapExtreme{0.0, GapPair{smallest, smallest}}};
  }

  for (std::size_t i = m - 1; i > 0; --i) {
    std::swap(points[i], points[order.below(i + 1)]);
  }

  GapExtreme best = make_gap(points[0], points[1]);
  if (best.length < kMinCellWidth) return MinGapResult{samples.n_gaps(), min_gap_sorted(points)};

  CellGrid grid(m);
  grid.rebuild(best.length, std::span<const double>(points.data(), 2));
  for (std::size_t i = 2; i < m; ++i) {
    const double x = points[i];
    const double width = best.length;
    grid.for_each_near(x, [&](double q) {
      const GapExtreme g = make_gap(x, q);
      if (better_min(g, best)) best = g;
    });
    if (best.length < width) {
      if (best.length < kMinCellWidth) {
        return MinGapResult{samples.n_gaps(), min_gap_sorted(std::move(points))};
      }
      grid.rebuild(best.length, std::span<const double>(points.data(), i + 1));
    } else {
      grid.insert(x);
    }
  }
  return MinGapResult{samples.n_gaps(), best};
}

MinGapResult min_gap_rabin(const SampleSet& samples, std::uint64_t seed) {
  rng::Xorshift64Star order(seed);
  return min_gap_rabin(samples, order);
}

}  // namespace gapstat::core
