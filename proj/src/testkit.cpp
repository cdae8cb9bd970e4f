#include "gapstat/testkit.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gapstat/error.hpp"

namespace gapstat::testkit {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::chi_square: return "chi_square";
    case Method::max_gap: return "max_gap";
    case Method::min_gap: return "min_gap";
  }
  return "?";
}

std::string_view to_string(Sidedness s) noexcept {
  return s == Sidedness::one_sided ? "one_sided" : "two_sided";
}

std::string_view to_string(MinGapLaw law) noexcept {
  return law == MinGapLaw::exact ? "exact" : "paper";
}

SignificanceConfig::SignificanceConfig(double alpha, Sidedness sidedness)
    : alpha_(alpha), sidedness_(sidedness) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0, 1)");
}

bool decide(dist::Probability p, const SignificanceConfig& cfg) noexcept {
  const double a = cfg.alpha();
  if (cfg.sidedness() == Sidedness::one_sided) return p.value() >= a;
  return p.value() >= a / 2 && p.value() <= 1.0 - a / 2;
}

dist::Probability two_sided(dist::Probability p) noexcept {
  return dist::Probability(2.0 * std::min(p.value(), 1.0 - p.value()));
}

namespace {

TestOutcome finish(Method method, double statistic, std::size_t n, dist::Probability p,
                   const SignificanceConfig& cfg, std::optional<core::GapPair> witness) {
  return TestOutcome{method, statistic, n, p, two_sided(p), decide(p, cfg), witness};
}

}  // namespace

TestOutcome chi_square_uniformity_test(const SampleSet& samples, const SignificanceConfig& cfg) {
  const std::size_t n = samples.count();
  if (n < 2) throw TooFewSamplesError(n, 2);

  std::vector<std::uint32_t> bins(n, 0);
  const auto scale = static_cast<double>(n);
  for (double v : samples.values()) {
    ++bins[std::min(static_cast<std::size_t>(v * scale), n - 1)];
  }
  // Integer accumulation is exact: the statistic is at most n^2.
  std::uint64_t stat = 0;
  for (std::uint32_t b : bins) {
    const std::int64_t d = static_cast<std::int64_t>(b) - 1;
    stat += static_cast<std::uint64_t>(d * d);
  }
  const auto statistic = static_cast<double>(stat);
  const std::size_t df = n - 1;
  return finish(Method::chi_square, statistic, df, dist::chi_square_sf(statistic, df), cfg,
                std::nullopt);
}

TestOutcome max_gap_test(const SampleSet& samples, const SignificanceConfig& cfg) {
  const core::MaxGapResult r = core::max_gap_gonzalez(samples);
  const dist::GapCount n(r.n_gaps);
  return finish(Method::max_gap, r.max.length, r.n_gaps, dist::max_gap_p_value(r.max.length, n),
                cfg, r.max.pair);
}

TestOutcome min_gap_test(const SampleSet& samples, const SignificanceConfig& cfg, MinGapLaw law,
                         std::uint64_t permutation_seed) {
  const core::MinGapResult r = core::min_gap_rabin(samples, permutation_seed);
  const dist::GapCount n(r.n_gaps);
  const dist::Probability p = law == MinGapLaw::exact ? dist::min_gap_cdf_exact(r.min.length, n)
                                                      : dist::min_gap_cdf_paper(r.min.length, n);
  return finish(Method::min_gap, r.min.length, r.n_gaps, p, cfg, r.min.pair);
}

}  // namespace gapstat::testkit
