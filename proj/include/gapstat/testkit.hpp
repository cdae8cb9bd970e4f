#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "gapstat/dist.hpp"
#include "gapstat/gap_core.hpp"
#include "gapstat/sample_set.hpp"

namespace gapstat::testkit {

enum class Method { chi_square, max_gap, min_gap };
enum class Sidedness { one_sided, two_sided };

/// Law used to turn an observed min gap into a p-value.
enum class MinGapLaw {
  exact,  ///< 1 - (1 - N x)^(N-1); the default
  paper,  ///< the Poisson-tail form (dist::min_gap_cdf_paper)
};

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Sidedness s) noexcept;
std::string_view to_string(MinGapLaw law) noexcept;

class SignificanceConfig {
 public:
  /// Throws InvalidArgumentError unless 0 < alpha < 1.
  SignificanceConfig(double alpha, Sidedness sidedness);

  double alpha() const noexcept { return alpha_; }
  Sidedness sidedness() const noexcept { return sidedness_; }

 private:
  double alpha_;
  Sidedness sidedness_;
};

struct TestOutcome {
  Method method;
  double statistic;          ///< chi-square value or gap length
  std::size_t n_gaps_or_df;  ///< N for gap tests, df for chi-square
  dist::Probability p_one_sided;
  dist::Probability p_two_sided;
  bool passed;
  std::optional<core::GapPair> witness;
};

/// one-sided: p >= alpha. two-sided: alpha/2 <= p <= 1 - alpha/2.
bool decide(dist::Probability p, const SignificanceConfig& cfg) noexcept;

/// 2 * min(p, 1 - p), clamped to [0, 1].
dist::Probability two_sided(dist::Probability p) noexcept;

/// N observations into N equal bins on [0, 1]; statistic sum (b_i - 1)^2 with
/// N - 1 degrees of freedom. Throws TooFewSamplesError for N < 2.
TestOutcome chi_square_uniformity_test(const SampleSet& samples, const SignificanceConfig& cfg);

/// Max gap of {0, 1} ∪ samples, upper-tail Gumbel p-value.
TestOutcome max_gap_test(const SampleSet& samples, const SignificanceConfig& cfg);

/// Min gap of {0, 1} ∪ samples, lower-tail p-value under `law`. A zero gap
/// (any duplicate) gives p = 0 under the exact law. `permutation_seed` only
/// affects the running time of the min-gap search.
TestOutcome min_gap_test(const SampleSet& samples, const SignificanceConfig& cfg,
                         MinGapLaw law = MinGapLaw::exact,
                         std::uint64_t permutation_seed = 0x5EEDULL);

}  // namespace gapstat::testkit
