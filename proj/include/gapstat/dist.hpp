#pragma once

// Null distributions of the gap and chi-square statistics.
//
// Notation: N is the number of gaps, i.e. one more than the number of
// observations. All probabilities are clamped to [0, 1] after evaluation.

#include <cstddef>

namespace gapstat::dist {

/// Euler–Mascheroni constant.
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Largest N accepted by exact_max_gap_cdf. Past this the alternating
/// binomial sum cancels away all double precision.
inline constexpr std::size_t kExactCutoff = 64;

/// Largest N accepted by exact_max_gap_cdf_extended.
inline constexpr std::size_t kExtendedCutoff = 1000;

/// Number of spacings N (>= 1).
struct GapCount {
  explicit GapCount(std::size_t n);
  std::size_t value;
};

class Probability {
 public:
  /// Clamps `raw` into [0, 1]; NaN maps to NaN so that bugs stay visible.
  explicit Probability(double raw) noexcept;
  double value() const noexcept { return value_; }
  explicit operator double() const noexcept { return value_; }

 private:
  double value_;
};

/// Exact law of the largest of N uniform spacings:
/// sum_{v=0..N} (-1)^v C(N,v) (1 - v x)_+^(N-1), in double precision with
/// compensated summation. Throws CutoffExceededError for N > kExactCutoff.
Probability exact_max_gap_cdf(double x, GapCount n);

/// The same sum evaluated in ~110-350 significant digits, for
/// N <= kExtendedCutoff. Slow; intended for validation against the
/// asymptotic law.
Probability exact_max_gap_cdf_extended(double x, GapCount n);

/// Gumbel limit exp(-exp(ln N - N x)).
Probability asymptotic_max_gap_cdf(double x, GapCount n);

/// (gamma + ln N) / N. Asymptotic only: at N = 1 it returns gamma although the
/// single gap is always 1.
double expected_max_gap(GapCount n);

/// Upper-tail p-value of an observed max gap under the Gumbel law:
/// 1 - exp(-exp(ln N - N s)).
Probability max_gap_p_value(double s, GapCount n);

/// Min-gap law in the form printed alongside the max-gap results
/// ("paper form"): P(Poisson(lambda) <= N - 1) with lambda = exp(ln N - N x),
/// evaluated as Q(N, lambda). Kept for reproduction studies: it gives
/// F(0) ~ 0.5 and so is not a valid law for a minimum spacing.
Probability min_gap_cdf_paper(double x, GapCount n);

/// (gamma + ln N + H_{N-1}) / N, as printed ("paper form"). Exceeds the
/// max-gap mean for every N > 1 and is not predictive of the min gap.
double expected_min_gap_paper(GapCount n);

/// Exact law of the smallest of N uniform spacings: 1 - (1 - N x)_+^(N-1).
/// This is the law the min-gap test uses by default.
Probability min_gap_cdf_exact(double x, GapCount n);

/// Mean of min_gap_cdf_exact: 1 / N^2.
double expected_min_gap_exact(GapCount n);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), for
/// a > 0 and x >= 0. Series below x = a + 1, Lentz continued fraction above.
Probability regularized_gamma_q(double a, double x);

/// Chi-square survival function: Q(df / 2, stat / 2).
Probability chi_square_sf(double stat, std::size_t df);

}  // namespace gapstat::dist
