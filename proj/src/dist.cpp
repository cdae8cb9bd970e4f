#include "gapstat/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gapstat/compensated.hpp"
#include "gapstat/error.hpp"

namespace gapstat::dist {

GapCount::GapCount(std::size_t n) : value(n) {
  if (n == 0) throw InvalidArgumentError("gap count must be at least 1");
}

Probability::Probability(double raw) noexcept
    : value_(std::isnan(raw) ? raw : std::clamp(raw, 0.0, 1.0)) {}

namespace {

__extension__ using u128 = unsigned __int128;

// Exact C(n, k) for n <= 64; every intermediate fits in 128 bits.
std::uint64_t binomial(unsigned n, unsigned k) {
  k = std::min(k, n - k);
  u128 c = 1;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return static_cast<std::uint64_t>(c);
}

template <typename Real>
Real max_gap_sum(double x, std::size_t n_gaps) {
  const Real xr(x);
  const auto exponent = static_cast<int>(n_gaps - 1);
  CompensatedSum<Real> sum;
  Real coeff(1);
  for (std::size_t v = 0; v <= n_gaps; ++v) {
    const Real base = Real(1) - Real(static_cast<double>(v)) * xr;
    if (base <= 0) break;  // and every later base is smaller still
    using std::pow;
    const Real term = coeff * pow(base, exponent);
    sum.add(v % 2 == 0 ? term : Real(-term));
    coeff = coeff * Real(static_cast<double>(n_gaps - v)) / Real(static_cast<double>(v + 1));
  }
  return sum.value();
}

}  // namespace

Probability exact_max_gap_cdf(double x, GapCount n) {
  const std::size_t big_n = n.value;
  if (big_n > kExactCutoff) throw CutoffExceededError(big_n, kExactCutoff);
  if (std::isnan(x)) throw InvalidArgumentError("x is NaN");
  if (x >= 1.0) return Probability(1.0);
  if (x * static_cast<double>(big_n) <= 1.0) return Probability(0.0);

  const auto exponent = static_cast<double>(big_n - 1);
  CompensatedSum<double> sum;
  for (unsigned v = 0; v <= big_n; ++v) {
    const double base = 1.0 - v * x;
    if (base <= 0.0) break;
    const double term =
        static_cast<double>(binomial(static_cast<unsigned>(big_n), v)) * std::pow(base, exponent);
    sum.add(v % 2 == 0 ? term : -term);
  }
  return Probability(sum.value());
}

Probability exact_max_gap_cdf_extended(double x, GapCount n) {
  namespace mp = boost::multiprecision;
  const std::size_t big_n = n.value;
  if (big_n > kExtendedCutoff) throw CutoffExceededError(big_n, kExtendedCutoff);
  if (std::isnan(x)) throw InvalidArgumentError("x is NaN");
  if (x >= 1.0) return Probability(1.0);
  if (x * static_cast<double>(big_n) <= 1.0) return Probability(0.0);

  // Largest binomial is below 10^(0.302 N); keep ~30 guard digits beyond it.
  if (big_n <= 250) {
    return Probability(
        static_cast<double>(max_gap_sum<mp::number<mp::cpp_bin_float<110>>>(x, big_n)));
  }
  return Probability(
      static_cast<double>(max_gap_sum<mp::number<mp::cpp_bin_float<340>>>(x, big_n)));
}

Probability asymptotic_max_gap_cdf(double x, GapCount n) {
  const double big_n = static_cast<double>(n.value);
  return Probability(std::exp(-std::exp(std::log(big_n) - big_n * x)));
}

double expected_max_gap(GapCount n) {
  const double big_n = static_cast<double>(n.value);
  return (kEulerGamma + std::log(big_n)) / big_n;
}

Probability max_gap_p_value(double s, GapCount n) {
  const double big_n = static_cast<double>(n.value);
  return Probability(-std::expm1(-std::exp(std::log(big_n) - big_n * s)));
}

Probability min_gap_cdf_paper(double x, GapCount n) {
  const double big_n = static_cast<double>(n.value);
  const double lambda = std::exp(std::log(big_n) - big_n * x);
  return regularized_gamma_q(big_n, lambda);
}

double expected_min_gap_paper(GapCount n) {
  CompensatedSum<double> harmonic;
  for (std::size_t i = n.value - 1; i >= 1; --i) harmonic.add(1.0 / static_cast<double>(i));
  const double big_n = static_cast<double>(n.value);
  return (kEulerGamma + std::log(big_n) + harmonic.value()) / big_n;
}

Probability min_gap_cdf_exact(double x, GapCount n) {
  const double big_n = static_cast<double>(n.value);
  if (x <= 0.0) return Probability(0.0);
  if (big_n * x >= 1.0) return Probability(1.0);
  return Probability(-std::expm1((big_n - 1.0) * std::log1p(-big_n * x)));
}

double expected_min_gap_exact(GapCount n) {
  const double big_n = static_cast<double>(n.value);
  return 1.0 / (big_n * big_n);
}

// ---------------------------------------------------------------------------
// Incomplete gamma

namespace {

constexpr int kMaxIterations = 1'000'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi) / 2], for a >= 10.
double stirling_error(double a) {
  const double r = 1.0 / a;
  const double r2 = r * r;
  return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680))));
}

// log(1 + t) - t without cancellation for small |t|.
double log1pmx(double t) {
  if (std::abs(t) > 0.25) return std::log1p(t) - t;
  // -t^2/2 + t^3/3 - ...
  double term = t;
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    term *= -t;
    const double next = term / k;
    sum += next;
    if (std::abs(next) < kEps * std::abs(sum)) break;
  }
  return sum;
}

// log of x^a e^-x / Gamma(a).
double log_gamma_prefactor(double a, double x) {
  if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
  return a * log1pmx((x - a) / a) + 0.5 * std::log(a / (2.0 * std::numbers::pi)) -
         stirling_error(a);
}

// P(a, x) by the power series; caller guarantees x < a + 1.
double lower_series(double a, double x) {
  double denom = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIterations; ++i) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (term < sum * kEps) break;
  }
  return sum * std::exp(log_gamma_prefactor(a, x));
}

// Q(a, x) by the modified Lentz continued fraction; caller guarantees x >= a + 1.
double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_gamma_prefactor(a, x)) * h;
}

}  // namespace

Probability regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw InvalidArgumentError("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw InvalidArgumentError("incomplete gamma needs x >= 0");
  if (x == 0.0) return Probability(1.0);
  if (std::isinf(x)) return Probability(0.0);
  if (x < a + 1.0) return Probability(1.0 - lower_series(a, x));
  return Probability(upper_fraction(a, x));
}

Probability chi_square_sf(double stat, std::size_t df) {
  if (df == 0) throw InvalidArgumentError("chi-square needs df >= 1");
  if (!(stat >= 0.0)) throw InvalidArgumentError("chi-square statistic must be >= 0");
  return regularized_gamma_q(0.5 * static_cast<double>(df), 0.5 * stat);
}

}  // namespace gapstat::dist
