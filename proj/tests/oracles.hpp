#pragma once

// Test-only reference computations. Nothing here calls into the library's
// gap, distribution or generator code, so these stay independent of the
// implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace gapstat::oracle {

/// Kolmogorov distance between the empirical CDF of `xs` and `cdf`.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f),
                  std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

inline double ks_uniform(std::vector<double> xs) {
  return ks_distance(std::move(xs), [](double x) { return std::clamp(x, 0.0, 1.0); });
}

/// Two-sample Kolmogorov–Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Gaps of {0, 1} ∪ points, by sorting a copy.
inline std::vector<double> spacings(std::vector<double> points) {
  points.push_back(0.0);
  points.push_back(1.0);
  std::sort(points.begin(), points.end());
  std::vector<double> gaps(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) gaps[i - 1] = points[i] - points[i - 1];
  return gaps;
}

/// Draws `n_points` uniforms with std::mt19937_64 and returns (max gap, min gap).
struct Extremes {
  double max_gap;
  double min_gap;
};

inline Extremes simulate_extremes(std::mt19937_64& gen, std::size_t n_points) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts(n_points);
  for (double& p : pts) p = u(gen);
  const auto gaps = spacings(std::move(pts));
  const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  return {*hi, *lo};
}

/// Chi-square upper tail by composite 10-point Gauss–Legendre quadrature of
/// the density over [stat, stat + far]. Requires stat > 0.
inline double chi_square_sf_quadrature(double stat, double df) {
  static constexpr double kNodes[] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                      0.8650633666889845, 0.9739065285171717};
  static constexpr double kWeights[] = {0.2955242247147529, 0.2692667193099963,
                                        0.2190863625159820, 0.1494513491505806,
                                        0.0666713443086881};
  const double k2 = df / 2.0;
  const double log_norm = -k2 * std::log(2.0) - std::lgamma(k2);
  auto density = [&](double t) { return std::exp(log_norm + (k2 - 1.0) * std::log(t) - t / 2.0); };

  const double sd = std::sqrt(2.0 * df);
  const double upper = std::max(stat, df) + 80.0 * sd + 200.0;
  // Geometric panel widths resolve the left end for small df.
  const int panels = 20000;
  const double ratio = std::pow((upper - stat + 1.0), 1.0 / panels);
  double a = stat;
  double width = 1.0 * (ratio - 1.0);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double b = a + width;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) {
      s += kWeights[i] * (density(mid - half * kNodes[i]) + density(mid + half * kNodes[i]));
    }
    total += s * half;
    a = b;
    width *= ratio;
  }
  return total;
}

}  // namespace gapstat::oracle
