#pragma once

// Seeded generators for the four data regimes used by the sensitivity
// experiments. Every generator is a pure function of its arguments.

#include <cstddef>
#include <cstdint>
#include <variant>

#include "gapstat/sample_set.hpp"

namespace gapstat::datagen {

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

/// Standard normal quantile (Wichura's AS 241 rational approximation,
/// relative error about 1e-16). Requires 0 < p < 1.
double normal_quantile(double p);

SampleSet gen_uniform(std::size_t n, std::uint64_t seed);

/// Normal(0.5, sigma) conditioned on (0, 1), by inverse-CDF sampling.
SampleSet gen_truncated_normal(std::size_t n, double sigma, std::uint64_t seed);

/// Uniform on (0, 1) minus the open band (center - width/2, center + width/2);
/// draws landing in the band are redrawn. Throws InvalidArgumentError if
/// width >= 1 or the band pokes outside [0, 1].
SampleSet gen_band_excluded(std::size_t n, double width, double center, std::uint64_t seed);

/// k equal strata on [0, 1), floor(n / k) uniform draws in each, plus one
/// extra draw in each of the first n mod k strata. Requires 1 <= k <= n.
SampleSet gen_regular(std::size_t n, std::size_t k, std::uint64_t seed);

struct Uniform {};
struct TruncatedNormal {
  double sigma;
};
struct BandExcluded {
  double width;
  double center = 0.5;
};
struct Regular {
  std::size_t k;
};

struct GeneratorSpec {
  std::variant<Uniform, TruncatedNormal, BandExcluded, Regular> kind;
  std::size_t n;
  std::uint64_t seed;
};

SampleSet generate(const GeneratorSpec& spec);

}  // namespace gapstat::datagen
