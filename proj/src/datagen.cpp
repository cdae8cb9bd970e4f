#include "gapstat/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gapstat/error.hpp"
#include "gapstat/rng.hpp"

namespace gapstat::datagen {

namespace {

void require_nonempty(std::size_t n) {
  if (n == 0) throw InvalidArgumentError("generator needs n >= 1");
}

template <std::size_t K>
double poly(const double (&c)[K], double r) {
  double acc = c[K - 1];
  for (std::size_t i = K - 1; i-- > 0;) acc = acc * r + c[i];
  return acc;
}

// AS 241 (PPND16) coefficients, lowest order first.
constexpr double kCentralNum[] = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                                  1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                  4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[] = {1.0,
                                  4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                  5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                  3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
constexpr double kNearNum[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                               5.76949722146069140550e0, 3.64784832476320460504e0,
                               1.27045825245236838258e0, 2.41780725177450611770e-1,
                               2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kNearDen[] = {1.0,
                               2.05319162663775882187e0, 1.67638483018380384940e0,
                               6.89767334985100004550e-1, 1.48103976427480074590e-1,
                               1.51986665636164571966e-2, 5.47593808499534494600e-4,
                               1.05075007164441684324e-9};
constexpr double kTailNum[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                               1.78482653991729133580e0, 2.96560571828504891230e-1,
                               2.65321895265761230930e-2, 1.24266094738807843860e-3,
                               2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kTailDen[] = {1.0,
                               5.99832206555887937690e-1, 1.36929880922735805310e-1,
                               1.48753612908506148525e-2, 7.86869131145613259100e-4,
                               1.84631831751005468180e-5, 1.42151175831644588870e-7,
                               2.04426310338993978564e-15};

}  // namespace

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgumentError("normal quantile needs 0 < p < 1");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(kCentralNum, r) / poly(kCentralDen, r);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = poly(kNearNum, r) / poly(kNearDen, r);
  } else {
    r -= 5.0;
    z = poly(kTailNum, r) / poly(kTailDen, r);
  }
  return q < 0.0 ? -z : z;
}

SampleSet gen_uniform(std::size_t n, std::uint64_t seed) {
  require_nonempty(n);
  rng::Xorshift64Star gen(seed);
  std::vector<double> out(n);
  for (double& v : out) v = gen.uniform_open();
  return SampleSet::validate(std::move(out));
}

SampleSet gen_truncated_normal(std::size_t n, double sigma, std::uint64_t seed) {
  require_nonempty(n);
  if (!(sigma > 0.0 && std::isfinite(sigma))) {
    throw InvalidArgumentError("truncated normal needs a finite sigma > 0");
  }
  constexpr double kMean = 0.5;
  const double p_lo = normal_cdf((0.0 - kMean) / sigma);
  const double p_hi = normal_cdf((1.0 - kMean) / sigma);

  rng::Xorshift64Star gen(seed);
  std::vector<double> out(n);
  for (double& v : out) {
    const double p = p_lo + gen.uniform_open() * (p_hi - p_lo);
    // Rounding can leave p or the mapped value a hair outside its range.
    const double z = normal_quantile(std::clamp(p, 0x1.0p-1074, 1.0 - 0x1.0p-53));
    v = std::clamp(kMean + sigma * z, 0.0, 1.0);
  }
  return SampleSet::validate(std::move(out));
}

SampleSet gen_band_excluded(std::size_t n, double width, double center, std::uint64_t seed) {
  require_nonempty(n);
  if (!(width >= 0.0)) throw InvalidArgumentError("band width must be >= 0");
  if (width >= 1.0) throw InvalidArgumentError("band too wide: width must be < 1");
  const double lo = center - width / 2;
  const double hi = center + width / 2;
  if (!(lo >= 0.0 && hi <= 1.0)) throw InvalidArgumentError("band must lie inside [0, 1]");

  rng::Xorshift64Star gen(seed);
  std::vector<double> out(n);
  for (double& v : out) {
    do {
      v = gen.uniform_open();
    } while (v > lo && v < hi);
  }
  return SampleSet::validate(std::move(out));
}

SampleSet gen_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
  require_nonempty(n);
  if (k < 1 || k > n) throw InvalidArgumentError("regularity needs 1 <= k <= n");

  rng::Xorshift64Star gen(seed);
  const std::size_t per_bin = n / k;
  const std::size_t extras = n % k;
  const auto kd = static_cast<double>(k);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t bin = 0; bin < k; ++bin) {
    const std::size_t draws = per_bin + (bin < extras ? 1 : 0);
    for (std::size_t j = 0; j < draws; ++j) {
      out.push_back((static_cast<double>(bin) + gen.uniform_open()) / kd);
    }
  }
  return SampleSet::validate(std::move(out));
}

SampleSet generate(const GeneratorSpec& spec) {
  struct Visitor {
    const GeneratorSpec& s;
    SampleSet operator()(const Uniform&) const { return gen_uniform(s.n, s.seed); }
    SampleSet operator()(const TruncatedNormal& t) const {
      return gen_truncated_normal(s.n, t.sigma, s.seed);
    }
    SampleSet operator()(const BandExcluded& b) const {
      return gen_band_excluded(s.n, b.width, b.center, s.seed);
    }
    SampleSet operator()(const Regular& r) const { return gen_regular(s.n, r.k, s.seed); }
  };
  return std::visit(Visitor{spec}, spec.kind);
}

}  // namespace gapstat::datagen
