#include "gapstat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <system_error>
#include <thread>

#include "json.hpp"

#include "gapstat/compensated.hpp"
#include "gapstat/datagen.hpp"
#include "gapstat/rng.hpp"

namespace gapstat::harness {

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::uniform_null: return "uniform_null";
    case ExperimentKind::variance_sweep: return "variance_sweep";
    case ExperimentKind::missing_band_sweep: return "missing_band_sweep";
    case ExperimentKind::regularity_sweep: return "regularity_sweep";
  }
  return "?";
}

std::vector<double> default_sweep(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::uniform_null: return {0.0};
    case ExperimentKind::variance_sweep: return {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    case ExperimentKind::missing_band_sweep:
      return {0.0, 1e-4, 2.5e-4, 5e-4, 1e-3, 2.5e-3, 5e-3, 1e-2};
    case ExperimentKind::regularity_sweep: return {1, 2, 5, 10, 100, 1000, 10000};
  }
  return {};
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials == 0) throw InvalidArgumentError("experiment needs trials >= 1");
  if (spec.n == 0) throw InvalidArgumentError("experiment needs n >= 1");
  if (spec.sweep.empty()) throw InvalidArgumentError("experiment needs a non-empty sweep");
  if (spec.methods.empty()) throw InvalidArgumentError("experiment needs at least one method");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0, 1)");
  if (spec.name == ExperimentKind::regularity_sweep) {
    for (double k : spec.sweep) {
      if (!(k >= 1.0 && k <= static_cast<double>(spec.n) && k == std::floor(k))) {
        throw InvalidArgumentError("regularity sweep values must be integers in [1, n]");
      }
    }
  }
}

ExperimentError::ExperimentError(double sweep_value, std::size_t trial, const std::string& what)
    : Error([&] {
        char buf[96];
        std::snprintf(buf, sizeof buf, "sweep_value=%.9g trial=%zu: ", sweep_value, trial);
        return std::string(buf) + what;
      }()) {}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t sweep_index,
                                std::uint64_t trial_index) noexcept {
  std::uint64_t h = rng::mix64(base_seed);
  h = rng::mix64(h ^ rng::mix64(sweep_index + rng::kGoldenGamma));
  // odd multiplier + bijective mix: distinct trials never collide
  return rng::mix64(h + trial_index * rng::kGoldenGamma);
}

namespace {

struct MethodResult {
  double statistic = 0.0;
  double p_one = 0.0;
  double p_two = 0.0;
};

SampleSet draw(const ExperimentSpec& spec, double sweep_value, std::uint64_t seed) {
  switch (spec.name) {
    case ExperimentKind::uniform_null: return datagen::gen_uniform(spec.n, seed);
    case ExperimentKind::variance_sweep:
      return datagen::gen_truncated_normal(spec.n, sweep_value, seed);
    case ExperimentKind::missing_band_sweep:
      return datagen::gen_band_excluded(spec.n, sweep_value, spec.band_center, seed);
    case ExperimentKind::regularity_sweep:
      return datagen::gen_regular(spec.n, static_cast<std::size_t>(sweep_value), seed);
  }
  throw InvalidArgumentError("unknown experiment");
}

MethodResult run_method(testkit::Method method, const SampleSet& data,
                        const testkit::SignificanceConfig& cfg, testkit::MinGapLaw law,
                        std::uint64_t seed) {
  testkit::TestOutcome o = [&] {
    switch (method) {
      case testkit::Method::chi_square: return testkit::chi_square_uniformity_test(data, cfg);
      case testkit::Method::max_gap: return testkit::max_gap_test(data, cfg);
      case testkit::Method::min_gap:
        return testkit::min_gap_test(data, cfg, law, rng::mix64(seed ^ 0xC0FFEEULL));
    }
    throw InvalidArgumentError("unknown method");
  }();
  return MethodResult{o.statistic, o.p_one_sided.value(), o.p_two_sided.value()};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t parallelism,
                                bool keep_records) {
  validate(spec);
  const testkit::SignificanceConfig cfg(spec.alpha, testkit::Sidedness::one_sided);
  const std::size_t n_sweep = spec.sweep.size();
  const std::size_t n_trials = spec.trials;
  const std::size_t n_methods = spec.methods.size();
  const std::size_t n_tasks = n_sweep * n_trials;

  std::vector<MethodResult> results(n_tasks * n_methods);
  std::vector<std::exception_ptr> errors(n_tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks && !failed; task = next++) {
      const std::size_t s = task / n_trials;
      const std::size_t t = task % n_trials;
      try {
        const std::uint64_t seed = derive_trial_seed(spec.base_seed, s, t);
        const SampleSet data = draw(spec, spec.sweep[s], seed);
        for (std::size_t m = 0; m < n_methods; ++m) {
          results[task * n_methods + m] =
              run_method(spec.methods[m], data, cfg, spec.min_gap_law, seed);
        }
      } catch (...) {
        errors[task] = std::current_exception();
        failed = true;
      }
    }
  };

  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());
  parallelism = std::min(parallelism, n_tasks);
  if (parallelism <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(parallelism);
    for (std::size_t i = 0; i < parallelism; ++i) pool.emplace_back(worker);
  }

  for (std::size_t task = 0; task < n_tasks; ++task) {
    if (!errors[task]) continue;
    const double sweep_value = spec.sweep[task / n_trials];
    try {
      std::rethrow_exception(errors[task]);
    } catch (const std::exception& e) {
      throw ExperimentError(sweep_value, task % n_trials, e.what());
    }
  }

  ExperimentResult out;
  out.points.reserve(n_sweep * n_methods);
  const auto trials_d = static_cast<double>(n_trials);
  for (std::size_t s = 0; s < n_sweep; ++s) {
    for (std::size_t m = 0; m < n_methods; ++m) {
      auto at = [&](std::size_t t) -> const MethodResult& {
        return results[(s * n_trials + t) * n_methods + m];
      };
      CompensatedSum<> sum_one, sum_two;
      std::size_t rejects = 0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        sum_one.add(at(t).p_one);
        sum_two.add(at(t).p_two);
        if (at(t).p_one < spec.alpha) ++rejects;
      }
      const double mean_one = sum_one.value() / trials_d;
      CompensatedSum<> squares;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const double d = at(t).p_one - mean_one;
        squares.add(d * d);
      }
      const double stderr_p =
          n_trials > 1 ? std::sqrt(squares.value() / (trials_d - 1.0) / trials_d) : 0.0;
      out.points.push_back(CurvePoint{spec.sweep[s], spec.methods[m], mean_one,
                                      sum_two.value() / trials_d, stderr_p,
                                      static_cast<double>(rejects) / trials_d});
    }
  }

  if (keep_records) {
    out.records.reserve(results.size());
    for (std::size_t task = 0; task < n_tasks; ++task) {
      for (std::size_t m = 0; m < n_methods; ++m) {
        const MethodResult& r = results[task * n_methods + m];
        out.records.push_back(TrialRecord{spec.sweep[task / n_trials], task % n_trials,
                                          spec.methods[m], r.statistic, r.p_one, r.p_two});
      }
    }
  }
  return out;
}

namespace {

std::string real9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void emit_csv(const ExperimentSpec& spec, const std::vector<CurvePoint>& points,
              std::ostream& out) {
  out << "experiment,sweep_value,method,mean_p_one_sided,mean_p_two_sided,stderr,reject_rate,"
         "trials,n,base_seed\n";
  for (const CurvePoint& p : points) {
    out << to_string(spec.name) << ',' << real9(p.sweep_value) << ',' << testkit::to_string(p.method)
        << ',' << real9(p.mean_p_one_sided) << ',' << real9(p.mean_p_two_sided) << ','
        << real9(p.stderr_p) << ',' << real9(p.reject_rate_at_alpha) << ',' << spec.trials << ','
        << spec.n << ',' << spec.base_seed << '\n';
  }
}

void emit_records_jsonl(const std::vector<TrialRecord>& records, std::ostream& out) {
  for (const TrialRecord& r : records) {
    nlohmann::json j = {{"sweep_value", r.sweep_value},
                        {"trial_index", r.trial_index},
                        {"method", testkit::to_string(r.method)},
                        {"statistic", r.statistic},
                        {"p_one_sided", r.p_one_sided},
                        {"p_two_sided", r.p_two_sided}};
    out << j.dump() << '\n';
  }
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.flush();
  if (!f) throw std::system_error(errno, std::generic_category(), "cannot write " + path);
}

}  // namespace gapstat::harness
