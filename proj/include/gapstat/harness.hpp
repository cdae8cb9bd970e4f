#pragma once

// Repeated-trial sensitivity experiments.
//
// For every sweep value and trial the harness draws a fresh data set, runs
// each requested test and records the p-values; the trials are then reduced
// to one CurvePoint per (sweep value, method). Trial seeds are derived from
// (base_seed, sweep index, trial index) alone, and the reduction walks trials
// in index order, so the output does not depend on how many worker threads
// ran the trials.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapstat/error.hpp"
#include "gapstat/testkit.hpp"

namespace gapstat::harness {

enum class ExperimentKind { uniform_null, variance_sweep, missing_band_sweep, regularity_sweep };

std::string_view to_string(ExperimentKind kind) noexcept;

struct ExperimentSpec {
  ExperimentKind name = ExperimentKind::uniform_null;
  std::size_t n = 10000;
  std::size_t trials = 2000;
  std::uint64_t base_seed = 1;
  /// sigma values, band widths, or k values; a single ignored entry for
  /// uniform_null.
  std::vector<double> sweep;
  std::vector<testkit::Method> methods = {testkit::Method::chi_square, testkit::Method::max_gap};
  double alpha = 0.05;
  double band_center = 0.5;
  testkit::MinGapLaw min_gap_law = testkit::MinGapLaw::exact;
};

/// Default sweep grid for each experiment.
std::vector<double> default_sweep(ExperimentKind kind);

/// Throws InvalidArgumentError if trials == 0, the sweep is empty, or no
/// method is requested.
void validate(const ExperimentSpec& spec);

struct TrialRecord {
  double sweep_value;
  std::size_t trial_index;
  testkit::Method method;
  double statistic;
  double p_one_sided;
  double p_two_sided;
};

struct CurvePoint {
  double sweep_value;
  testkit::Method method;
  double mean_p_one_sided;
  double mean_p_two_sided;
  /// Standard error of mean_p_one_sided.
  double stderr_p;
  /// Fraction of trials with one-sided p < alpha.
  double reject_rate_at_alpha;
};

struct ExperimentResult {
  std::vector<CurvePoint> points;
  /// Only filled when requested; ordered by sweep, trial, then method.
  std::vector<TrialRecord> records;
};

/// Raised when a trial fails; the message names the sweep value and trial.
class ExperimentError : public Error {
 public:
  ExperimentError(double sweep_value, std::size_t trial, const std::string& what);
};

std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t sweep_index,
                                std::uint64_t trial_index) noexcept;

/// Runs the experiment on up to `parallelism` threads (0 = one per hardware
/// thread). Points come out ordered by sweep value then by spec.methods.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t parallelism = 1,
                                bool keep_records = false);

/// CSV with header
/// experiment,sweep_value,method,mean_p_one_sided,mean_p_two_sided,stderr,
/// reject_rate,trials,n,base_seed
/// and reals printed with 9 significant digits.
void emit_csv(const ExperimentSpec& spec, const std::vector<CurvePoint>& points, std::ostream& out);

/// One JSON object per line, keys matching TrialRecord's fields.
void emit_records_jsonl(const std::vector<TrialRecord>& records, std::ostream& out);

/// Writes `text` to `path`; throws std::system_error naming the path on failure.
void write_file(const std::string& path, std::string_view text);

}  // namespace gapstat::harness
