#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapstat/sample_set.hpp"

namespace gapstat::cli {

/// Exit codes of the `gapstat` binary. Stable.
enum ExitCode : int { kPass = 0, kReject = 1, kUsageOrData = 2, kIoFailure = 3 };

struct InputFormat {
  enum class Kind { lines, csv, f64le };
  Kind kind = Kind::lines;
  std::size_t column = 0;  ///< csv only, 0-based

  /// Parses "lines", "csv:COL" or "f64le".
  static InputFormat parse(std::string_view text);
};

/// Affine map [lo, hi] -> [0, 1] applied before validation.
struct RangeSpec {
  RangeSpec(double lo, double hi);
  double lo;
  double hi;
};

/// Parses raw input bytes. `lines` tolerates surrounding whitespace and blank
/// lines; any other non-numeric content is a ParseError naming the line (or
/// byte offset for f64le). A csv file's first row is skipped if its selected
/// field is not numeric. Values are then mapped through `range`, if given,
/// and validated.
SampleSet parse_input(std::string_view bytes, const InputFormat& format,
                      const std::optional<RangeSpec>& range = std::nullopt);

/// Reads a whole file ("-" for stdin). Throws std::system_error on I/O failure.
std::string read_source(const std::string& path);

/// Values exactly equal to 0 or 1.
std::size_t count_boundary_values(const SampleSet& samples) noexcept;

/// Entry point of the `gapstat` binary; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapstat::cli
