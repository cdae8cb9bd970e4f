#include "gapstat/cli.hpp"

#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"

#include "gapstat/dist.hpp"
#include "gapstat/error.hpp"
#include "gapstat/harness.hpp"
#include "gapstat/testkit.hpp"

namespace gapstat::cli {

// ---------------------------------------------------------------------------
// Input parsing

InputFormat InputFormat::parse(std::string_view text) {
  if (text == "lines") return InputFormat{Kind::lines, 0};
  if (text == "f64le") return InputFormat{Kind::f64le, 0};
  if (text.starts_with("csv:")) {
    const std::string_view col = text.substr(4);
    std::size_t c = 0;
    const auto [end, ec] = std::from_chars(col.data(), col.data() + col.size(), c);
    if (ec == std::errc() && end == col.data() + col.size() && !col.empty()) {
      return InputFormat{Kind::csv, c};
    }
  }
  throw InvalidArgumentError("unknown input format '" + std::string(text) +
                             "' (expected lines, csv:COL or f64le)");
}

RangeSpec::RangeSpec(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgumentError("range needs finite LO < HI");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::optional<double> to_number(std::string_view token) {
  if (token.starts_with('+')) token.remove_prefix(1);
  if (token.empty()) return std::nullopt;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size()) return std::nullopt;
  return v;
}

template <typename F>
void for_each_line(std::string_view bytes, F&& visit) {
  std::size_t line_no = 0;
  while (!bytes.empty()) {
    ++line_no;
    const auto nl = bytes.find('\n');
    const std::string_view line = bytes.substr(0, nl);
    visit(line_no, line);
    if (nl == std::string_view::npos) break;
    bytes.remove_prefix(nl + 1);
  }
}

std::vector<double> parse_lines(std::string_view bytes) {
  std::vector<double> values;
  for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    const std::string_view token = trim(line);
    if (token.empty()) return;
    const auto v = to_number(token);
    if (!v) {
      throw ParseError("line " + std::to_string(line_no),
                       "not a number: '" + std::string(token) + "'");
    }
    values.push_back(*v);
  });
  return values;
}

std::vector<double> parse_csv(std::string_view bytes, std::size_t column) {
  std::vector<double> values;
  bool first_row = true;
  for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty()) return;
    std::string_view rest = line;
    std::string_view field;
    bool found = false;
    for (std::size_t i = 0;; ++i) {
      const auto comma = rest.find(',');
      if (i == column) {
        field = rest.substr(0, comma);
        found = true;
        break;
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    const bool header_candidate = first_row;
    first_row = false;
    if (!found) {
      throw ParseError("line " + std::to_string(line_no),
                       "row has no column " + std::to_string(column));
    }
    field = trim(field);
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = trim(field.substr(1, field.size() - 2));
    }
    const auto v = to_number(field);
    if (!v) {
      if (header_candidate) return;
      throw ParseError("line " + std::to_string(line_no),
                       "not a number: '" + std::string(field) + "'");
    }
    values.push_back(*v);
  });
  return values;
}

std::vector<double> parse_f64le(std::string_view bytes) {
  if (bytes.size() % 8 != 0) {
    throw ParseError("byte " + std::to_string(bytes.size() - bytes.size() % 8),
                     "f64le input length " + std::to_string(bytes.size()) +
                         " is not a multiple of 8");
  }
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + 8 * i, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

}  // namespace

SampleSet parse_input(std::string_view bytes, const InputFormat& format,
                      const std::optional<RangeSpec>& range) {
  std::vector<double> values;
  switch (format.kind) {
    case InputFormat::Kind::lines: values = parse_lines(bytes); break;
    case InputFormat::Kind::csv: values = parse_csv(bytes, format.column); break;
    case InputFormat::Kind::f64le: values = parse_f64le(bytes); break;
  }
  if (range) {
    const double width = range->hi - range->lo;
    for (double& v : values) v = (v - range->lo) / width;
  }
  return SampleSet::validate(std::move(values));
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::system_error(errno, std::generic_category(), "cannot read " + path);
  return data;
}

std::size_t count_boundary_values(const SampleSet& samples) noexcept {
  std::size_t n = 0;
  for (double v : samples.values()) n += (v == 0.0 || v == 1.0) ? 1 : 0;
  return n;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

using testkit::Method;

Method parse_method(std::string_view s) {
  if (s == "chi2" || s == "chi_square") return Method::chi_square;
  if (s == "max-gap" || s == "max_gap") return Method::max_gap;
  if (s == "min-gap" || s == "min_gap") return Method::min_gap;
  throw InvalidArgumentError("unknown method '" + std::string(s) +
                             "' (expected chi2, max-gap or min-gap)");
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct TestFlags {
  std::string method;
  std::string input;
  std::string format = "lines";
  std::vector<double> range;
  double alpha = 0.05;
  std::string sided = "one";
  std::string min_gap_law = "exact";
  bool json = false;
};

struct MethodReport {
  testkit::TestOutcome outcome;
  double expected;
  std::string expected_note;
  std::string tail;
};

MethodReport run_one(Method m, const SampleSet& samples, const testkit::SignificanceConfig& cfg,
                     testkit::MinGapLaw law) {
  switch (m) {
    case Method::chi_square: {
      auto o = testkit::chi_square_uniformity_test(samples, cfg);
      return {o, static_cast<double>(o.n_gaps_or_df), "mean of chi-square(df)", "upper"};
    }
    case Method::max_gap: {
      auto o = testkit::max_gap_test(samples, cfg);
      return {o, dist::expected_max_gap(dist::GapCount(o.n_gaps_or_df)),
              "(gamma + ln N) / N, asymptotic (the true mean at N = 1 is 1, not gamma)", "upper"};
    }
    case Method::min_gap: {
      auto o = testkit::min_gap_test(samples, cfg, law);
      const dist::GapCount n(o.n_gaps_or_df);
      if (law == testkit::MinGapLaw::exact) {
        return {o, dist::expected_min_gap_exact(n), "1 / N^2, exact", "lower"};
      }
      return {o, dist::expected_min_gap_paper(n),
              "paper-form (gamma + ln N + H_{N-1}) / N; exceeds the max-gap mean and is not "
              "predictive of the min gap",
              "lower"};
    }
  }
  throw InvalidArgumentError("unknown method");
}

int cmd_test(const TestFlags& f, std::ostream& out) {
  const InputFormat format = InputFormat::parse(f.format);
  std::optional<RangeSpec> range;
  if (!f.range.empty()) range.emplace(f.range.at(0), f.range.at(1));
  if (f.sided != "one" && f.sided != "two") {
    throw InvalidArgumentError("--sided must be one or two");
  }
  const testkit::SignificanceConfig cfg(
      f.alpha, f.sided == "one" ? testkit::Sidedness::one_sided : testkit::Sidedness::two_sided);
  if (f.min_gap_law != "exact" && f.min_gap_law != "paper") {
    throw InvalidArgumentError("--min-gap-law must be exact or paper");
  }
  const auto law = f.min_gap_law == "exact" ? testkit::MinGapLaw::exact : testkit::MinGapLaw::paper;
  std::vector<Method> methods;
  if (f.method.empty()) {
    methods = {Method::chi_square, Method::max_gap, Method::min_gap};
  } else {
    methods = {parse_method(f.method)};
  }

  const std::string bytes = read_source(f.input);
  const SampleSet samples = parse_input(bytes, format, range);
  const std::size_t boundary = count_boundary_values(samples);

  std::vector<MethodReport> reports;
  for (Method m : methods) reports.push_back(run_one(m, samples, cfg, law));
  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.outcome.passed;

  if (f.json) {
    nlohmann::json j;
    j["input"] = f.input;
    j["n_samples"] = samples.count();
    j["boundary_values"] = boundary;
    j["alpha"] = cfg.alpha();
    j["sidedness"] = testkit::to_string(cfg.sidedness());
    j["results"] = nlohmann::json::array();
    for (const auto& r : reports) {
      const auto& o = r.outcome;
      nlohmann::json e = {{"method", testkit::to_string(o.method)},
                          {o.method == Method::chi_square ? "df" : "n_gaps", o.n_gaps_or_df},
                          {"statistic", o.statistic},
                          {"p_one_sided", o.p_one_sided.value()},
                          {"p_tail", r.tail},
                          {"p_two_sided", o.p_two_sided.value()},
                          {"passed", o.passed},
                          {"expected_statistic", r.expected},
                          {"expected_note", r.expected_note}};
      if (o.witness) e["witness"] = {o.witness->left, o.witness->right};
      if (o.method == Method::min_gap) e["min_gap_law"] = testkit::to_string(law);
      j["results"].push_back(std::move(e));
    }
    j["passed"] = all_passed;
    out << j.dump(2) << '\n';
  } else {
    out << "input: " << f.input << " (" << samples.count() << " samples, " << boundary
        << " boundary values)\n";
    out << "alpha: " << num(cfg.alpha()) << " ("
        << (cfg.sidedness() == testkit::Sidedness::one_sided ? "one-sided" : "two-sided")
        << ")\n";
    for (const auto& r : reports) {
      const auto& o = r.outcome;
      out << '\n' << '[' << testkit::to_string(o.method) << "]\n";
      if (o.method == Method::chi_square) {
        out << "  df:                  " << o.n_gaps_or_df << '\n';
      } else {
        out << "  N (gaps):            " << o.n_gaps_or_df << '\n';
      }
      out << "  statistic:           " << num(o.statistic) << '\n';
      out << "  expected under null: " << num(r.expected) << "  [" << r.expected_note << "]\n";
      out << "  p (" << r.tail << " tail):      " << num(o.p_one_sided.value()) << '\n';
      out << "  p (two-sided):       " << num(o.p_two_sided.value()) << '\n';
      if (o.witness) {
        out << "  witness:             [" << num(o.witness->left) << ", "
            << num(o.witness->right) << "]\n";
      }
      if (o.method == Method::min_gap) {
        out << "  law:                 " << testkit::to_string(law) << '\n';
      }
      out << "  decision:            " << (o.passed ? "PASS" : "REJECT") << '\n';
    }
    out << "\noverall: " << (all_passed ? "PASS" : "REJECT") << '\n';
  }
  return all_passed ? kPass : kReject;
}

struct ExperimentFlags {
  std::string name;
  std::size_t n = 10000;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  std::string sweep;
  std::string methods;
  double alpha = 0.05;
  double band_center = 0.5;
  std::string min_gap_law = "exact";
  std::string out;
  std::string records;
  std::size_t parallel = 1;
};

harness::ExperimentKind parse_experiment(std::string_view s) {
  using harness::ExperimentKind;
  if (s == "uniform") return ExperimentKind::uniform_null;
  if (s == "variance") return ExperimentKind::variance_sweep;
  if (s == "missing-band") return ExperimentKind::missing_band_sweep;
  if (s == "regularity") return ExperimentKind::regularity_sweep;
  throw InvalidArgumentError("unknown experiment '" + std::string(s) +
                             "' (expected uniform, variance, missing-band or regularity)");
}

int cmd_experiment(const ExperimentFlags& f, std::ostream& out) {
  harness::ExperimentSpec spec;
  spec.name = parse_experiment(f.name);
  spec.n = f.n;
  spec.trials = f.trials;
  spec.base_seed = f.seed;
  spec.alpha = f.alpha;
  spec.band_center = f.band_center;
  if (f.min_gap_law != "exact" && f.min_gap_law != "paper") {
    throw InvalidArgumentError("--min-gap-law must be exact or paper");
  }
  spec.min_gap_law =
      f.min_gap_law == "exact" ? testkit::MinGapLaw::exact : testkit::MinGapLaw::paper;
  if (f.sweep.empty()) {
    spec.sweep = harness::default_sweep(spec.name);
  } else {
    for (std::string_view tok : split_commas(f.sweep)) {
      const auto v = to_number(tok);
      if (!v) throw InvalidArgumentError("bad sweep value '" + std::string(tok) + "'");
      spec.sweep.push_back(*v);
    }
  }
  if (!f.methods.empty()) {
    spec.methods.clear();
    for (std::string_view tok : split_commas(f.methods)) spec.methods.push_back(parse_method(tok));
  }
  harness::validate(spec);

  const harness::ExperimentResult result =
      harness::run_experiment(spec, f.parallel, !f.records.empty());
  std::ostringstream csv;
  harness::emit_csv(spec, result.points, csv);
  if (f.out.empty()) {
    out << csv.str();
  } else {
    harness::write_file(f.out, csv.str());
  }
  if (!f.records.empty()) {
    std::ostringstream lines;
    harness::emit_records_jsonl(result.records, lines);
    harness::write_file(f.records, lines.str());
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gapstat: gap-statistic and chi-square uniformity tests"};
  app.require_subcommand(1);

  TestFlags tf;
  CLI::App* test = app.add_subcommand("test", "Test a data set for uniformity on [0, 1]");
  test->add_option("--method", tf.method, "chi2, max-gap or min-gap (default: all three)");
  test->add_option("--input", tf.input, "Input file, or - for stdin")->required();
  test->add_option("--format", tf.format, "lines, csv:COL (0-based) or f64le")
      ->capture_default_str();
  test->add_option("--range", tf.range, "Map [LO, HI] affinely onto [0, 1]")->expected(2);
  test->add_option("--alpha", tf.alpha, "Significance level")->capture_default_str();
  test->add_option("--sided", tf.sided, "one or two")->capture_default_str();
  test->add_option("--min-gap-law", tf.min_gap_law, "exact or paper")->capture_default_str();
  test->add_flag("--json", tf.json, "Emit a JSON report");

  ExperimentFlags ef;
  CLI::App* exp = app.add_subcommand("experiment", "Run a repeated-trial sensitivity experiment");
  exp->add_option("--name", ef.name, "uniform, variance, missing-band or regularity")->required();
  exp->add_option("--n", ef.n, "Samples per data set")->capture_default_str();
  exp->add_option("--trials", ef.trials, "Trials per sweep value")->capture_default_str();
  exp->add_option("--seed", ef.seed, "Base seed")->capture_default_str();
  exp->add_option("--sweep", ef.sweep, "Comma-separated sweep values (sigma, width or k)");
  exp->add_option("--methods", ef.methods, "Comma-separated methods (default chi2,max-gap)");
  exp->add_option("--alpha", ef.alpha, "Significance level for reject_rate")
      ->capture_default_str();
  exp->add_option("--band-center", ef.band_center, "Center of the excluded band")
      ->capture_default_str();
  exp->add_option("--min-gap-law", ef.min_gap_law, "exact or paper")->capture_default_str();
  exp->add_option("--out", ef.out, "Write CSV here instead of stdout");
  exp->add_option("--records", ef.records, "Also write per-trial JSON lines here");
  exp->add_option("--parallel", ef.parallel, "Worker threads (0 = all cores)")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageOrData;
  }

  try {
    if (test->parsed()) return cmd_test(tf, out);
    return cmd_experiment(ef, out);
  } catch (const std::system_error& e) {
    err << "gapstat: I/O error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const Error& e) {
    err << "gapstat: " << e.what() << '\n';
    return kUsageOrData;
  }
}

}  // namespace gapstat::cli
