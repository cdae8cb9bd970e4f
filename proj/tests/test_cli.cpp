#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gapstat/cli.hpp"
#include "gapstat/datagen.hpp"
#include "gapstat/error.hpp"
#include "gapstat/testkit.hpp"
#include "json.hpp"

using namespace gapstat;
using namespace gapstat::cli;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / ("gapstat_cli_" + name);
  std::ofstream(p, std::ios::binary) << contents;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<double> values(const SampleSet& s) { return {s.values().begin(), s.values().end()}; }

std::string lines_of(const SampleSet& s) {
  std::ostringstream o;
  o.precision(17);
  for (double v : s.values()) o << v << '\n';
  return o.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("input formats parse") {
    CHECK(InputFormat::parse("lines").kind == InputFormat::Kind::lines);
    const InputFormat csv = InputFormat::parse("csv:2");
    CHECK(csv.kind == InputFormat::Kind::csv);
    CHECK(csv.column == 2);
    CHECK(InputFormat::parse("f64le").kind == InputFormat::Kind::f64le);
    CHECK_THROWS_AS(InputFormat::parse("csv"), InvalidArgumentError);
    CHECK_THROWS_AS(InputFormat::parse("csv:x"), InvalidArgumentError);
    CHECK_THROWS_AS(InputFormat::parse("json"), InvalidArgumentError);
  }

  TEST_CASE("lines: whitespace and blank lines are fine, anything else fails") {
    const auto s = parse_input("  0.25\n\n\t0.5  \r\n+0.75\n\n", InputFormat::parse("lines"));
    CHECK(values(s) == std::vector<double>{0.25, 0.5, 0.75});
    try {
      parse_input("0.1\n0.2\nabc\n", InputFormat::parse("lines"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location() == "line 3");
    }
    CHECK_THROWS_AS(parse_input("0.1 0.2\n", InputFormat::parse("lines")), ParseError);
    CHECK_THROWS_AS(parse_input("0.1x\n", InputFormat::parse("lines")), ParseError);
    CHECK_THROWS_AS(parse_input("nan\n", InputFormat::parse("lines")), OutOfRangeError);
    CHECK_THROWS_AS(parse_input("1.5\n", InputFormat::parse("lines")), OutOfRangeError);
    CHECK_THROWS_AS(parse_input("\n \n", InputFormat::parse("lines")), EmptyInputError);
  }

  TEST_CASE("csv: column selection and header row") {
    const std::string text = "id,value,label\n1,0.2,a\n2,\"0.4\",b\n3,0.6,c\n";
    CHECK(values(parse_input(text, InputFormat::parse("csv:1"))) == std::vector<double>{0.2, 0.4, 0.6});
    CHECK(values(parse_input("0.1,0.9\n0.3,0.7\n", InputFormat::parse("csv:1"))) ==
          std::vector<double>{0.9, 0.7});
    try {
      parse_input("v\n0.2\nx\n", InputFormat::parse("csv:0"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location() == "line 3");
    }
    CHECK_THROWS_AS(parse_input("0.1,0.2\n0.3\n", InputFormat::parse("csv:1")), ParseError);
  }

  TEST_CASE("f64le: raw little-endian doubles") {
    const double in[] = {0.125, 0.5, 1.0};
    std::string bytes(sizeof in, '\0');
    std::memcpy(bytes.data(), in, sizeof in);  // test host is little-endian
    CHECK(values(parse_input(bytes, InputFormat::parse("f64le"))) == std::vector<double>{0.125, 0.5, 1.0});
    try {
      parse_input(bytes.substr(0, 20), InputFormat::parse("f64le"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location() == "byte 16");
    }
  }

  TEST_CASE("range mapping") {
    const auto s = parse_input("10\n15\n20\n", InputFormat::parse("lines"), RangeSpec(10, 20));
    CHECK(values(s) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(count_boundary_values(s) == 2);
    CHECK_THROWS_AS(parse_input("25\n", InputFormat::parse("lines"), RangeSpec(10, 20)), OutOfRangeError);
    CHECK_THROWS_AS(RangeSpec(1, 1), InvalidArgumentError);
  }

  TEST_CASE("test subcommand: exit codes") {
    const fs::path good = temp_file("good.txt", lines_of(datagen::gen_uniform(2000, 3)));
    const fs::path dup = temp_file("dup.txt", "0.1\n0.4\n0.4\n0.8\n");
    const fs::path junk = temp_file("junk.txt", "0.1\nzero point two\n");

    CHECK(invoke({"test", "--input", good.string()}).code == kPass);
    CHECK(invoke({"test", "--input", dup.string()}).code == kReject);  // min-gap sees the duplicate
    CHECK(invoke({"test", "--input", dup.string(), "--method", "max-gap"}).code == kPass);
    const Run bad = invoke({"test", "--input", junk.string()});
    CHECK(bad.code == kUsageOrData);
    CHECK(bad.err.find("line 2") != std::string::npos);
    CHECK(invoke({"test", "--input", "/nonexistent/file.txt"}).code == kIoFailure);
    CHECK(invoke({"test"}).code == kUsageOrData);
    CHECK(invoke({"test", "--input", good.string(), "--method", "ks"}).code == kUsageOrData);
    CHECK(invoke({"test", "--input", good.string(), "--alpha", "1.5"}).code == kUsageOrData);
    CHECK(invoke({"bogus"}).code == kUsageOrData);
    CHECK(invoke({"--help"}).code == kPass);
    for (const auto& p : {good, dup, junk}) fs::remove(p);
  }

  TEST_CASE("test subcommand: text report") {
    const fs::path p = temp_file("small.txt", "0.2\n0.5\n0.9\n");
    const Run r = invoke({"test", "--input", p.string()});
    CHECK(r.out.find("[chi_square]") != std::string::npos);
    CHECK(r.out.find("[max_gap]") != std::string::npos);
    CHECK(r.out.find("[min_gap]") != std::string::npos);
    CHECK(r.out.find("witness:             [0.5, 0.9]") != std::string::npos);
    CHECK(r.out.find("overall:") != std::string::npos);
    fs::remove(p);
  }

  TEST_CASE("test subcommand: JSON report round-trips") {
    const SampleSet data = datagen::gen_truncated_normal(3000, 0.3, 5);
    const fs::path p = temp_file("tn.txt", lines_of(data));
    const Run r = invoke({"test", "--input", p.string(), "--json", "--sided", "two"});
    CHECK(r.code == kReject);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("n_samples").get<std::size_t>() == 3000);
    CHECK(j.at("sidedness").get<std::string>() == "two_sided");
    CHECK(j.at("passed").get<bool>() == false);
    REQUIRE(j.at("results").size() == 3);

    // the parsed file is bit-identical to the generated data, so the printed
    // numbers must equal a direct computation exactly
    const testkit::SignificanceConfig cfg(0.05, testkit::Sidedness::two_sided);
    const auto chi = testkit::chi_square_uniformity_test(data, cfg);
    const auto mx = testkit::max_gap_test(data, cfg);
    const auto& jc = j.at("results").at(0);
    const auto& jm = j.at("results").at(1);
    CHECK(jc.at("method") == "chi_square");
    CHECK(jc.at("df").get<std::size_t>() == 2999);
    CHECK(jc.at("statistic").get<double>() == chi.statistic);
    CHECK(jc.at("p_one_sided").get<double>() == chi.p_one_sided.value());
    CHECK(jm.at("n_gaps").get<std::size_t>() == 3001);
    CHECK(jm.at("statistic").get<double>() == mx.statistic);
    CHECK(jm.at("p_two_sided").get<double>() == mx.p_two_sided.value());
    CHECK(jm.at("witness").at(0).get<double>() == mx.witness->left);
    CHECK(j.at("results").at(2).at("min_gap_law") == "exact");
    CHECK(j.at("results").at(2).at("p_tail") == "lower");
    fs::remove(p);
  }

  TEST_CASE("experiment subcommand") {
    const std::vector<std::string> base = {"experiment", "--name", "regularity", "--n", "1000",
                                           "--trials", "20", "--sweep", "1,10,100,1000"};
    const Run a = invoke(base);
    CHECK(a.code == kPass);
    std::istringstream rows(a.out);
    std::string line;
    int count = 0;
    while (std::getline(rows, line)) ++count;
    CHECK(count == 1 + 4 * 2);

    auto with = [&](std::vector<std::string> extra) {
      std::vector<std::string> v = base;
      v.insert(v.end(), extra.begin(), extra.end());
      return v;
    };
    CHECK(invoke(with({"--parallel", "4"})).out == a.out);
    CHECK(invoke(with({"--seed", "2"})).out != a.out);

    const fs::path out = fs::temp_directory_path() / "gapstat_cli_exp.csv";
    const fs::path recs = fs::temp_directory_path() / "gapstat_cli_exp.jsonl";
    CHECK(invoke(with({"--out", out.string(), "--records", recs.string(), "--methods",
                       "chi2,max-gap,min-gap"}))
              .code == kPass);
    std::istringstream rec_lines(slurp(recs));
    count = 0;
    while (std::getline(rec_lines, line)) ++count;
    CHECK(count == 4 * 20 * 3);
    CHECK(slurp(out).rfind("experiment,sweep_value,method", 0) == 0);
    fs::remove(out);
    fs::remove(recs);

    CHECK(invoke(with({"--out", "/nonexistent/dir/x.csv"})).code == kIoFailure);
    CHECK(invoke({"experiment", "--name", "regularity", "--n", "100", "--sweep", "1000"}).code ==
          kUsageOrData);
    CHECK(invoke({"experiment", "--name", "sideways"}).code == kUsageOrData);
    CHECK(invoke({"experiment", "--name", "uniform", "--trials", "0"}).code == kUsageOrData);
  }
}
