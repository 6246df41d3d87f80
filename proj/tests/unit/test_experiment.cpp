#include "mclab/error.hpp"
#include "mclab/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace mclab;

namespace {

const char* kSmall = R"({
  "name": "small",
  "analysis": "merging",
  "family": ["constant_rate_random", "pb0"],
  "grid": {"N": [4, 6]},
  "params": {"a": 1.2, "A": 2.0},
  "runs": 3,
  "seed": 9,
  "metric": "tv",
  "epsilon": 0.25,
  "n_max": 2000
})";

// Row equality with NaN == NaN (graph-only columns are NaN for sequence families).
bool same_rows(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!(a[i][j] == b[i][j] || (std::isnan(a[i][j]) && std::isnan(b[i][j])))) return false;
    }
  }
  return true;
}

std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST(Scenario, ParsesAndExpandsFamilyAxis) {
  const auto s = parse_scenario(kSmall);
  EXPECT_EQ(s.families.size(), 2u);
  EXPECT_EQ(s.runs, 3u);
  const auto r = run_scenario(s);
  EXPECT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(r.columns[2], "family");
  EXPECT_EQ(r.columns[3], "N");
  EXPECT_EQ(r.hash, sha256_hex(kSmall));
  EXPECT_TRUE(r.summary.count("median(time)[family=pb0,N=6]"));
  for (std::size_t i = 0; i < r.rows.size(); ++i) EXPECT_EQ(r.rows[i][0], static_cast<double>(i / 3));
}

TEST(Scenario, SchemaErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging", "family": "pb0", "bogus": 1})"), "/bogus");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "nope", "family": "pb0"})"), "/analysis");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging"})"), "/family");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "spectral", "family": "pb0"})"), "/family");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging", "family": "pb0", "grid": {"N": [4, "a"]}})"), "/grid/N/1");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging", "family": "pb0", "runs": 0})"), "/runs");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging", "family": "pb0", "epsilon": 2})"), "/epsilon");
  EXPECT_EQ(field_of(R"({"name": "x", "analysis": "merging", "family": "pb0", "ratio_check": {"column": "nope"}})"),
            "/ratio_check/column");
  EXPECT_EQ(field_of("{"), "");
  EXPECT_THROW(run_scenario(std::string("no-such-scenario")), ConfigError);
}

TEST(Scenario, DeterministicAndScheduleIndependent) {
  const auto s = parse_scenario(kSmall);
  RunOptions serial, parallel;
  parallel.threads = 4;
  const auto a = run_scenario(s, serial);
  const auto b = run_scenario(s, parallel);
  const auto c = run_scenario(s, serial);
  EXPECT_TRUE(same_rows(a.rows, b.rows));
  EXPECT_EQ(body(render(a, EmitFormat::csv)), body(render(c, EmitFormat::csv)));
  RunOptions reseeded;
  reseeded.seed = 10;
  EXPECT_FALSE(same_rows(run_scenario(s, reseeded).rows, a.rows));
}

TEST(Scenario, RatioCheckAndReportMode) {
  const std::string base = R"({"name": "gap", "analysis": "spectral", "family": "lazy_stick", "grid": {"N": [8, 16]},
    "ratio_check": {"column": "gap", "min": 0.5, "max": 0.6})";
  const auto strict = run_scenario(parse_scenario(base + "}"));
  EXPECT_FALSE(strict.ok());
  ASSERT_EQ(strict.violations.size(), 1u);
  EXPECT_NE(strict.violations[0].find("ratio(gap)"), std::string::npos);
  const auto report = run_scenario(parse_scenario(base + R"(, "mode": "report"})"));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.summary.at("violation_count"), 0.0);
}

TEST(Emit, CsvJsonPlotdata) {
  const auto r = run_scenario(parse_scenario(kSmall));
  const auto csv = render(r, EmitFormat::csv);
  EXPECT_EQ(csv.rfind("# mclab ", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 12);

  const auto back = parse_result_json(render(r, EmitFormat::json));
  EXPECT_EQ(back.summary, r.summary);
  EXPECT_TRUE(same_rows(back.rows, r.rows));
  EXPECT_EQ(back.hash, r.hash);

  const auto plot = render(r, EmitFormat::plotdata);
  EXPECT_EQ(plot.rfind("# median(time)", 0), 0u);

  ResultSet empty;
  empty.scenario = "empty";
  empty.columns = {"a", "b"};
  const auto header_only = render(empty, EmitFormat::csv);
  EXPECT_EQ(body(header_only), "a,b\n");

  const auto dir = std::filesystem::temp_directory_path() / "mclab_emit_test";
  emit(r, EmitFormat::json, dir / "out.json");
  EXPECT_TRUE(std::filesystem::exists(dir / "out.json"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(parse_emit_format("xml"), InvalidArgument);
}

TEST(Emit, NonFiniteValuesSurviveJson) {
  ResultSet r;
  r.scenario = "inf";
  r.columns = {"x"};
  r.rows = {{std::numeric_limits<double>::infinity()}};
  r.summary["m"] = std::numeric_limits<double>::infinity();
  const auto back = parse_result_json(render(r, EmitFormat::json));
  EXPECT_TRUE(std::isinf(back.rows[0][0]));
  EXPECT_TRUE(std::isinf(back.summary.at("m")));
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Builtins, AllParse) {
  const auto names = builtin_scenarios();
  EXPECT_GE(names.size(), 10u);
  for (const auto& n : names) {
    const auto s = parse_scenario(builtin_scenario_text(n));
    EXPECT_EQ(s.name, n);
  }
}
