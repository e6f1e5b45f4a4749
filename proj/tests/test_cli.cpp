#include <cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using subriem::cli::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = subriem::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string spec(const std::string &name) { return std::string(SUBRIEM_SOURCE_DIR) + "/specs/" + name; }

std::string temp_spec(const std::string &name, const std::string &text) {
  auto path = std::filesystem::temp_directory_path() / ("subriem_test_" + name + ".spec");
  std::ofstream(path) << text;
  return path.string();
}

void expect_schema_keys(const json &j) {
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, subriem::report::top_level_keys());
  EXPECT_EQ(j["provenance"]["schema_version"], "1.0");
  EXPECT_TRUE(j["provenance"]["assumptions"].contains("metric_extension"));
  EXPECT_TRUE(j["provenance"]["assumptions"].contains("bracket_convention"));
  EXPECT_TRUE(j["discrepancies"].is_array());
}

} // namespace

TEST(Cli, StepOfSpecFile) {
  auto r = run({"step", "--spec", spec("s3_h12.spec")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  expect_schema_keys(j);
  EXPECT_EQ(j["results"]["step"], 2);
  EXPECT_EQ(j["results"]["ranks"], json::array({2, 3}));
}

TEST(Cli, StepOfOtherSpecs) {
  EXPECT_EQ(run({"step", "--spec", spec("s3_h13.spec")}).report()["results"]["step"], 2);
  EXPECT_EQ(run({"step", "--spec", spec("s3_full.spec")}).report()["results"]["step"], 1);
  auto s7 = run({"step", "--spec", spec("s7_h123456.spec")}).report();
  EXPECT_EQ(s7["results"]["ranks"], json::array({6, 7}));
}

TEST(Cli, FlagOfBuiltinSubframe) {
  auto r = run({"flag", "--example", "s7", "--horizontal", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.report()["results"];
  EXPECT_EQ(res["step"], "infinite");
  EXPECT_EQ(res["ranks"], json::array({2, 3, 3}));
}

TEST(Cli, ClassifyS7RankTwo) {
  auto r = run({"classify", "--example", "s7", "--rank", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = r.report()["results"]["rows"];
  ASSERT_EQ(rows.size(), 21u);
  for (const auto &row : rows) EXPECT_EQ(row["step"], "infinite");
}

TEST(Cli, VerifyS3LogsDiscrepancies) {
  auto r = run({"verify", "--example", "s3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  expect_schema_keys(j);
  EXPECT_TRUE(j["results"]["passed"]);
  bool saw = false;
  for (const auto &d : j["discrepancies"]) {
    EXPECT_EQ(d["trust"], "table-reported");
    if (d["id"] == "o-nabla_X3 X1") {
      saw = true;
      EXPECT_EQ(d["expected"], "-3*X2");
      EXPECT_EQ(d["computed"], "-2*X2");
    }
  }
  EXPECT_TRUE(saw);
  EXPECT_TRUE(j["provenance"].contains("trust_policy"));
}

TEST(Cli, EveryCommandEmitsSchemaKeys) {
  const std::vector<std::vector<std::string>> cmds{
      {"check", "--example", "s3"},
      {"metric", "--example", "s3", "--horizontal", "1,3"},
      {"connection", "--example", "s3", "--kind", "weitzenbock"},
      {"connection", "--example", "s3", "--kind", "hat"},
      {"torsion", "--spec", spec("s3_h12.spec")},
      {"curvature", "--example", "s3", "--kind", "sr"},
      {"killing", "--example", "s3"},
      {"classify", "--example", "s3"},
  };
  for (const auto &c : cmds) {
    auto r = run(c);
    ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
    auto j = r.report();
    expect_schema_keys(j);
    EXPECT_EQ(j["name"], c[0]);
  }
}

TEST(Cli, TextFormat) {
  auto r = run({"classify", "--example", "s3", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("X1"), std::string::npos);
  EXPECT_FALSE(json::accept(r.out));
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"step"}).code, 1);
  EXPECT_EQ(run({"step", "--spec", spec("does_not_exist.spec")}).code, 1);
  EXPECT_EQ(run({"step", "--example", "s15"}).code, 1);
  EXPECT_EQ(run({"step", "--example", "s3", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"verify"}).code, 1);
  EXPECT_EQ(run({"step", "--spec", spec("s2_rotation.spec")}).code, 1);
  EXPECT_EQ(run({"step", "--example", "s3", "--horizontal", "1,1"}).code, 1);
  EXPECT_EQ(run({"step", "--example", "s3", "--horizontal", "9"}).code, 1);
  EXPECT_EQ(run({"classify", "--example", "s3", "--rank", "5"}).code, 1);
  auto bad = temp_spec("syntax", "ambient_dim = 3\nhorizontal = [y1 +, y0, 0]\n");
  auto r = run({"step", "--spec", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  auto radial = temp_spec("radial", "ambient_dim = 3\nhorizontal = [y0, y1, y2]\n");
  EXPECT_EQ(run({"step", "--spec", radial}).code, 1);
}

TEST(Cli, VerificationFailureExitsTwo) {
  auto r = run({"check", "--spec", spec("s2_rotation.spec")});
  EXPECT_EQ(r.code, 2);
  auto j = r.report();
  expect_schema_keys(j);
  EXPECT_FALSE(j["results"]["passed"]);
  EXPECT_FALSE(j["results"]["dual_forms_polynomial"]);
}
