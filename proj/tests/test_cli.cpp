#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gl2tf/cli.hpp"
#include "gl2tf/error.hpp"
#include "gl2tf/problem_spec.hpp"

using namespace gl2tf;
using nlohmann::json;

namespace {

std::string spec(const std::string& name) { return std::string(GL2TF_SPEC_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json load(const std::string& name) {
  std::ifstream in(spec(name));
  return json::parse(in);
}

}  // namespace

TEST(Cli, ValidateMinimalSpec) {
  const CliRun r = run({"validate", spec("identity_full2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["command"], "validate");
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_TRUE(j["result"]["valid"].get<bool>());
  EXPECT_EQ(j["result"]["normalized"]["shift"]["theta"], 0.5);
}

TEST(Cli, ValidateReportsPaths) {
  CliRun r = run({"validate", spec("not_primitive.json")});
  EXPECT_EQ(r.code, 1);
  json e = json::parse(r.err);
  EXPECT_EQ(e["errors"][0]["code"], "NotPrimitive");
  EXPECT_EQ(e["errors"][0]["path"], "/shift/adjacency");

  r = run({"validate", spec("singular.json")});
  EXPECT_EQ(r.code, 1);
  e = json::parse(r.err);
  EXPECT_EQ(e["errors"][0]["code"], "Singular");
  EXPECT_EQ(e["errors"][0]["path"], "/cocycle/entries/1");
}

TEST(Cli, ParseErrors) {
  const std::string bad = testing::TempDir() + "bad.json";
  std::ofstream(bad) << "{ not json";
  CliRun r = run({"validate", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "ParseError");

  r = run({"frobnicate", spec("identity_full2.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);

  r = run({"pressure"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, SchemaErrors) {
  json j = load("identity_full2.json");
  j["cocycle"]["entries"].erase("2");
  auto issues = validate_problem_spec(j);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, ErrorCode::SchemaError);
  EXPECT_EQ(issues[0].path, "/cocycle/entries");

  j = load("identity_full2.json");
  j["cocycle"]["entries"]["3"] = {{1, 0}, {0, 1}};
  issues = validate_problem_spec(j);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].path, "/cocycle/entries/3");

  j = load("diag_two_state.json");
  j["measure"] = {{"transition", {{0.5, 0.6}, {0.5, 0.5}}}};
  issues = validate_problem_spec(j);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, ErrorCode::InvalidMeasure);

  j = load("golden_mean.json");
  j["potentials"]["pair"]["values"]["2-2-1"] = 1.0;
  issues = validate_problem_spec(j);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, ErrorCode::NotAdmissible);
  EXPECT_EQ(issues[0].path, "/potentials/pair/values/2-2-1");
}

TEST(Cli, NormalizationIsIdempotent) {
  for (const char* name : {"identity_full2.json", "diag_two_state.json", "triangular_two_state.json", "typical.json",
                           "golden_mean.json", "conformal.json"}) {
    const json once = parse_problem_spec(load(name)).normalized;
    const json twice = parse_problem_spec(once).normalized;
    EXPECT_EQ(once, twice) << name;
    EXPECT_EQ(spec_hash(once), spec_hash(twice));
  }
}

TEST(Cli, PointJsonRoundTrip) {
  const Point p = Point::make({0}, {1, 1, 0}, {1}, -2);
  const json j = point_to_json(p);
  EXPECT_EQ(j["offset"], 2);
  EXPECT_EQ(j["core"], json({2, 2, 1}));
  EXPECT_EQ(point_from_json(j), p);
}

TEST(Cli, PressureOnIdentity) {
  const CliRun r = run({"pressure", spec("identity_full2.json"), "--n-max", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json p = r.report()["result"];
  EXPECT_LE(p["lower"].get<double>(), std::log(2.0));
  EXPECT_GE(p["upper"].get<double>(), std::log(2.0));
  EXPECT_LT(p["upper"].get<double>() - p["lower"].get<double>(), 1e-9);
}

TEST(Cli, WordCapCanOnlyLower) {
  json j = load("identity_full2.json");
  j["capacity"] = {{"word_cap", 100}};
  const std::string path = testing::TempDir() + "capped.json";
  std::ofstream(path) << j.dump();
  const CliRun r = run({"pressure", path, "--n-max", "8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "CapacityExceeded");

  j["capacity"] = {{"word_cap", std::uint64_t{1} << 40}};
  EXPECT_EQ(parse_problem_spec(j).word_cap, kDefaultWordCap);
}

TEST(Cli, ClassifyTwoState) {
  for (const char* name : {"diag_two_state.json", "triangular_two_state.json"}) {
    const CliRun r = run({"classify", spec(name)});
    ASSERT_EQ(r.code, 0) << r.err;
    const json res = r.report()["result"];
    EXPECT_EQ(res["branch"], "ReducibleTwoErgodic") << name;
    EXPECT_EQ(res["equilibrium_states"].size(), 2u);
  }
}

TEST(Cli, UndeterminedExitCode) {
  const CliRun r = run({"typical", spec("diag_two_state.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["result"]["status"], "Undetermined");
  const CliRun w = run({"witness", spec("diag_two_state.json")});
  EXPECT_EQ(w.code, 2);
}

TEST(Cli, TypicalCertificate) {
  const CliRun r = run({"typical", spec("typical.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json c = r.report()["result"]["certificate"];
  EXPECT_EQ(c["p"]["right_period"], json({1}));
}

TEST(Cli, Holonomy) {
  const std::string x = R"({"left_period":[1],"core":[2],"right_period":[1],"offset":0})";
  const std::string p = R"({"left_period":[1],"core":[],"right_period":[1],"offset":0})";
  CliRun r = run({"holonomy", spec("typical.json"), "--x", p, "--y", x, "--kind", "loop"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.report()["result"].contains("psi"));
  r = run({"holonomy", spec("typical.json"), "--x", x, "--y", p});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"holonomy", spec("typical.json"), "--x", x, "--y", R"({"left_period":[2],"core":[],"right_period":[2]})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "NotOnStableSet");
}

TEST(Cli, AdditivePressureAndLivsic) {
  CliRun r = run({"pressure-additive", spec("golden_mean.json"), "--potential", "zero"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report()["result"]["value"].get<double>(), std::log((1.0 + std::sqrt(5.0)) / 2.0), 1e-12);
  r = run({"livsic", spec("triangular_two_state.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["status"], "NotCohomologous");
  r = run({"livsic", spec("golden_mean.json"), "--phi", "zero", "--psi", "zero"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["status"], "PossiblyCohomologous");
}

TEST(Cli, ReproduciblePayloads) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--seed", "7", "lyapunov", spec("typical.json"), "--n", "500", "--trials", "8"},
        std::vector<std::string>{"--seed", "3", "qm", spec("typical.json"), "--n", "7", "--k-max", "2", "--samples", "300"},
        std::vector<std::string>{"gibbs", spec("typical.json"), "--n", "5", "--n-max", "6"}}) {
    const CliRun a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.report()["result"].dump(), b.report()["result"].dump());
    EXPECT_EQ(a.report()["spec_hash"], b.report()["spec_hash"]);
  }
}

TEST(Cli, JobsDoNotChangePayload) {
  const auto a = run({"--jobs", "1", "--seed", "5", "lyapunov", spec("typical.json"), "--n", "300", "--trials", "6"});
  const auto b = run({"--jobs", "3", "--seed", "5", "lyapunov", spec("typical.json"), "--n", "300", "--trials", "6"});
  EXPECT_EQ(a.report()["result"].dump(), b.report()["result"].dump());
}

TEST(Cli, TableOutput) {
  const CliRun r = run({"--output", "table", "pressure-additive", spec("golden_mean.json"), "--potential", "pair"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("result.value: "), std::string::npos);
  EXPECT_NE(r.out.find("command: pressure-additive"), std::string::npos);
}
