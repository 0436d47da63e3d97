#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfl/commands.hpp"

using namespace pfl;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5"), Complex(0.5, 0.0));
  EXPECT_EQ(parse_complex("-0.2"), Complex(-0.2, 0.0));
  EXPECT_EQ(parse_complex("0.5+0.3i"), Complex(0.5, 0.3));
  EXPECT_EQ(parse_complex("0.5-0.3i"), Complex(0.5, -0.3));
  EXPECT_EQ(parse_complex("0.3i"), Complex(0.0, 0.3));
  EXPECT_EQ(parse_complex("i"), Complex(0.0, 1.0));
  for (const char* bad : {"", "abc", "0.5+", "1+2j", "0.5 0.3"}) {
    EXPECT_THROW(parse_complex(bad), ParameterError) << bad;
  }
}

TEST(Commands, GramReport) {
  const ReportDocument doc = cmd_gram({0.5, 2});
  EXPECT_TRUE(doc.all_pass());
  ASSERT_FALSE(doc.matrices.empty());
  EXPECT_NEAR(doc.matrices[0].second(1, 1).real(), 1.25, 1e-14);
}

TEST(Commands, BlockFixtureAndCholesky) {
  EXPECT_TRUE(cmd_block({0.4, 1, "fixture"}).all_pass());
  EXPECT_TRUE(cmd_block({0.4, 2, "fixture"}).all_pass());
  EXPECT_TRUE(cmd_block({Complex(0.5, 0.3), 5, "cholesky"}).all_pass());
  EXPECT_THROW(cmd_block({0.4, 3, "fixture"}), ParameterError);
  EXPECT_THROW(cmd_block({0.4, 1, "bogus"}), ParameterError);
}

TEST(Commands, NoGoBothRegimes) {
  EXPECT_TRUE(cmd_nogo({0.0, {4, 8}}).all_pass());
  EXPECT_TRUE(cmd_nogo({0.5, {4, 8, 12}}).all_pass());
}

TEST(Commands, AssembleAndBicoherent) {
  EXPECT_TRUE(cmd_assemble({0.5, 4, "cholesky"}).all_pass());
  BicoherentCommand b;
  b.n_states = 3;
  b.alpha = "0.3*x";
  b.symbol = "x";
  EXPECT_TRUE(cmd_bicoherent(b).all_pass());
  b.basis = "fixture";
  b.gamma = 0.4;
  EXPECT_TRUE(cmd_bicoherent(b).all_pass());
  b.basis = "nope";
  EXPECT_THROW(cmd_bicoherent(b), ParameterError);
}

TEST(Commands, VerifyPaper) {
  for (double g : {0.2, 0.4, 0.8}) EXPECT_TRUE(cmd_verify_paper(g).all_pass()) << g;
  EXPECT_THROW(cmd_verify_paper(-0.1), ParameterError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"gram", "--gamma", "0.5", "--level", "3"}).code, kExitPass);
  EXPECT_EQ(run({"--help"}).code, kExitPass);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"gram", "--level", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"gram", "--gamma", "zzz", "--level", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"gram", "--gamma", "1.5", "--level", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"nogo", "--theta", "0.5", "--cutoffs", "8,4"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, CheckFailureGivesExitOne) {
  // A huge kernel threshold sweeps regular singular vectors into the
  // kernel, so the dimension-one check fails.
  const CliRun r = run({"nogo", "--theta", "0", "--cutoffs", "4", "--kernel-tol", "2"});
  EXPECT_EQ(r.code, kExitCheckFailure);
  EXPECT_NE(r.out.find("\"all_pass\": false"), std::string::npos);
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"assemble", "--gamma", "0.5+0.3i", "--max-level", "3"};
  const CliRun first = run(args);
  const CliRun second = run(args);
  ASSERT_EQ(first.code, kExitPass);
  EXPECT_EQ(first.out, second.out);
  const Json j = Json::parse(first.out);
  EXPECT_EQ(j["version"], kSchemaVersion);
  EXPECT_EQ(j["command"], "assemble");
}

TEST(Cli, WritesToOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "pfl_cli_out_test.json";
  std::filesystem::remove(path);
  const CliRun r = run({"verify-paper", "--gamma", "0.4", "--out", path.string()});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["command"], "verify-paper");
  EXPECT_EQ(j["all_pass"], true);
  std::filesystem::remove(path);
}
