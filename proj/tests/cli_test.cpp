#include "powerops/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using powerops::cli::json;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = powerops::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  Outcome o = invoke(args);
  EXPECT_EQ(o.status, 0) << o.err;
  return json::parse(o.out);
}

} // namespace

TEST(Cli, TnOfCyclic) {
  json doc = invoke_json({"tn", "--module", "Z/5", "--n", "2"});
  EXPECT_EQ(doc["command"], "tn");
  EXPECT_EQ(doc["result"]["group"], "Z/5 + Z/5");
  EXPECT_EQ(doc["result"]["torsion"], json({5, 5}));
  EXPECT_FALSE(doc["citations"].empty());
}

TEST(Cli, TnOfIntegersIsPartitionRank) {
  json doc = invoke_json({"tn", "--module", "Z", "--n", "4"});
  EXPECT_EQ(doc["result"]["group"], "Z^5");
  EXPECT_EQ(doc["result"]["generators"].size(), 5u);
}

TEST(Cli, TnOfZeroModule) {
  json doc = invoke_json({"tn", "--module", "0", "--n", "3"});
  EXPECT_EQ(doc["result"]["group"], "0");
}

TEST(Cli, CompletedTn) {
  json doc = invoke_json({"tn", "--module", "Z/6", "--n", "2", "--p", "2"});
  EXPECT_EQ(doc["result"]["group"], "Z/4");
  EXPECT_EQ(doc["result"]["completed"], true);
}

TEST(Cli, TransferPaperBasis) {
  json doc = invoke_json({"transfer", "--m", "3", "--p", "3", "--basis", "paper"});
  EXPECT_EQ(doc["result"]["matrix"], json({{10, 1, 8}, {1, 10, 8}, {8, 8, 19}}));
  doc = invoke_json({"transfer", "--m", "4", "--p", "4", "--basis", "paper"});
  EXPECT_EQ(doc["result"]["matrix"][0], json({35, 1, 20, 45, 15}));
  EXPECT_EQ(doc["result"]["matrix"][4], json({15, 45, 60, 81, 115}));
}

TEST(Cli, TransferDegenerate) {
  json doc = invoke_json({"transfer", "--m", "1", "--p", "7"});
  EXPECT_EQ(doc["result"]["matrix"], json({{7}}));
  doc = invoke_json({"transfer", "--m", "3", "--p", "1"});
  EXPECT_EQ(doc["result"]["matrix"], json({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Cli, TransferEigenvalues) {
  json doc = invoke_json({"transfer", "--m", "3", "--p", "3"});
  EXPECT_EQ(doc["result"]["eigenvalues"], json({27, 9, 3}));
}

TEST(Cli, Complete) {
  json doc = invoke_json({"complete", "--expr", "Z + Zp_inf", "--p", "3"});
  EXPECT_EQ(doc["result"]["L0"], "Zp_hat");
  EXPECT_EQ(doc["result"]["L1"], "Zp_hat");
  doc = invoke_json({"complete", "--expr", "Z[1/p]", "--p", "5"});
  EXPECT_EQ(doc["result"]["L0"], "0");
  EXPECT_EQ(doc["result"]["L1"], "0");
  doc = invoke_json({"complete", "--expr", "Z/12", "--p", "2"});
  EXPECT_EQ(doc["result"]["L0"], "Z/4");
}

TEST(Cli, KeyConstant) {
  json doc = invoke_json({"keyconst", "--n", "2", "--p", "2"});
  EXPECT_EQ(doc["result"]["k"], 2);
  doc = invoke_json({"keyconst", "--n", "2", "--p", "2", "--max-k", "1"});
  EXPECT_TRUE(doc["result"]["k"].is_null());
}

TEST(Cli, AdamsAndTheta) {
  json doc = invoke_json({"adams", "--k", "2", "--p", "2"});
  EXPECT_EQ(doc["result"]["psi"], "-2*λ^2(e0) + λ^1(e0)*λ^1(e0)");
  EXPECT_EQ(doc["result"]["theta"], "-λ^2(e0)");
  doc = invoke_json({"theta", "--p", "2", "--n", "4"});
  EXPECT_EQ(doc["result"]["rank"], 4);
  doc = invoke_json({"theta", "--p", "3", "--n", "4", "--parity", "odd"});
  EXPECT_EQ(doc["result"]["rank"], 1);
}

TEST(Cli, VerifySuites) {
  json doc = invoke_json({"verify", "--suite", "none"});
  EXPECT_EQ(doc["result"]["passed"], true);
  EXPECT_TRUE(doc["result"]["suites"].empty());
  doc = invoke_json({"verify", "--suite", "appendix-b"});
  EXPECT_EQ(doc["result"]["passed"], true);
  doc = invoke_json({"verify", "--suite", "t2cyclic", "--max-m", "12"});
  EXPECT_EQ(doc["result"]["passed"], true);
}

TEST(Cli, JsonIsDeterministicAndRoundTrips) {
  std::vector<std::string> args{"transfer", "--m", "4", "--p", "2", "--format", "json"};
  Outcome a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).dump(2) + "\n", a.out);
}

TEST(Cli, LargeIntegersAreStrings) {
  EXPECT_EQ(powerops::cli::to_json(powerops::Int(42)), json(42));
  powerops::Int big("123456789012345678901234567890");
  EXPECT_EQ(powerops::cli::to_json(big), json("123456789012345678901234567890"));
}

TEST(Cli, OtherFormats) {
  Outcome tsv = invoke({"complete", "--expr", "Z/9", "--p", "3", "--format", "tsv"});
  EXPECT_EQ(tsv.status, 0);
  EXPECT_NE(tsv.out.find("result.L0\tZ/9\n"), std::string::npos);
  Outcome pretty = invoke({"complete", "--expr", "Z/9", "--p", "3"});
  EXPECT_NE(pretty.out.find("  L0: Z/9\n"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).status, 2);
  EXPECT_EQ(invoke({"tn", "--n", "2"}).status, 2);
  EXPECT_EQ(invoke({"tn", "--module", "Z/", "--n", "2"}).status, 2);
  EXPECT_EQ(invoke({"tn", "--module", "Zp_inf", "--n", "2"}).status, 2);
  EXPECT_EQ(invoke({"complete", "--expr", "Z", "--p", "4"}).status, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nonsense"}).status, 2);
  EXPECT_EQ(invoke({"tn", "--module", "Z", "--n", "-1"}).status, 2);
  EXPECT_EQ(invoke({"transfer", "--m", "3", "--p", "3", "--format", "xml"}).status, 2);
}

TEST(Cli, UnsupportedInputsExitThree) {
  EXPECT_EQ(invoke({"transfer", "--m", "5", "--p", "2", "--basis", "paper"}).status, 3);
  EXPECT_EQ(invoke({"complete", "--expr", "Z[1/3]", "--p", "2"}).status, 3);
  EXPECT_EQ(invoke({"tn", "--module", "Zp_inf", "--n", "2", "--p", "3"}).status, 3);
}

TEST(Cli, FailedVerificationExitsOne) {
  Outcome o = invoke({"verify", "--suite", "key-constant", "--format", "json"});
  EXPECT_EQ(o.status, 1);
  EXPECT_EQ(json::parse(o.out)["result"]["passed"], false);
}

TEST(Cli, HelpExitsZero) {
  Outcome o = invoke({"--help"});
  EXPECT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("transfer"), std::string::npos);
}
