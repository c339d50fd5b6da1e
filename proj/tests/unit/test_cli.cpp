#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "rankvote_cli/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = rankvote::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return testing_support::fixture_path(name); }

}  // namespace

TEST(Cli, TallyStv) {
  const auto r = run({"tally", "--rule", "stv", fx("d1.ballots")});
  EXPECT_EQ(r.code, rankvote::cli::kOk) << r.err;
  EXPECT_NE(r.out.find("winner: b"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("d, c, a"), std::string::npos) << r.out;
}

TEST(Cli, TallyTieExitsThree) {
  const auto r = run({"tally", "--rule", "plurality", fx("tied.ballots")});
  EXPECT_EQ(r.code, rankvote::cli::kTie);
  EXPECT_NE(r.err.find("tie"), std::string::npos);
  EXPECT_EQ(run({"tally", "--rule", "plurality", "--tiebreak", "lex", fx("tied.ballots")}).code, 0);
  EXPECT_EQ(run({"--tiebreak", "lex", "tally", "--rule", "plurality", fx("tied.ballots")}).code, 0);
}

TEST(Cli, VerifyOiocOnClonedRp) {
  const auto args =
      std::vector<std::string>{"verify", "oioc", "--protocol", "rp", fx("d2_cloned.ballots"), "--clone-set", "c,cx",
                               "--rep", "c"};
  EXPECT_EQ(run(args).code, rankvote::cli::kTie);
  auto declared = args;
  declared.push_back("--tiebreak");
  declared.push_back("declared");
  const auto r = run(declared);
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, ListOptionsLeaveTheFileAlone) {
  EXPECT_EQ(run({"verify", "neutrality", "--protocol", "stv", "--tau", "a=d,d=a", fx("d1.ballots")}).code, 0);
  EXPECT_EQ(run({"verify", "ioc", "--rule", "stv", "--clone-set", "c,cx", fx("d1_cx.ballots"), "--rep", "c"}).code, 0);
}

TEST(Cli, VerifyIocFailureExitsTwo) {
  const auto r =
      run({"verify", "ioc", "--rule", "plurality", "--clone-set", "a,a2", "--rep", "a", fx("a1_cloned.ballots")});
  EXPECT_EQ(r.code, rankvote::cli::kVerificationFailed);
  EXPECT_NE(r.out.find("ioc_holds: false"), std::string::npos);
}

TEST(Cli, TreeOutputIsDeterministicJson) {
  const std::vector<std::string> args{"--format=tree", "clocked", "--protocol", "stv", "--transcript", fx("d1.ballots")};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::accept(a.out));
}

TEST(Cli, RandomSuiteEmbedsSeed) {
  const auto r = run({"--format", "tree", "verify", "ioc", "--random", "--trials", "20", "--seed", "31"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto tree = nlohmann::json::parse(r.out);
  EXPECT_EQ(tree.at("seed"), 31);
  EXPECT_EQ(r.out, run({"--format", "tree", "verify", "ioc", "--random", "--trials", "20", "--seed", "31"}).out);
}

TEST(Cli, ReadsStandardInput) {
  const auto r = run({"tally", "--rule", "borda", "-"}, "2: a > b\n1: b > a\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("winner: a"), std::string::npos);
}

TEST(Cli, ClonesInjectThenDetect) {
  const auto injected = run({"clones", "inject", "--target", "c", "--id", "cx", "--place", "above", fx("d1.ballots")});
  ASSERT_EQ(injected.code, 0) << injected.err;
  const auto detected = run({"clones", "detect", "-"}, injected.out);
  EXPECT_EQ(detected.code, 0);
  EXPECT_NE(detected.out.find("c, cx"), std::string::npos) << detected.out;
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, rankvote::cli::kUsage);
  EXPECT_EQ(run({"tally", "--rule", "copeland", fx("d1.ballots")}).code, rankvote::cli::kUsage);
  EXPECT_EQ(run({"tally", "--rule", "stv", "/nonexistent.ballots"}).code, rankvote::cli::kUsage);
  const auto bad = run({"tally", "--rule", "stv", "-"}, "3: a > a\n");
  EXPECT_EQ(bad.code, rankvote::cli::kUsage);
  EXPECT_NE(bad.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DemoPasses) {
  const auto r = run({"demo", "schulze-impossibility", "--n", "6"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("a_star"), std::string::npos);
}
