#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "supergeo/verification.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string("cd '") + SUPERGEO_FIXTURE_DIR + "' && '" + SUPERGEO_CLI + "' " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, PairDeltaPrintsTwo) {
  const CliRun r = cli("-f pair_delta.sg pair delta f");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, TripleBadIsAValidationFailure) {
  const CliRun r = cli("-f triple_bad.sg cocycle check triple_bad");
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.out, "triple (1,2,3)")) << r.out;
}

TEST(Cli, LineAtlasChecksAndGlues) {
  EXPECT_EQ(cli("-f line.sg cocycle check line").code, 0);
  EXPECT_EQ(cli("-f line.sg glue line").code, 0);
  EXPECT_EQ(cli("-f line.sg global check line --family plus,minus,minus").code, 0);
  const CliRun bad = cli("-f line.sg global check line --family plus,plus,plus");
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(cli("-f triple_bad.sg glue triple_bad").code, 3);
}

TEST(Cli, ComposeBothRoutesAgree) {
  const CliRun r = cli("-f compose_pair.sg compose G F --route=both");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "routes agree"));
  EXPECT_EQ(cli("-f compose_pair.sg compose G F --route=sideways").code, 2);
}

TEST(Cli, StructuredDeriveMatchesPinnedOutputs) {
  EXPECT_EQ(cli("-f odd_partial.sg derive f --dirs o1 o2 --at '()' --format=structured").out,
            supergeo::verify::kFrozenSecondDerivative);
  EXPECT_EQ(cli("-f odd_partial.sg derive f --dirs o2 --format=structured").out, supergeo::verify::kFrozenOddPartial);
  EXPECT_EQ(cli("algebra coproduct 'R(0|2)' th1*th2 --format=structured").out, supergeo::verify::kFrozenCoproduct);
}

TEST(Cli, StructuredRationalsAreNumDen) {
  const CliRun r = cli("-f pair_delta.sg --format structured pair delta f");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "supergeo/1");
  EXPECT_EQ(j.at("command"), "pair");
  EXPECT_EQ(j.at("result").at("value").at("num"), 2);
  EXPECT_EQ(j.at("result").at("value").at("den"), 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("-f no_such_file.sg pair a b").code, 5);
  EXPECT_EQ(cli("-f pair_delta.sg pair delta nothing").code, 2);
  EXPECT_EQ(cli("--bogus").code, 2);
  const std::string bad = std::string(::testing::TempDir()) + "/broken.sg";
  std::ofstream(bad) << "superdomain R(1|0) U = box (0,1);\nfunction f on U = u1 + ;\n";
  const CliRun r = cli("-f '" + bad + "' pair a b");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "2:24")) << r.out;
}

TEST(Cli, HopfCheckAndSessionRun) {
  EXPECT_EQ(cli("check hopf 'R(2|1)' --cases 20 --seed 4").code, 0);
  const CliRun r = cli("run hopf.sg");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "PASS"));
}

TEST(Cli, ConfigFileSetsDefaults) {
  const std::string cfg = std::string(::testing::TempDir()) + "/supergeo.json";
  std::ofstream(cfg) << R"({"format": "structured"})";
  ::setenv("SUPERGEO_CONFIG", cfg.c_str(), 1);
  const CliRun structured = cli("-f pair_delta.sg pair delta f");
  const CliRun text = cli("-f pair_delta.sg pair delta f --format text");
  ::unsetenv("SUPERGEO_CONFIG");
  EXPECT_TRUE(contains(structured.out, "\"schema\": \"supergeo/1\"")) << structured.out;
  EXPECT_EQ(text.out, "2\n");
}

TEST(Cli, PullbackPushforwardComponents) {
  EXPECT_EQ(cli("-f pullback_even.sg run").code, 0);
  EXPECT_EQ(cli("-f components_odd.sg components F").code, 0);
  EXPECT_EQ(cli("-f compose_pair.sg components F").code, 0);
}

TEST(Cli, VerifyRunsASingleCriterion) {
  const CliRun r = cli("verify --criterion 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "criterion 10: PASS")) << r.out;
}

TEST(Cli, PushforwardOfATangentVector) {
  const CliRun r = cli("-f pushforward.sg pushforward sq delta");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2*point(1).e1\n");
}
