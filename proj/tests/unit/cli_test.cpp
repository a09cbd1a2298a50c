#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "royale/cli.hpp"

namespace royale::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out, err;
};

Invocation call(std::vector<std::string> args) {
  args.insert(args.begin(), "royale");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / ("royale_cli_" + std::string(info->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string synth_log() {
    const auto dir = (root_ / "synth").string();
    const auto r = call({"synth", "--players", "40", "--teams", "5", "--matches", "300",
                         "--noise", "0.5", "--seed", "3", "--out", dir});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return (root_ / "synth" / "matches.csv").string();
  }

  fs::path root_;
};

TEST_F(CliTest, BadFlagIsUsageError) {
  EXPECT_EQ(call({"replay", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(call({"replay", "--system", "chess", "--input", "x.csv"}).code, kExitUsage);
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"experiment", "--input", "x.csv"}).code, kExitUsage);  // no --setup
}

TEST_F(CliTest, HelpIsSuccess) { EXPECT_EQ(call({"--help"}).code, kExitOk); }

TEST_F(CliTest, MissingFileIsDataError) {
  const auto r = call({"replay", "--input", (root_ / "nope.csv").string(), "--out",
                       (root_ / "o").string()});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("nope.csv"), std::string::npos);
}

TEST_F(CliTest, MalformedRowReportsLine) {
  const auto path = root_ / "bad.csv";
  std::ofstream(path) << "match_id,timestamp,team_id,player_id,team_placement\n"
                         "m,2020-01-01T00:00:00Z,A,p1,1\n"
                         "m,2020-01-01T00:00:00Z,B,p2,x\n";
  const auto r = call({"replay", "--input", path.string(), "--team-size", "0", "--out",
                       (root_ / "o").string()});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("bad.csv:3"), std::string::npos) << r.err;
}

TEST_F(CliTest, SynthWritesFiles) {
  synth_log();
  EXPECT_TRUE(fs::exists(root_ / "synth" / "matches.csv"));
  EXPECT_TRUE(fs::exists(root_ / "synth" / "latent.csv"));
  EXPECT_TRUE(fs::exists(root_ / "synth" / "synth_summary.json"));
}

TEST_F(CliTest, ReplayWritesOutputsAndSummary) {
  const auto input = synth_log();
  const auto out = root_ / "replay";
  const auto r = call({"replay", "--input", input, "--system", "elo", "--system", "trueskill",
                       "--k", "32", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"elo_metrics.csv", "elo_store.txt", "trueskill_metrics.csv",
                        "trueskill_store.txt", "replay_summary.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(slurp(out / "replay_summary.json"), r.out);
  EXPECT_NE(r.out.find("\"k_factor\": \"32\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"beta\""), std::string::npos);
  EXPECT_NE(r.out.find("\"seed\""), std::string::npos);
}

TEST_F(CliTest, ExperimentBestHasTenPoints) {
  const auto input = synth_log();
  const auto out = root_ / "exp";
  const auto r = call({"experiment", "--setup", "best", "--input", input, "--system", "glicko",
                       "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream csv(out / "glicko_best_trend.csv");
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 10);
  EXPECT_TRUE(fs::exists(out / "experiment_best_summary.json"));
}

TEST_F(CliTest, ExperimentAllUsesWindow) {
  const auto input = synth_log();
  const auto out = root_ / "exp";
  const auto r = call({"experiment", "--setup", "all", "--window", "50", "--input", input,
                       "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"window\": 50"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "elo_all_trend.csv"));  // elo is the default system
}

TEST_F(CliTest, OutputsIdenticalAcrossRuns) {
  const auto input = synth_log();
  const auto a = root_ / "a";
  const auto b = root_ / "b";
  const std::vector<std::string> base = {"replay", "--input", input, "--seed", "9", "--verbose",
                                           "--system", "elo", "--system", "glicko",
                                           "--system", "trueskill", "--system", "prevrank"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out", b.string()});
  const auto ra = call(args_a);
  const auto rb = call(args_b);
  ASSERT_EQ(ra.code, kExitOk);
  ASSERT_EQ(rb.code, kExitOk);
  EXPECT_EQ(ra.out, rb.out);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    ++compared;
  }
  EXPECT_EQ(compared, 9u);
}

TEST_F(CliTest, InspectStoreAndLog) {
  const auto input = synth_log();
  const auto out = root_ / "r";
  ASSERT_EQ(call({"replay", "--input", input, "--system", "elo", "--out", out.string()}).code,
            kExitOk);
  const auto s = call({"inspect", "--store", (out / "elo_store.txt").string(), "--top", "3"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_NE(s.out.find("\"system\": \"elo\""), std::string::npos);
  const auto l = call({"inspect", "--input", input});
  ASSERT_EQ(l.code, kExitOk) << l.err;
  EXPECT_NE(l.out.find("\"matches\": 300"), std::string::npos);
  EXPECT_EQ(call({"inspect"}).code, kExitUsage);
}

}  // namespace
}  // namespace royale::cli
