#include <gtest/gtest.h>

#include <sstream>

#include "royale/errors.hpp"
#include "royale/experiment.hpp"
#include "royale/synth.hpp"
#include "support/oracles.hpp"

namespace royale {
namespace {

using testing::make_match;

std::vector<MatchRecord> synth_log(int players, int matches, double noise = 0.5) {
  synth::SynthConfig cfg;
  cfg.player_count = players;
  cfg.teams_per_match = 5;
  cfg.match_count = matches;
  cfg.noise_spread = noise;
  cfg.seed = 11;
  return synth::generate(cfg).matches;
}

// Same two rosters every match, so every report after the first is identical.
std::vector<MatchRecord> repeated(int count) {
  std::vector<MatchRecord> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(make_match("m" + std::to_string(i), {{"a", "b"}, {"c", "d"}}, {1, 2}));
  }
  return out;
}

TEST(AllPlayers, WindowOneIsRawSeries) {
  const auto log = synth_log(40, 80);
  const auto r = replay(log, default_config("elo"));
  const auto trend = setup_all_players(r, 1);
  ASSERT_EQ(trend.points.size(), r.evaluations.size());
  for (std::size_t i = 0; i < trend.points.size(); ++i) {
    EXPECT_EQ(trend.points[i].position, i + 1);
    EXPECT_EQ(trend.points[i].ndcg, r.evaluations[i].report.ndcg);
    EXPECT_EQ(trend.points[i].mae, r.evaluations[i].report.mae);
    EXPECT_EQ(trend.points[i].new_player_fraction, r.evaluations[i].new_player_fraction);
    EXPECT_EQ(trend.points[i].match_count, 1u);
  }
}

TEST(AllPlayers, MovingAverageMatchesDirectMean) {
  const auto log = synth_log(40, 60);
  const auto r = replay(log, default_config("glicko"));
  const auto trend = setup_all_players(r, 7);
  for (std::size_t i = 0; i < trend.points.size(); ++i) {
    const std::size_t begin = i >= 6 ? i - 6 : 0;
    double sum = 0;
    for (std::size_t k = begin; k <= i; ++k) sum += r.evaluations[k].report.accuracy;
    EXPECT_NEAR(trend.points[i].accuracy, sum / static_cast<double>(i - begin + 1), 1e-12);
    EXPECT_EQ(trend.points[i].match_count, i - begin + 1);
  }
}

TEST(AllPlayers, ConstantStreamGivesConstantTrend) {
  const auto r = replay(repeated(40), default_config("elo"));
  // after the first match team {a,b} is ahead and stays ahead
  const auto trend = setup_all_players(ReplayResult{r.store, {r.evaluations.begin() + 1, r.evaluations.end()}, {}}, 5);
  for (const auto& p : trend.points) {
    EXPECT_NEAR(p.accuracy, 1.0, 1e-12);
    EXPECT_NEAR(p.ndcg, 1.0, 1e-12);
    EXPECT_NEAR(p.new_player_fraction, 0.0, 1e-12);
  }
}

TEST(AllPlayers, AllNewStreamHasFractionOne) {
  std::vector<MatchRecord> log;
  for (int i = 0; i < 10; ++i) {
    const auto s = std::to_string(i);
    log.push_back(make_match("m" + s, {{"a" + s}, {"b" + s}, {"c" + s}}, {2, 1, 3}));
  }
  const auto trend = setup_all_players(log, default_config("trueskill"), {}, 3);
  for (const auto& p : trend.points) EXPECT_DOUBLE_EQ(p.new_player_fraction, 1.0);
}

TEST(AllPlayers, ZeroWindowThrows) {
  const auto r = replay(repeated(3), default_config("elo"));
  EXPECT_THROW(setup_all_players(r, 0), DomainError);
}

// Player "x" plays `games` matches against fresh opponents.
std::vector<MatchRecord> player_with(int games, const std::string& who = "x") {
  std::vector<MatchRecord> out;
  for (int i = 0; i < games; ++i) {
    const auto s = std::to_string(i);
    out.push_back(make_match(who + s, {{who}, {who + "o" + s}}, {1, 2}));
  }
  return out;
}

TEST(Cohort, MinGamesIsStrict) {
  const auto config = default_config("elo");
  auto log = player_with(9, "x");
  const auto more = player_with(11, "y");
  log.insert(log.end(), more.begin(), more.end());
  const auto r = replay(log, config);
  const auto cohort = select_cohort(r.store, config, best_players_rule());
  ASSERT_EQ(cohort.size(), 1u);
  EXPECT_EQ(cohort[0].str(), "y");

  const auto exact = replay(player_with(100), config);
  EXPECT_TRUE(select_cohort(exact.store, config, frequent_players_rule()).empty());
  const auto above = replay(player_with(101), config);
  EXPECT_EQ(select_cohort(above.store, config, frequent_players_rule()).size(), 1u);
}

TEST(Cohort, TopKOrderingWithIdTieBreak) {
  RatingStore store;
  const auto config = default_config("elo");
  auto put = [&](const char* id, double mu, int games) {
    PlayerRating r;
    r.mu = mu;
    r.games_played = games;
    store.ratings[PlayerId(id)] = r;
  };
  put("d", 1600, 20);
  put("b", 1700, 20);
  put("a", 1700, 20);
  put("c", 1500, 20);
  put("e", 9999, 5);
  CohortRule rule{3, 10, 10, 0.0};
  const auto cohort = select_cohort(store, config, rule);
  ASSERT_EQ(cohort.size(), 3u);
  EXPECT_EQ(cohort[0].str(), "a");
  EXPECT_EQ(cohort[1].str(), "b");
  EXPECT_EQ(cohort[2].str(), "d");

  Diagnostics diag;
  CohortRule wide{10, 10, 10, 0.0};
  EXPECT_EQ(select_cohort(store, config, wide, &diag).size(), 4u);
  EXPECT_EQ(diag.messages.size(), 1u);
}

TEST(Cohort, ConservativeRanking) {
  RatingStore store;
  const auto config = default_config("trueskill");
  PlayerRating sure;
  sure.mu = 30;
  sure.sigma = 1;
  sure.games_played = 50;
  PlayerRating lucky;
  lucky.mu = 32;
  lucky.sigma = 5;
  lucky.games_played = 50;
  store.ratings[PlayerId("sure")] = sure;
  store.ratings[PlayerId("lucky")] = lucky;
  CohortRule by_mu{1, 10, 10, 0.0};
  EXPECT_EQ(select_cohort(store, config, by_mu)[0].str(), "lucky");
  CohortRule conservative{1, 10, 10, 3.0};
  EXPECT_EQ(select_cohort(store, config, conservative)[0].str(), "sure");
}

TEST(Cohort, TrendLengthEqualsHorizon) {
  const auto log = synth_log(30, 400);
  const auto config = default_config("trueskill");
  const auto best = setup_best_players(log, config, {});
  EXPECT_EQ(best.setup, "best");
  EXPECT_EQ(best.points.size(), 10u);
  EXPECT_GT(best.cohort_size, 0u);
  for (std::size_t g = 0; g < best.points.size(); ++g) {
    EXPECT_EQ(best.points[g].position, g + 1);
    EXPECT_EQ(best.points[g].match_count, best.cohort_size);
    EXPECT_TRUE(best.points[g].focal_error.has_value());
  }
  const auto frequent = setup_frequent_players(log, config, {});
  EXPECT_EQ(frequent.points.size(), 100u);
}

TEST(Cohort, SharedMatchCountsOncePerPlayer) {
  // p and q are teammates in every match; both join the cohort
  std::vector<MatchRecord> log;
  for (int i = 0; i < 12; ++i) {
    const auto s = std::to_string(i);
    log.push_back(make_match("m" + s, {{"p", "q"}, {"o" + s, "r" + s}}, {i % 2 + 1, 2 - i % 2}));
  }
  const auto config = default_config("elo");
  const auto r = replay(log, config);
  const auto trend = setup_cohort("best", log, r, config, CohortRule{1000, 10, 3, 0.0});
  ASSERT_EQ(trend.cohort_size, 2u);
  ASSERT_EQ(trend.points.size(), 3u);
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_EQ(trend.points[g].match_count, 2u);
    EXPECT_DOUBLE_EQ(trend.points[g].ndcg, r.evaluations[g].report.ndcg);
  }
}

TEST(Cohort, EmptyCohortGivesEmptyTrend) {
  const auto log = repeated(5);
  const auto trend = setup_best_players(log, default_config("glicko"), {});
  EXPECT_TRUE(trend.points.empty());
  EXPECT_EQ(trend.cohort_size, 0u);
  EXPECT_FALSE(trend.diagnostics.empty());
}

TEST(TrendCsv, Headers) {
  const auto r = replay(repeated(3), default_config("elo"));
  std::ostringstream all;
  write_trend_csv(all, setup_all_players(r, 2));
  EXPECT_EQ(all.str().substr(0, all.str().find('\n')),
            "position_index,accuracy,mae,kendall_tau,mrr,ap,ndcg,new_player_fraction,match_count");
  const auto log = repeated(12);
  std::ostringstream best;
  write_trend_csv(best, setup_best_players(log, default_config("elo"), {}));
  EXPECT_NE(best.str().find("match_count,focal_error\n"), std::string::npos);
}

}  // namespace
}  // namespace royale
