#include <gtest/gtest.h>

#include "royale/prev_rank.hpp"
#include "support/oracles.hpp"

namespace royale::prev_rank {
namespace {

PlayerRating placed(int rank) {
  PlayerRating r;
  r.last_observed_rank = rank;
  r.games_played = 1;
  return r;
}

TEST(PrevRank, NewPlayerGetsHalfField) {
  RatingState s;
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("x"), 50), 25.0);
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("x"), 3), 1.5);
  s.emplace(PlayerId("x"), PlayerRating{});
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("x"), 10), 5.0);
}

TEST(PrevRank, StoredPlacement) {
  RatingState s;
  s.emplace(PlayerId("x"), placed(3));
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("x"), 50), 3.0);
}

TEST(PrevRank, LowestSumPredictedToWin) {
  RatingState s;
  s.emplace(PlayerId("a"), placed(1));
  s.emplace(PlayerId("b"), placed(2));
  s.emplace(PlayerId("c"), placed(10));
  s.emplace(PlayerId("d"), placed(12));
  auto m = testing::make_match("m", {{"c", "d"}, {"a", "b"}}, {1, 2});
  const auto out = update_match(s, m, {}, 0);
  EXPECT_EQ(out.prediction.entries[1].predicted_rank, 1);
  EXPECT_EQ(out.prediction.entries[0].predicted_rank, 2);
  EXPECT_DOUBLE_EQ(out.team_scores[1], 3.0);
  EXPECT_DOUBLE_EQ(out.team_scores[0], 22.0);
}

TEST(PrevRank, AllNewIsFullTie) {
  RatingState s;
  auto m = testing::make_match("m", {{"a", "b"}, {"c", "d"}, {"e", "f"}}, {1, 2, 3});
  const auto out = update_match(s, m, {}, 4);
  ASSERT_EQ(out.prediction.tie_groups.size(), 1u);
  EXPECT_EQ(out.prediction.tie_groups[0].size(), 3u);
  for (double score : out.team_scores) EXPECT_DOUBLE_EQ(score, 3.0);
}

TEST(PrevRank, MembersStoreTeamPlacement) {
  RatingState s;
  std::vector<std::vector<std::string>> rosters;
  std::vector<int> placements;
  for (int t = 0; t < 8; ++t) {
    rosters.push_back({"p" + std::to_string(2 * t), "p" + std::to_string(2 * t + 1)});
    placements.push_back(8 - t);
  }
  auto m = testing::make_match("m", rosters, placements);
  update_match(s, m, {}, 0);
  for (const auto& team : m.teams) {
    for (const auto& id : team.members) {
      EXPECT_EQ(s.at(id).last_observed_rank, team.observed_rank);
      EXPECT_EQ(s.at(id).games_played, 1);
    }
  }
  // placement 7 team
  EXPECT_EQ(s.at(PlayerId("p2")).last_observed_rank, 7);
}

TEST(PrevRank, OnlyPreviousMatchMatters) {
  RatingState s;
  auto first = testing::make_match("m1", {{"a"}, {"b"}}, {1, 2});
  auto second = testing::make_match("m2", {{"a"}, {"b"}}, {2, 1});
  update_match(s, first, {}, 0);
  update_match(s, second, {}, 0);
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("a"), 2), 2.0);
  EXPECT_DOUBLE_EQ(player_prev_rank(s, PlayerId("b"), 2), 1.0);
}

}  // namespace
}  // namespace royale::prev_rank
