#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "royale/elo.hpp"
#include "royale/errors.hpp"
#include "support/oracles.hpp"

namespace royale::elo {
namespace {

PlayerRating at(double mu) {
  PlayerRating r;
  r.mu = mu;
  return r;
}

TEST(EloTeamRating, Sums) {
  EXPECT_DOUBLE_EQ(team_rating(std::vector<double>{1500, 1500}), 3000);
  EXPECT_DOUBLE_EQ(team_rating(std::vector<double>{1500}), 1500);
  EXPECT_DOUBLE_EQ(team_rating(std::vector<double>{1480.5, 1602.25}), 3082.75);
  EXPECT_THROW(team_rating(std::vector<double>{}), DomainError);
}

TEST(EloContributionWeights, Examples) {
  EXPECT_EQ(contribution_weights(std::vector<double>{1500, 1500}), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(contribution_weights(std::vector<double>{1000, 3000}),
            (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(contribution_weights(std::vector<double>{1500}), (std::vector<double>{1.0}));
  EXPECT_THROW(contribution_weights(std::vector<double>{100, -100}), DomainError);
}

TEST(EloWinProbability, EqualRatingsGiveUniform) {
  for (int n : {2, 3, 10, 50}) {
    std::vector<double> r(n, 3000.0);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(win_probability(i, r, {}), 1.0 / n, 1e-15);
  }
}

TEST(EloWinProbability, TwoTeamsMatchesLogisticKernel) {
  // gap of D ln 9 makes the base-e kernel exactly 0.9 / 0.1
  const EloParams p;
  const std::vector<double> r{3000 + p.d_scale * std::log(9.0), 3000};
  EXPECT_NEAR(win_probability(0, r, p), 0.9, 1e-15);
  EXPECT_NEAR(win_probability(1, r, p), 0.1, 1e-15);
}

TEST(EloWinProbability, ThreeTeamsOrderedByRating) {
  const std::vector<double> r{3100, 3000, 2900};
  const auto pr = win_probabilities(r, {});
  EXPECT_NEAR(pr[0], 0.3948786106958842, 1e-14);
  EXPECT_NEAR(pr[1], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(pr[2], 0.2717880559707824, 1e-14);
  EXPECT_GT(pr[0], pr[1]);
  EXPECT_GT(pr[1], pr[2]);
}

TEST(EloUpdate, TwoEqualDuoTeams) {
  auto m = testing::make_match("m", {{"a", "b"}, {"c", "d"}}, {1, 2});
  RatingState s;
  testing::seed_state(s, m, at(1500));
  const auto out = update_match(s, m, {}, 3);
  EXPECT_DOUBLE_EQ(out.teams[0].delta, 5.0);
  EXPECT_DOUBLE_EQ(out.teams[1].delta, -5.0);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("a")).mu, 1502.5);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("b")).mu, 1502.5);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("c")).mu, 1497.5);
  EXPECT_EQ(s.at(PlayerId("d")).games_played, 1);
  EXPECT_EQ(s.at(PlayerId("d")).last_observed_rank, 2);
}

TEST(EloUpdate, ThreeEqualTeamsZeroSum) {
  auto m = testing::make_match("m", {{"a", "b"}, {"c", "d"}, {"e", "f"}}, {1, 2, 3});
  RatingState s;
  testing::seed_state(s, m, at(1500));
  const auto out = update_match(s, m, {}, 0);
  EXPECT_NEAR(out.teams[0].delta, 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(out.teams[1].delta, 0.0, 1e-12);
  EXPECT_NEAR(out.teams[2].delta, -10.0 / 3.0, 1e-12);
}

TEST(EloUpdate, ZeroResidualLeavesRatingsUnchanged) {
  // middle team of an equal three-team field: R' = Pr = 1/3
  auto m = testing::make_match("m", {{"a"}, {"b"}, {"c"}}, {1, 2, 3});
  RatingState s;
  testing::seed_state(s, m, at(1500));
  update_match(s, m, {}, 0);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("b")).mu, 1500.0);
}

TEST(EloUpdate, PredictionUsesPreMatchRatings) {
  auto m = testing::make_match("m", {{"a"}, {"b"}}, {2, 1});
  RatingState s;
  s.emplace(PlayerId("a"), at(1600));
  s.emplace(PlayerId("b"), at(1400));
  const auto out = update_match(s, m, {}, 0);
  EXPECT_EQ(out.prediction.entries[0].predicted_rank, 1);
  EXPECT_DOUBLE_EQ(out.prediction.entries[0].score, 1600);
}

TEST(EloUpdate, MissingPlayerIsContractViolation) {
  auto m = testing::make_match("m", {{"a"}, {"b"}}, {1, 2});
  RatingState s;
  s.emplace(PlayerId("a"), at(1500));
  EXPECT_THROW(update_match(s, m, {}, 0), ContractViolation);
}

TEST(EloUpdate, NonPositiveTeamFallsBackToUniform) {
  auto m = testing::make_match("m", {{"a", "b"}, {"c", "d"}}, {1, 2});
  RatingState s;
  s.emplace(PlayerId("a"), at(-50));
  s.emplace(PlayerId("b"), at(20));
  s.emplace(PlayerId("c"), at(1500));
  s.emplace(PlayerId("d"), at(1500));
  Diagnostics diag;
  const auto out = update_match(s, m, {}, 0, &diag);
  EXPECT_EQ(diag.messages.size(), 1u);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("a")).mu, -50 + out.teams[0].delta / 2);
  EXPECT_DOUBLE_EQ(s.at(PlayerId("b")).mu, 20 + out.teams[0].delta / 2);
}

// Properties on random fields: simplex, zero-sum, member conservation,
// translation covariance of the prediction.
TEST(EloProperties, RandomFields) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> rating(1500, 200);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = std::uniform_int_distribution<int>(2, 50)(gen);
    std::vector<std::vector<std::string>> rosters(n);
    std::vector<int> placements(n);
    std::iota(placements.begin(), placements.end(), 1);
    std::shuffle(placements.begin(), placements.end(), gen);
    for (int t = 0; t < n; ++t) rosters[t] = {"p" + std::to_string(2 * t), "p" + std::to_string(2 * t + 1)};
    auto m = testing::make_match("m", rosters, placements);
    RatingState s, shifted;
    for (int p = 0; p < 2 * n; ++p) {
      const double r = rating(gen);
      s.emplace(PlayerId("p" + std::to_string(p)), at(r));
      shifted.emplace(PlayerId("p" + std::to_string(p)), at(r + 250.0));
    }
    const RatingState before = s;
    const auto seed = gen();
    const auto out = update_match(s, m, {}, seed);
    const auto out_shifted = update_match(shifted, m, {}, seed);

    double pr_sum = 0, delta_sum = 0;
    for (int t = 0; t < n; ++t) {
      ASSERT_GT(out.teams[t].win_probability, 0.0);
      ASSERT_LT(out.teams[t].win_probability, 1.0);
      pr_sum += out.teams[t].win_probability;
      double member_sum = 0;
      for (const auto& id : m.teams[t].members) member_sum += s.at(id).mu - before.at(id).mu;
      ASSERT_NEAR(member_sum, out.teams[t].delta, 1e-9);
      delta_sum += member_sum;
    }
    ASSERT_NEAR(pr_sum, 1.0, 1e-9);
    ASSERT_NEAR(delta_sum, 0.0, 1e-9);
    ASSERT_EQ(out.prediction.ranks(), out_shifted.prediction.ranks());
  }
}

TEST(EloProperties, TwoTeamWinnerGains) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> rating(1000, 2000);
  for (int iter = 0; iter < 200; ++iter) {
    auto m = testing::make_match("m", {{"a", "b"}, {"c", "d"}}, {1, 2});
    RatingState s;
    for (const char* id : {"a", "b", "c", "d"}) s.emplace(PlayerId(id), at(rating(gen)));
    const double before = s.at(PlayerId("a")).mu + s.at(PlayerId("b")).mu;
    const auto out = update_match(s, m, {}, 0);
    const double after = s.at(PlayerId("a")).mu + s.at(PlayerId("b")).mu;
    ASSERT_LT(out.teams[0].win_probability, 1.0);
    ASSERT_GT(after, before);
  }
}

}  // namespace
}  // namespace royale::elo
