#pragma once

#include <cstdint>
#include <vector>

#include "royale/model.hpp"

namespace royale::trueskill {

// How a team's mean change is split across its members.
enum class MemberShare {
  kVariance,  // sigma_j^2 / sigma_team^2
  kMean,      // mu_j / mu_team, as in the team Elo and Glicko variants
};

struct TrueSkillParams {
  double default_mu = 25.0;
  double default_sigma = 25.0 / 3.0;
  double beta = 4.16;
  // Dynamics noise added in quadrature before every match. Note the canonical
  // TrueSkill value is 25/300; 0.833 is kept as the default on purpose.
  double tau = 0.833;
  MemberShare member_share = MemberShare::kVariance;
};

void validate(const TrueSkillParams& params);

// pdf(x) / cdf(x) of the standard normal. Uses the Mills-ratio continued
// fraction in the lower tail so large negative inputs stay accurate.
double v_exceeds(double x);

// v(x) * (v(x) + x), in (0, 1).
double w_exceeds(double x);

struct Belief {
  double mu = 0.0;
  double sigma = 0.0;

  friend bool operator==(const Belief&, const Belief&) = default;
};

// One side of a head-to-head comparison. For a team: summed member means,
// summed member variances and the roster size (each member adds beta^2 of
// performance noise).
struct Side {
  double mu = 0.0;
  double variance = 0.0;
  int members = 1;
};

struct PairUpdate {
  double c = 0.0;              // sqrt((n_w + n_l) beta^2 + s_w^2 + s_l^2)
  double t = 0.0;              // mu_winner - mu_loser
  double winner_delta_mu = 0.0;
  double loser_delta_mu = 0.0;
  double winner_shrink = 1.0;  // sigma' = sigma * shrink
  double loser_shrink = 1.0;
};

// Non-draw update where `winner` beat `loser`:
//   mu'    = mu +/- (s^2 / c) v(t / c)
//   sigma' = sigma - sigma (s^2 / c^2) w(t / c)
PairUpdate update_pair(const Side& winner, const Side& loser, double beta);

// Singleton convenience returning the posterior (winner, loser) beliefs.
std::pair<Belief, Belief> update_pair(const Belief& winner, const Belief& loser, double beta);

struct MatchOutcome {
  PredictedRanking prediction;
  std::vector<double> team_delta_mu;  // aligned with MatchRecord::teams
  std::vector<double> team_shrink;
};

// Adds tau^2 to every participant's variance, then applies update_pair to each
// adjacent pair of the observed standings using pre-match team aggregates.
// Team mean changes accumulate; shrink factors multiply.
MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const TrueSkillParams& params, std::uint64_t seed,
                          Diagnostics* diag = nullptr);

}  // namespace royale::trueskill
