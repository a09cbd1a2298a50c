#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "royale/model.hpp"

namespace royale::elo {

struct EloParams {
  double k_factor = 10.0;
  double d_scale = 400.0;
  double default_rating = 1500.0;
};

void validate(const EloParams& params);

double team_rating(std::span<const double> member_ratings);

// mu_j / sum(mu). Throws DomainError when the team rating is exactly zero.
std::vector<double> contribution_weights(std::span<const double> member_ratings);

// Pooled pairwise win probability of team `team_index`:
//   sum_{j != i} 1 / (1 + e^{(mu_j - mu_i) / D}) / C(N, 2)
double win_probability(std::size_t team_index, std::span<const double> team_ratings,
                       const EloParams& params);

std::vector<double> win_probabilities(std::span<const double> team_ratings,
                                      const EloParams& params);

struct TeamUpdate {
  double old_rating = 0.0;
  double win_probability = 0.0;
  double normalized_result = 0.0;
  double delta = 0.0;
};

struct MatchOutcome {
  PredictedRanking prediction;
  std::vector<TeamUpdate> teams;  // aligned with MatchRecord::teams
};

// Predicts from pre-match ratings, then applies K(R' - Pr) per team and
// splits each team delta across members by contribution weight. Teams whose
// rating sum is <= 0 fall back to uniform weights (reported to `diag`).
MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const EloParams& params, std::uint64_t seed,
                          Diagnostics* diag = nullptr);

}  // namespace royale::elo
