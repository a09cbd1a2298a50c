#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "royale/model.hpp"

namespace royale::glicko {

struct GlickoParams {
  double default_mu = 1500.0;
  double default_sigma = 350.0;
  double q_constant = 0.0057565;  // ln(10) / 400
};

void validate(const GlickoParams& params);

struct TeamBelief {
  double mu = 0.0;
  double sigma = 0.0;
};

TeamBelief team_mu_sigma(std::span<const double> member_mu, std::span<const double> member_sigma);

// Deviation weighting g(sigma) = 1 / sqrt(1 + 3 q^2 sigma^2 / pi^2).
double g_weight(double sigma, double q);

// Pooled pairwise win probability of team `team_index`:
//   sum_{j != i} 1 / (1 + 10^{-g(sqrt(s_i^2 + s_j^2)) (mu_i - mu_j) / 400}) / C(N, 2)
double win_probability(std::size_t team_index, std::span<const TeamBelief> teams,
                       const GlickoParams& params);

std::vector<double> win_probabilities(std::span<const TeamBelief> teams,
                                      const GlickoParams& params);

// Root-mean-square deviation of every team except `team_index`.
double opponent_sigma(std::size_t team_index, std::span<const TeamBelief> teams);

struct TeamUpdate {
  TeamBelief before;
  double win_probability = 0.0;
  double normalized_result = 0.0;
  double opponent_sigma = 0.0;
  double inverse_d2 = 0.0;
  double delta_mu = 0.0;
  double new_sigma = 0.0;
};

// Per-team posterior from the pre-match team beliefs:
//   mu'    = mu + q / (1/s^2 + 1/d^2) * g(s_opp) * (R' - Pr)
//   sigma' = sqrt(1 / (1/s^2 + 1/d^2)),  1/d^2 = q^2 g(s_opp)^2 Pr (1 - Pr)
TeamUpdate team_update(std::size_t team_index, std::span<const TeamBelief> teams,
                       double normalized_result, double win_probability,
                       const GlickoParams& params);

struct MatchOutcome {
  PredictedRanking prediction;
  std::vector<TeamUpdate> teams;  // aligned with MatchRecord::teams
};

// Members receive (mu_j / mu_t) * delta_mu and (sigma_j / sigma_t) * delta_sigma.
MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const GlickoParams& params, std::uint64_t seed,
                          Diagnostics* diag = nullptr);

}  // namespace royale::glicko
