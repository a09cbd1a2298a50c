#pragma once

#include <cstdint>

#include "royale/model.hpp"

namespace royale::prev_rank {

// The baseline keeps no tunable parameters; the struct exists so it can sit
// beside the other systems in configuration.
struct PrevRankParams {};

// Stored placement of the player's previous match, or N/2 for a player the
// state has never seen (or has seen without a placement).
double player_prev_rank(const RatingState& state, const PlayerId& player, int team_count);

struct MatchOutcome {
  PredictedRanking prediction;
  // Summed PreviousRank, lower is better. Prediction entries carry the negation.
  std::vector<double> team_scores;
};

// Lowest summed PreviousRank is predicted to win. Afterwards every member
// stores the team's observed placement.
MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const PrevRankParams& params, std::uint64_t seed);

}  // namespace royale::prev_rank
