#include "royale/prev_rank.hpp"

#include "royale/errors.hpp"

namespace royale::prev_rank {

double player_prev_rank(const RatingState& state, const PlayerId& player, int team_count) {
  if (team_count < 2) throw DomainError("prev_rank: team count must be >= 2");
  auto it = state.find(player);
  if (it != state.end() && it->second.last_observed_rank) {
    return static_cast<double>(*it->second.last_observed_rank);
  }
  return static_cast<double>(team_count) / 2.0;
}

MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const PrevRankParams& /*params*/, std::uint64_t seed) {
  const std::size_t n = match.teams.size();
  const int team_count = static_cast<int>(n);
  MatchOutcome out;
  out.team_scores.resize(n);
  std::vector<TeamScore> scores(n);
  for (std::size_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (const auto& id : match.teams[t].members) sum += player_prev_rank(state, id, team_count);
    out.team_scores[t] = sum;
    // rank_teams_by_score ranks high scores first
    scores[t] = {match.teams[t].team_id, -sum};
  }
  out.prediction = rank_teams_by_score(scores, seed);

  for (const auto& team : match.teams) {
    for (const auto& id : team.members) {
      auto it = state.find(id);
      if (it == state.end()) it = state.emplace(id, PlayerRating{}).first;
    }
  }
  record_participation(state, match);
  return out;
}

}  // namespace royale::prev_rank
