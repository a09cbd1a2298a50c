#include "royale/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "royale/errors.hpp"

namespace royale {

PlayerId::PlayerId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw DomainError("player id must not be empty");
}

std::size_t MatchRecord::player_count() const {
  std::size_t n = 0;
  for (const auto& team : teams) n += team.members.size();
  return n;
}

void validate_match(const MatchRecord& match) {
  const std::size_t n = match.teams.size();
  if (n < 2) {
    throw DomainError("match " + match.match_id + ": needs at least 2 teams, got " +
                      std::to_string(n));
  }
  std::vector<bool> seen_rank(n + 1, false);
  std::unordered_set<PlayerId> seen_players;
  for (const auto& team : match.teams) {
    if (team.members.empty()) {
      throw DomainError("match " + match.match_id + ": team " + team.team_id +
                        " has no members");
    }
    for (const auto& member : team.members) {
      if (!seen_players.insert(member).second) {
        throw DomainError("match " + match.match_id + ": player " + member.str() +
                          " appears more than once");
      }
    }
    const int rank = team.observed_rank;
    if (rank < 1 || static_cast<std::size_t>(rank) > n) {
      throw DomainError("match " + match.match_id + ": team " + team.team_id +
                        " placement " + std::to_string(rank) + " outside 1.." +
                        std::to_string(n));
    }
    if (seen_rank[rank]) {
      throw DomainError("match " + match.match_id + ": placement " +
                        std::to_string(rank) + " shared by several teams");
    }
    seen_rank[rank] = true;
  }
}

std::vector<int> PredictedRanking::ranks() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.predicted_rank);
  return out;
}

double pair_count(std::size_t n) {
  return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
}

double normalized_result(int observed_rank, int team_count) {
  if (team_count < 2) throw DomainError("normalized_result: team count must be >= 2");
  if (observed_rank < 1 || observed_rank > team_count) {
    throw DomainError("normalized_result: rank " + std::to_string(observed_rank) +
                      " outside 1.." + std::to_string(team_count));
  }
  return static_cast<double>(team_count - observed_rank) /
         pair_count(static_cast<std::size_t>(team_count));
}

PredictedRanking rank_teams_by_score(std::span<const TeamScore> scores,
                                     std::uint64_t rng_seed) {
  const std::size_t n = scores.size();
  if (n < 2) throw DomainError("rank_teams_by_score: need at least 2 teams");
  for (const auto& s : scores) {
    if (!std::isfinite(s.score)) {
      throw DataError("rank_teams_by_score: non-finite score for team " + s.team_id);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].score > scores[b].score;
  });

  PredictedRanking out;
  out.seed_used = rng_seed;
  std::mt19937_64 rng(rng_seed);
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && scores[order[end]].score == scores[order[begin]].score) ++end;
    if (end - begin > 1) {
      std::vector<std::size_t> group(order.begin() + begin, order.begin() + end);
      std::sort(group.begin(), group.end());
      out.tie_groups.push_back(group);
      std::shuffle(order.begin() + begin, order.begin() + end, rng);
    }
    begin = end;
  }

  out.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.entries[i].team_id = scores[i].team_id;
    out.entries[i].score = scores[i].score;
  }
  for (std::size_t pos = 0; pos < n; ++pos) {
    out.entries[order[pos]].predicted_rank = static_cast<int>(pos + 1);
  }
  return out;
}

PlayerRating& rating_of(RatingState& state, const PlayerId& id) {
  auto it = state.find(id);
  if (it == state.end()) throw ContractViolation("no rating entry for player " + id.str());
  return it->second;
}

const PlayerRating& rating_of(const RatingState& state, const PlayerId& id) {
  auto it = state.find(id);
  if (it == state.end()) throw ContractViolation("no rating entry for player " + id.str());
  return it->second;
}

void record_participation(RatingState& state, const MatchRecord& match) {
  for (const auto& team : match.teams) {
    for (const auto& member : team.members) {
      auto& r = rating_of(state, member);
      ++r.games_played;
      r.last_observed_rank = team.observed_rank;
    }
  }
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace royale
