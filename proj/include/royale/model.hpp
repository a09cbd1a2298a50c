#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace royale {

// Opaque, stable player token. Never empty.
class PlayerId {
 public:
  PlayerId() = default;
  explicit PlayerId(std::string value);

  const std::string& str() const { return value_; }

  friend bool operator==(const PlayerId&, const PlayerId&) = default;
  friend auto operator<=>(const PlayerId&, const PlayerId&) = default;

 private:
  std::string value_;
};

}  // namespace royale

template <>
struct std::hash<royale::PlayerId> {
  std::size_t operator()(const royale::PlayerId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

namespace royale {

// Per-player skill state. `sigma` is only present for systems that model
// uncertainty (Glicko, TrueSkill).
struct PlayerRating {
  double mu = 0.0;
  std::optional<double> sigma;
  int games_played = 0;
  std::optional<int> last_observed_rank;

  friend bool operator==(const PlayerRating&, const PlayerRating&) = default;
};

using RatingState = std::unordered_map<PlayerId, PlayerRating>;

struct TeamEntry {
  std::string team_id;
  std::vector<PlayerId> members;
  int observed_rank = 0;
};

struct MatchRecord {
  std::string match_id;
  std::string timestamp;      // ISO-8601 as read from the log
  std::int64_t epoch_ms = 0;  // UTC milliseconds, used for ordering
  std::vector<TeamEntry> teams;

  std::size_t team_count() const { return teams.size(); }
  std::size_t player_count() const;
};

// Throws DomainError unless the match has >= 2 teams, non-empty duplicate-free
// rosters, no player on two teams, and observed ranks forming 1..N.
void validate_match(const MatchRecord& match);

struct TeamScore {
  std::string team_id;
  double score = 0.0;
};

struct PredictedEntry {
  std::string team_id;
  int predicted_rank = 0;
  double score = 0.0;

  friend bool operator==(const PredictedEntry&, const PredictedEntry&) = default;
};

// Entries are aligned with the input score order (and hence with
// MatchRecord::teams when produced by a rating system). Tie groups hold
// indices into `entries` of teams whose scores were exactly equal.
struct PredictedRanking {
  std::vector<PredictedEntry> entries;
  std::vector<std::vector<std::size_t>> tie_groups;
  std::uint64_t seed_used = 0;

  std::vector<int> ranks() const;

  friend bool operator==(const PredictedRanking&, const PredictedRanking&) = default;
};

// C(n, 2) as a double.
double pair_count(std::size_t n);

// (N - observed_rank) / C(N, 2). Sums to exactly 1 over a full match.
double normalized_result(int observed_rank, int team_count);

// Higher score -> better (smaller) predicted rank. Exactly equal scores form a
// tie group whose internal order is a seeded uniform shuffle.
PredictedRanking rank_teams_by_score(std::span<const TeamScore> scores,
                                     std::uint64_t rng_seed);

// Independent per-match stream seed derived from a run seed.
std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t index);

// Looks up a roster member; throws ContractViolation when the harness has not
// inserted a rating entry for them.
PlayerRating& rating_of(RatingState& state, const PlayerId& id);
const PlayerRating& rating_of(const RatingState& state, const PlayerId& id);

// Bumps games_played and stores the team placement for every participant.
void record_participation(RatingState& state, const MatchRecord& match);

// Sink for non-fatal warnings raised during updates and ingestion.
struct Diagnostics {
  std::vector<std::string> messages;

  void warn(std::string message) { messages.push_back(std::move(message)); }
};

}  // namespace royale
