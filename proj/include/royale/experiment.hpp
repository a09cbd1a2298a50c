#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "royale/replay.hpp"

namespace royale {

struct TrendPoint {
  std::size_t position = 0;  // match sequence number (all players) or game index
  double accuracy = 0.0;
  double mae = 0.0;
  double kendall_tau = 0.0;
  double mrr = 0.0;
  double ap = 0.0;
  double ndcg = 0.0;
  double new_player_fraction = 0.0;
  std::size_t match_count = 0;  // observations behind this point
  std::optional<double> focal_error;  // mean error of the focal player's team
};

struct ExperimentTrend {
  std::string setup;  // "all", "best" or "frequent"
  std::vector<TrendPoint> points;
  std::size_t window = 1;
  std::size_t cohort_size = 0;
  std::vector<std::string> diagnostics;
};

// Set-up 1: every match in order, trailing moving average over `window`
// matches (partial windows at the start).
ExperimentTrend setup_all_players(const ReplayResult& replay, std::size_t window);
ExperimentTrend setup_all_players(std::span<const MatchRecord> matches, const SystemConfig& config,
                                  const ReplayOptions& options, std::size_t window = 500);

struct CohortRule {
  std::optional<std::size_t> top_k;  // keep the best k qualifiers by final rating
  int min_games = 10;                // qualifiers played strictly more games
  std::size_t horizon = 10;          // first games scored per player
  double conservative_k = 0.0;       // rank by mu - k*sigma when > 0
};

inline CohortRule best_players_rule() { return {1000, 10, 10, 0.0}; }
inline CohortRule frequent_players_rule() { return {std::nullopt, 100, 100, 0.0}; }

// Qualifying players by the rule, ordered by final cohort score (descending,
// PlayerId ascending on ties) and truncated to top_k.
std::vector<PlayerId> select_cohort(const RatingStore& store, const SystemConfig& config,
                                    const CohortRule& rule, Diagnostics* diag = nullptr);

// Set-ups 2 and 3: for game index g in 1..horizon, the mean over cohort
// players of the full-match report of their g-th match, taken from the single
// chronological replay.
ExperimentTrend setup_cohort(std::string setup_name, std::span<const MatchRecord> matches,
                             const ReplayResult& replay, const SystemConfig& config,
                             const CohortRule& rule);

ExperimentTrend setup_best_players(std::span<const MatchRecord> matches, const SystemConfig& config,
                                   const ReplayOptions& options,
                                   const CohortRule& rule = best_players_rule());
ExperimentTrend setup_frequent_players(std::span<const MatchRecord> matches,
                                       const SystemConfig& config, const ReplayOptions& options,
                                       const CohortRule& rule = frequent_players_rule());

// position_index,accuracy,mae,kendall_tau,mrr,ap,ndcg,new_player_fraction,match_count
// plus focal_error for cohort set-ups.
void write_trend_csv(std::ostream& out, const ExperimentTrend& trend);

}  // namespace royale
