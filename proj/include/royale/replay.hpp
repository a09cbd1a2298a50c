#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "royale/metrics.hpp"
#include "royale/model.hpp"
#include "royale/rating_system.hpp"

namespace royale {

struct ReplayOptions {
  std::uint64_t seed = 0;
  metrics::MetricOptions metric_options;
  // Also score AP/NDCG under the other position convention.
  bool report_alternate_positions = false;
};

struct MatchEvaluation {
  std::string match_id;
  std::string timestamp;
  int team_count = 0;
  double new_player_fraction = 0.0;
  metrics::MetricReport report;
  std::optional<metrics::MetricReport> alternate;
  std::vector<int> team_errors;  // |R_pred - R_obs|, aligned with MatchRecord::teams
  std::size_t tied_teams = 0;    // teams whose order came from tie-breaking
};

struct RatingStore {
  std::string system;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::size_t matches_processed = 0;
  RatingState ratings;
};

struct ReplayResult {
  RatingStore store;
  std::vector<MatchEvaluation> evaluations;  // one per match, in replay order
  std::vector<std::string> diagnostics;
};

// Replays matches in the given (chronological) order: unseen players get the
// system's initial rating, the pre-match prediction is scored, then the update
// is applied.
ReplayResult replay(std::span<const MatchRecord> matches, const SystemConfig& config,
                    const ReplayOptions& options = {});

// Versioned text snapshot: a key=value header followed by one tab-separated
// line per player, sorted by player id. Doubles round-trip exactly.
void write_store(std::ostream& out, const RatingStore& store);
RatingStore read_store(std::istream& in, const std::string& source_name = "<store>");
SystemConfig config_of(const RatingStore& store);

// match_id,timestamp,N,new_player_fraction,accuracy,mae,kendall_tau,mrr,ap,ndcg
// plus ap_alt,ndcg_alt when alternate reports are present.
void write_metrics_csv(std::ostream& out, std::span<const MatchEvaluation> evaluations);

}  // namespace royale
