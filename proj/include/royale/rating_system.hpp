#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "royale/elo.hpp"
#include "royale/glicko.hpp"
#include "royale/model.hpp"
#include "royale/prev_rank.hpp"
#include "royale/trueskill.hpp"

namespace royale {

using SystemConfig = std::variant<elo::EloParams, glicko::GlickoParams,
                                  trueskill::TrueSkillParams, prev_rank::PrevRankParams>;

// "elo", "glicko", "trueskill" or "prevrank".
std::string system_name(const SystemConfig& config);

// Default-parameter configuration for a system name; throws DomainError on an
// unknown name.
SystemConfig default_config(std::string_view name);

void validate(const SystemConfig& config);

// Flat, ordered key/value view of every parameter, used for summaries and
// snapshot headers. Values are formatted losslessly.
std::map<std::string, std::string> describe_params(const SystemConfig& config);

// Inverse of describe_params for a named system. Missing keys keep defaults;
// unknown keys throw DataError.
SystemConfig config_from_params(std::string_view name,
                                const std::map<std::string, std::string>& params);

// Rating entry given to a player the first time they appear.
PlayerRating initial_rating(const SystemConfig& config);

// Predicts the match from pre-match state, then applies the system's update.
PredictedRanking update_match(const SystemConfig& config, RatingState& state,
                              const MatchRecord& match, std::uint64_t seed,
                              Diagnostics* diag = nullptr);

// Orders players for cohort selection: mu (minus k*sigma when
// `conservative_k` > 0 and a deviation exists). PreviousRank ranks by the
// negated stored placement.
double cohort_score(const SystemConfig& config, const PlayerRating& rating,
                    double conservative_k = 0.0);

}  // namespace royale
