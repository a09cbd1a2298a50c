#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "royale/model.hpp"

namespace royale::synth {

struct SynthConfig {
  int player_count = 200;
  int team_size = 2;
  int teams_per_match = 10;
  int match_count = 1000;
  double skill_mean = 0.0;
  double skill_spread = 1.0;
  double noise_spread = 0.0;  // 0 makes placements follow latent team sums exactly
  std::uint64_t seed = 1;
  std::int64_t start_epoch_ms = 1'500'000'000'000;  // 2017-07-14T02:40:00Z
  std::int64_t match_interval_ms = 60'000;
};

void validate(const SynthConfig& config);

struct LatentSkill {
  PlayerId player;
  double skill = 0.0;
};

struct SynthDataset {
  std::vector<MatchRecord> matches;  // chronological
  std::vector<LatentSkill> latent;   // one per player, in id order p0000..
};

// Each match draws team_size * teams_per_match distinct players; team
// performance is the sum over members of (latent skill + Gaussian noise), and
// placements follow descending performance.
SynthDataset generate(const SynthConfig& config);

void write_latent_csv(std::ostream& out, std::span<const LatentSkill> latent);

// "YYYY-MM-DDTHH:MM:SS.mmmZ" for a Unix millisecond instant.
std::string format_timestamp(std::int64_t epoch_ms);

}  // namespace royale::synth
