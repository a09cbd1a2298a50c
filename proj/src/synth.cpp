#include "royale/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#include "royale/errors.hpp"
#include "royale/format.hpp"

namespace royale::synth {

void validate(const SynthConfig& config) {
  if (config.team_size < 1) throw DomainError("synth: team size must be >= 1");
  if (config.teams_per_match < 2) throw DomainError("synth: need at least 2 teams per match");
  if (config.match_count < 0) throw DomainError("synth: match count must be >= 0");
  if (static_cast<long long>(config.player_count) <
      static_cast<long long>(config.team_size) * config.teams_per_match) {
    throw DomainError("synth: player count below team_size * teams_per_match");
  }
  if (!(config.skill_spread > 0.0)) throw DomainError("synth: skill spread must be > 0");
  if (!(config.noise_spread >= 0.0)) throw DomainError("synth: noise spread must be >= 0");
}

std::string format_timestamp(std::int64_t epoch_ms) {
  using namespace std::chrono;
  const auto ms = milliseconds{epoch_ms};
  const auto day_point = floor<days>(sys_time<milliseconds>{ms});
  const year_month_day ymd{day_point};
  const auto in_day = ms - day_point.time_since_epoch();
  const auto h = duration_cast<hours>(in_day).count();
  const auto mi = duration_cast<minutes>(in_day).count() % 60;
  const auto s = duration_cast<seconds>(in_day).count() % 60;
  const auto frac = in_day.count() % 1000;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long long>(h),
                static_cast<long long>(mi), static_cast<long long>(s),
                static_cast<long long>(frac));
  return buf;
}

SynthDataset generate(const SynthConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> skill_dist(config.skill_mean, config.skill_spread);

  SynthDataset out;
  const int width = std::max(4, static_cast<int>(std::to_string(config.player_count - 1).size()));
  out.latent.reserve(config.player_count);
  for (int p = 0; p < config.player_count; ++p) {
    std::string id = std::to_string(p);
    id.insert(0, static_cast<std::size_t>(width) - id.size(), '0');
    out.latent.push_back({PlayerId("p" + id), skill_dist(rng)});
  }

  std::normal_distribution<double> noise_dist(0.0, 1.0);
  const int per_match = config.team_size * config.teams_per_match;
  std::vector<int> pool(config.player_count);
  std::iota(pool.begin(), pool.end(), 0);
  out.matches.reserve(config.match_count);

  for (int m = 0; m < config.match_count; ++m) {
    // partial Fisher-Yates: the first per_match slots become the sample
    for (int i = 0; i < per_match; ++i) {
      std::uniform_int_distribution<int> pick(i, config.player_count - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    MatchRecord match;
    match.match_id = "m" + std::to_string(m);
    match.epoch_ms = config.start_epoch_ms + static_cast<std::int64_t>(m) * config.match_interval_ms;
    match.timestamp = format_timestamp(match.epoch_ms);
    std::vector<double> performance(config.teams_per_match, 0.0);
    for (int t = 0; t < config.teams_per_match; ++t) {
      TeamEntry team;
      team.team_id = "t" + std::to_string(t);
      for (int k = 0; k < config.team_size; ++k) {
        const int player = pool[t * config.team_size + k];
        team.members.push_back(out.latent[player].player);
        const double noise = config.noise_spread > 0.0 ? config.noise_spread * noise_dist(rng) : 0.0;
        performance[t] += out.latent[player].skill + noise;
      }
      match.teams.push_back(std::move(team));
    }
    std::vector<int> order(config.teams_per_match);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return performance[a] > performance[b]; });
    for (int place = 0; place < config.teams_per_match; ++place) {
      match.teams[order[place]].observed_rank = place + 1;
    }
    out.matches.push_back(std::move(match));
  }
  return out;
}

void write_latent_csv(std::ostream& out, std::span<const LatentSkill> latent) {
  out << "player_id,latent_skill\n";
  for (const auto& l : latent) out << l.player.str() << ',' << format_double(l.skill) << '\n';
}

}  // namespace royale::synth
