#include "royale/elo.hpp"

#include <cmath>
#include <numeric>

#include "royale/errors.hpp"

namespace royale::elo {

void validate(const EloParams& params) {
  if (!(params.k_factor > 0.0)) throw DomainError("elo: k_factor must be > 0");
  if (!(params.d_scale > 0.0)) throw DomainError("elo: d_scale must be > 0");
  if (!std::isfinite(params.default_rating)) {
    throw DomainError("elo: default_rating must be finite");
  }
}

double team_rating(std::span<const double> member_ratings) {
  if (member_ratings.empty()) throw DomainError("elo: empty roster");
  return std::accumulate(member_ratings.begin(), member_ratings.end(), 0.0);
}

std::vector<double> contribution_weights(std::span<const double> member_ratings) {
  const double total = team_rating(member_ratings);
  if (total == 0.0) throw DomainError("elo: zero team rating, contribution weights undefined");
  std::vector<double> w;
  w.reserve(member_ratings.size());
  for (double mu : member_ratings) w.push_back(mu / total);
  return w;
}

namespace {

double pairwise(double mu_i, double mu_j, double d_scale) {
  return 1.0 / (1.0 + std::exp((mu_j - mu_i) / d_scale));
}

}  // namespace

double win_probability(std::size_t team_index, std::span<const double> team_ratings,
                       const EloParams& params) {
  const std::size_t n = team_ratings.size();
  if (n < 2) throw DomainError("elo: win probability needs at least 2 teams");
  if (team_index >= n) throw DomainError("elo: team index out of range");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == team_index) continue;
    sum += pairwise(team_ratings[team_index], team_ratings[j], params.d_scale);
  }
  return sum / pair_count(n);
}

std::vector<double> win_probabilities(std::span<const double> team_ratings,
                                      const EloParams& params) {
  std::vector<double> pr(team_ratings.size());
  for (std::size_t i = 0; i < team_ratings.size(); ++i) {
    pr[i] = win_probability(i, team_ratings, params);
  }
  return pr;
}

MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const EloParams& params, std::uint64_t seed, Diagnostics* diag) {
  const std::size_t n = match.teams.size();
  std::vector<std::vector<double>> members(n);
  std::vector<double> team_mu(n);
  std::vector<TeamScore> scores(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (const auto& id : match.teams[t].members) members[t].push_back(rating_of(state, id).mu);
    team_mu[t] = team_rating(members[t]);
    scores[t] = {match.teams[t].team_id, team_mu[t]};
  }

  MatchOutcome out;
  out.prediction = rank_teams_by_score(scores, seed);
  const auto pr = win_probabilities(team_mu, params);
  out.teams.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    auto& tu = out.teams[t];
    tu.old_rating = team_mu[t];
    tu.win_probability = pr[t];
    tu.normalized_result = normalized_result(match.teams[t].observed_rank, static_cast<int>(n));
    tu.delta = params.k_factor * (tu.normalized_result - tu.win_probability);
  }

  for (std::size_t t = 0; t < n; ++t) {
    const auto& team = match.teams[t];
    std::vector<double> w;
    if (team_mu[t] > 0.0) {
      w = contribution_weights(members[t]);
    } else {
      w.assign(members[t].size(), 1.0 / static_cast<double>(members[t].size()));
      if (diag) {
        diag->warn("elo: match " + match.match_id + " team " + team.team_id +
                   " has non-positive rating sum; using uniform weights");
      }
    }
    for (std::size_t j = 0; j < team.members.size(); ++j) {
      rating_of(state, team.members[j]).mu += w[j] * out.teams[t].delta;
    }
  }
  record_participation(state, match);
  return out;
}

}  // namespace royale::elo
