#include "royale/glicko.hpp"

#include <cmath>
#include <numbers>

#include "royale/errors.hpp"

namespace royale::glicko {

void validate(const GlickoParams& params) {
  if (!(params.default_sigma > 0.0)) throw DomainError("glicko: default_sigma must be > 0");
  if (!(params.q_constant > 0.0)) throw DomainError("glicko: q_constant must be > 0");
  if (!std::isfinite(params.default_mu)) throw DomainError("glicko: default_mu must be finite");
}

TeamBelief team_mu_sigma(std::span<const double> member_mu, std::span<const double> member_sigma) {
  if (member_mu.empty()) throw DomainError("glicko: empty roster");
  if (member_mu.size() != member_sigma.size()) {
    throw DomainError("glicko: mu and sigma rosters differ in size");
  }
  TeamBelief team;
  for (std::size_t j = 0; j < member_mu.size(); ++j) {
    if (!(member_sigma[j] > 0.0)) throw DomainError("glicko: member sigma must be > 0");
    team.mu += member_mu[j];
    team.sigma += member_sigma[j];
  }
  return team;
}

double g_weight(double sigma, double q) {
  if (sigma < 0.0) throw DomainError("glicko: g_weight of negative sigma");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return 1.0 / std::sqrt(1.0 + 3.0 * q * q * sigma * sigma / pi2);
}

double win_probability(std::size_t team_index, std::span<const TeamBelief> teams,
                       const GlickoParams& params) {
  const std::size_t n = teams.size();
  if (n < 2) throw DomainError("glicko: win probability needs at least 2 teams");
  if (team_index >= n) throw DomainError("glicko: team index out of range");
  const auto& me = teams[team_index];
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == team_index) continue;
    const double g = g_weight(std::hypot(me.sigma, teams[j].sigma), params.q_constant);
    sum += 1.0 / (1.0 + std::pow(10.0, -g * (me.mu - teams[j].mu) / 400.0));
  }
  return sum / pair_count(n);
}

std::vector<double> win_probabilities(std::span<const TeamBelief> teams,
                                      const GlickoParams& params) {
  std::vector<double> pr(teams.size());
  for (std::size_t i = 0; i < teams.size(); ++i) pr[i] = win_probability(i, teams, params);
  return pr;
}

double opponent_sigma(std::size_t team_index, std::span<const TeamBelief> teams) {
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < teams.size(); ++j) {
    if (j != team_index) sum_sq += teams[j].sigma * teams[j].sigma;
  }
  return std::sqrt(sum_sq / static_cast<double>(teams.size() - 1));
}

TeamUpdate team_update(std::size_t team_index, std::span<const TeamBelief> teams,
                       double normalized_result, double win_probability,
                       const GlickoParams& params) {
  const double q = params.q_constant;
  TeamUpdate u;
  u.before = teams[team_index];
  u.win_probability = win_probability;
  u.normalized_result = normalized_result;
  u.opponent_sigma = opponent_sigma(team_index, teams);
  const double g = g_weight(u.opponent_sigma, q);
  u.inverse_d2 = q * q * g * g * win_probability * (1.0 - win_probability);
  if (!(u.inverse_d2 >= 0.0)) throw NumericalError("glicko: d^2 is not positive");
  const double precision = 1.0 / (u.before.sigma * u.before.sigma) + u.inverse_d2;
  u.delta_mu = q / precision * g * (normalized_result - win_probability);
  u.new_sigma = std::sqrt(1.0 / precision);
  if (!std::isfinite(u.delta_mu) || !std::isfinite(u.new_sigma)) {
    throw NumericalError("glicko: non-finite team update");
  }
  return u;
}

MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const GlickoParams& params, std::uint64_t seed, Diagnostics* diag) {
  const std::size_t n = match.teams.size();
  std::vector<std::vector<double>> mus(n), sigmas(n);
  std::vector<TeamBelief> teams(n);
  std::vector<TeamScore> scores(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (const auto& id : match.teams[t].members) {
      const auto& r = rating_of(state, id);
      if (!r.sigma) throw ContractViolation("glicko: player " + id.str() + " has no deviation");
      mus[t].push_back(r.mu);
      sigmas[t].push_back(*r.sigma);
    }
    teams[t] = team_mu_sigma(mus[t], sigmas[t]);
    scores[t] = {match.teams[t].team_id, teams[t].mu};
  }

  MatchOutcome out;
  out.prediction = rank_teams_by_score(scores, seed);
  const auto pr = win_probabilities(teams, params);
  out.teams.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double r = normalized_result(match.teams[t].observed_rank, static_cast<int>(n));
    out.teams.push_back(team_update(t, teams, r, pr[t], params));
  }

  for (std::size_t t = 0; t < n; ++t) {
    const auto& team = match.teams[t];
    const auto& u = out.teams[t];
    const double delta_sigma = u.new_sigma - u.before.sigma;
    const bool uniform = !(u.before.mu > 0.0);
    if (uniform && diag) {
      diag->warn("glicko: match " + match.match_id + " team " + team.team_id +
                 " has non-positive rating sum; using uniform weights");
    }
    if (diag && u.new_sigma < 1.0) {
      diag->warn("glicko: match " + match.match_id + " team " + team.team_id +
                 " deviation fell below 1");
    }
    const double size = static_cast<double>(team.members.size());
    for (std::size_t j = 0; j < team.members.size(); ++j) {
      auto& rating = rating_of(state, team.members[j]);
      const double w_mu = uniform ? 1.0 / size : mus[t][j] / u.before.mu;
      const double w_sigma = sigmas[t][j] / u.before.sigma;
      rating.mu += w_mu * u.delta_mu;
      rating.sigma = *rating.sigma + w_sigma * delta_sigma;
    }
  }
  record_participation(state, match);
  return out;
}

}  // namespace royale::glicko
