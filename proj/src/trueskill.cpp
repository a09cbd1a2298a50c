#include "royale/trueskill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "royale/errors.hpp"

namespace royale::trueskill {

void validate(const TrueSkillParams& params) {
  if (!(params.beta > 0.0)) throw DomainError("trueskill: beta must be > 0");
  if (!(params.default_sigma > 0.0)) throw DomainError("trueskill: default_sigma must be > 0");
  if (!(params.tau >= 0.0)) throw DomainError("trueskill: tau must be >= 0");
  if (!std::isfinite(params.default_mu)) throw DomainError("trueskill: default_mu must be finite");
}

namespace {

constexpr double kTailSwitch = -5.0;
constexpr int kFractionDepth = 120;

// For z = -x > 0, evaluates the tail of the Mills-ratio continued fraction
//   z + 2/(z + 3/(z + ...))
// so that v(x) = z + 1/tail and v(x) + x = 1/tail.
double mills_tail(double z) {
  double f = z;
  for (int k = kFractionDepth; k >= 2; --k) f = z + k / f;
  return f;
}

double std_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

double v_exceeds(double x) {
  if (x < kTailSwitch) return -x + 1.0 / mills_tail(-x);
  return std_pdf(x) / std_cdf(x);
}

double w_exceeds(double x) {
  if (x < kTailSwitch) {
    const double tail = mills_tail(-x);
    const double v = -x + 1.0 / tail;
    return v / tail;
  }
  const double v = v_exceeds(x);
  return v * (v + x);
}

PairUpdate update_pair(const Side& winner, const Side& loser, double beta) {
  PairUpdate u;
  const double n = static_cast<double>(winner.members + loser.members);
  u.c = std::sqrt(n * beta * beta + winner.variance + loser.variance);
  u.t = winner.mu - loser.mu;
  const double x = u.t / u.c;
  const double v = v_exceeds(x);
  const double w = w_exceeds(x);
  u.winner_delta_mu = winner.variance / u.c * v;
  u.loser_delta_mu = -loser.variance / u.c * v;
  u.winner_shrink = 1.0 - winner.variance / (u.c * u.c) * w;
  u.loser_shrink = 1.0 - loser.variance / (u.c * u.c) * w;
  return u;
}

std::pair<Belief, Belief> update_pair(const Belief& winner, const Belief& loser, double beta) {
  const auto u = update_pair(Side{winner.mu, winner.sigma * winner.sigma, 1},
                             Side{loser.mu, loser.sigma * loser.sigma, 1}, beta);
  return {Belief{winner.mu + u.winner_delta_mu, winner.sigma * u.winner_shrink},
          Belief{loser.mu + u.loser_delta_mu, loser.sigma * u.loser_shrink}};
}

MatchOutcome update_match(RatingState& state, const MatchRecord& match,
                          const TrueSkillParams& params, std::uint64_t seed, Diagnostics* diag) {
  const std::size_t n = match.teams.size();
  const double tau2 = params.tau * params.tau;
  std::vector<std::vector<double>> variances(n), mus(n);
  std::vector<Side> sides(n);
  std::vector<TeamScore> scores(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& team = match.teams[t];
    if (team.members.empty()) throw DomainError("trueskill: empty roster");
    for (const auto& id : team.members) {
      const auto& r = rating_of(state, id);
      if (!r.sigma) throw ContractViolation("trueskill: player " + id.str() + " has no deviation");
      mus[t].push_back(r.mu);
      variances[t].push_back(*r.sigma * *r.sigma + tau2);
    }
    sides[t].mu = std::accumulate(mus[t].begin(), mus[t].end(), 0.0);
    sides[t].variance = std::accumulate(variances[t].begin(), variances[t].end(), 0.0);
    sides[t].members = static_cast<int>(team.members.size());
    scores[t] = {team.team_id, sides[t].mu};
  }

  MatchOutcome out;
  out.prediction = rank_teams_by_score(scores, seed);
  out.team_delta_mu.assign(n, 0.0);
  out.team_shrink.assign(n, 1.0);

  std::vector<std::size_t> standings(n);
  std::iota(standings.begin(), standings.end(), std::size_t{0});
  std::sort(standings.begin(), standings.end(), [&](std::size_t a, std::size_t b) {
    return match.teams[a].observed_rank < match.teams[b].observed_rank;
  });
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t w = standings[k];
    const std::size_t l = standings[k + 1];
    const auto u = update_pair(sides[w], sides[l], params.beta);
    out.team_delta_mu[w] += u.winner_delta_mu;
    out.team_delta_mu[l] += u.loser_delta_mu;
    out.team_shrink[w] *= u.winner_shrink;
    out.team_shrink[l] *= u.loser_shrink;
  }

  for (std::size_t t = 0; t < n; ++t) {
    const auto& team = match.teams[t];
    const double size = static_cast<double>(team.members.size());
    bool uniform = false;
    if (params.member_share == MemberShare::kMean && !(sides[t].mu > 0.0)) {
      uniform = true;
      if (diag) {
        diag->warn("trueskill: match " + match.match_id + " team " + team.team_id +
                   " has non-positive rating sum; using uniform weights");
      }
    }
    for (std::size_t j = 0; j < team.members.size(); ++j) {
      double share = 0.0;
      if (uniform) {
        share = 1.0 / size;
      } else if (params.member_share == MemberShare::kMean) {
        share = mus[t][j] / sides[t].mu;
      } else {
        share = variances[t][j] / sides[t].variance;
      }
      auto& rating = rating_of(state, team.members[j]);
      rating.mu += share * out.team_delta_mu[t];
      rating.sigma = std::sqrt(variances[t][j]) * out.team_shrink[t];
      if (!std::isfinite(rating.mu) || !(*rating.sigma > 0.0)) {
        throw NumericalError("trueskill: invalid posterior for player " + team.members[j].str());
      }
    }
  }
  record_participation(state, match);
  return out;
}

}  // namespace royale::trueskill
