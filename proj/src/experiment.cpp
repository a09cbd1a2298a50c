#include "royale/experiment.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "royale/errors.hpp"
#include "royale/format.hpp"

namespace royale {

namespace {

struct Accumulator {
  double accuracy = 0, mae = 0, tau = 0, mrr = 0, ap = 0, ndcg = 0, fraction = 0, focal = 0;
  std::size_t count = 0;

  void add(const MatchEvaluation& e) {
    accuracy += e.report.accuracy;
    mae += e.report.mae;
    tau += e.report.kendall_tau;
    mrr += e.report.mrr;
    ap += e.report.ap;
    ndcg += e.report.ndcg;
    fraction += e.new_player_fraction;
  }

  TrendPoint mean(std::size_t position, std::size_t n) const {
    const double d = static_cast<double>(n);
    TrendPoint p;
    p.position = position;
    p.accuracy = accuracy / d;
    p.mae = mae / d;
    p.kendall_tau = tau / d;
    p.mrr = mrr / d;
    p.ap = ap / d;
    p.ndcg = ndcg / d;
    p.new_player_fraction = fraction / d;
    p.match_count = n;
    return p;
  }
};

}  // namespace

ExperimentTrend setup_all_players(const ReplayResult& replay, std::size_t window) {
  if (window == 0) throw DomainError("trend window must be >= 1");
  ExperimentTrend trend;
  trend.setup = "all";
  trend.window = window;
  const auto& evals = replay.evaluations;
  trend.points.reserve(evals.size());
  // Re-summed per point; a running sum would accumulate drift over long logs.
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const std::size_t begin = i + 1 >= window ? i + 1 - window : 0;
    Accumulator acc;
    for (std::size_t k = begin; k <= i; ++k) acc.add(evals[k]);
    trend.points.push_back(acc.mean(i + 1, i + 1 - begin));
  }
  return trend;
}

ExperimentTrend setup_all_players(std::span<const MatchRecord> matches, const SystemConfig& config,
                                  const ReplayOptions& options, std::size_t window) {
  return setup_all_players(replay(matches, config, options), window);
}

std::vector<PlayerId> select_cohort(const RatingStore& store, const SystemConfig& config,
                                    const CohortRule& rule, Diagnostics* diag) {
  std::vector<std::pair<double, PlayerId>> qualifiers;
  for (const auto& [id, rating] : store.ratings) {
    if (rating.games_played > rule.min_games) {
      qualifiers.emplace_back(cohort_score(config, rating, rule.conservative_k), id);
    }
  }
  std::sort(qualifiers.begin(), qualifiers.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (rule.top_k && qualifiers.size() < *rule.top_k && diag) {
    diag->warn("cohort: only " + std::to_string(qualifiers.size()) + " players played more than " +
               std::to_string(rule.min_games) + " games; wanted " + std::to_string(*rule.top_k));
  }
  if (rule.top_k && qualifiers.size() > *rule.top_k) qualifiers.resize(*rule.top_k);
  std::vector<PlayerId> cohort;
  cohort.reserve(qualifiers.size());
  for (auto& q : qualifiers) cohort.push_back(std::move(q.second));
  return cohort;
}

ExperimentTrend setup_cohort(std::string setup_name, std::span<const MatchRecord> matches,
                             const ReplayResult& replay, const SystemConfig& config,
                             const CohortRule& rule) {
  if (replay.evaluations.size() != matches.size()) {
    throw ContractViolation("cohort set-up: replay does not cover the given matches");
  }
  ExperimentTrend trend;
  trend.setup = std::move(setup_name);
  Diagnostics diag;
  const auto cohort = select_cohort(replay.store, config, rule, &diag);
  trend.cohort_size = cohort.size();
  if (cohort.empty()) {
    diag.warn("cohort: no player played more than " + std::to_string(rule.min_games) +
              " games; trend is empty");
    trend.diagnostics = std::move(diag.messages);
    return trend;
  }

  std::unordered_map<PlayerId, std::size_t> slot;
  for (std::size_t i = 0; i < cohort.size(); ++i) slot.emplace(cohort[i], i);
  // (match index, team index) of each cohort player's first `horizon` games
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> games(cohort.size());
  for (std::size_t m = 0; m < matches.size(); ++m) {
    for (std::size_t t = 0; t < matches[m].teams.size(); ++t) {
      for (const auto& id : matches[m].teams[t].members) {
        auto it = slot.find(id);
        if (it != slot.end() && games[it->second].size() < rule.horizon) {
          games[it->second].emplace_back(m, t);
        }
      }
    }
  }

  std::vector<Accumulator> acc(rule.horizon);
  for (const auto& player_games : games) {
    for (std::size_t g = 0; g < player_games.size(); ++g) {
      const auto [m, t] = player_games[g];
      const auto& eval = replay.evaluations[m];
      acc[g].add(eval);
      acc[g].focal += eval.team_errors[t];
      ++acc[g].count;
    }
  }
  for (std::size_t g = 0; g < rule.horizon; ++g) {
    if (acc[g].count == 0) {
      diag.warn("cohort: no cohort player reached game " + std::to_string(g + 1));
      break;
    }
    TrendPoint p = acc[g].mean(g + 1, acc[g].count);
    p.focal_error = acc[g].focal / static_cast<double>(acc[g].count);
    trend.points.push_back(p);
  }
  trend.diagnostics = std::move(diag.messages);
  return trend;
}

ExperimentTrend setup_best_players(std::span<const MatchRecord> matches, const SystemConfig& config,
                                   const ReplayOptions& options, const CohortRule& rule) {
  return setup_cohort("best", matches, replay(matches, config, options), config, rule);
}

ExperimentTrend setup_frequent_players(std::span<const MatchRecord> matches,
                                       const SystemConfig& config, const ReplayOptions& options,
                                       const CohortRule& rule) {
  return setup_cohort("frequent", matches, replay(matches, config, options), config, rule);
}

void write_trend_csv(std::ostream& out, const ExperimentTrend& trend) {
  const bool focal = trend.setup != "all";
  out << "position_index,accuracy,mae,kendall_tau,mrr,ap,ndcg,new_player_fraction,match_count";
  if (focal) out << ",focal_error";
  out << '\n';
  for (const auto& p : trend.points) {
    out << p.position << ',' << format_double(p.accuracy) << ',' << format_double(p.mae) << ','
        << format_double(p.kendall_tau) << ',' << format_double(p.mrr) << ','
        << format_double(p.ap) << ',' << format_double(p.ndcg) << ','
        << format_double(p.new_player_fraction) << ',' << p.match_count;
    if (focal) out << ',' << (p.focal_error ? format_double(*p.focal_error) : "");
    out << '\n';
  }
}

}  // namespace royale
