#include "royale/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "royale/errors.hpp"

namespace royale::metrics {

void validate_pairs(std::span<const RankPair> pairs) {
  const std::size_t n = pairs.size();
  if (n < 2) throw DomainError("metrics: need at least 2 teams");
  std::vector<bool> pred(n + 1, false), obs(n + 1, false);
  for (const auto& p : pairs) {
    if (p.predicted < 1 || static_cast<std::size_t>(p.predicted) > n || pred[p.predicted]) {
      throw DomainError("metrics: predicted ranks are not a permutation of 1..N");
    }
    if (p.observed < 1 || static_cast<std::size_t>(p.observed) > n || obs[p.observed]) {
      throw DomainError("metrics: observed ranks are not a permutation of 1..N");
    }
    pred[p.predicted] = true;
    obs[p.observed] = true;
  }
}

std::vector<RankPair> make_rank_pairs(const PredictedRanking& prediction, const MatchRecord& match) {
  if (prediction.entries.size() != match.teams.size()) {
    throw ContractViolation("metrics: prediction and match disagree on team count");
  }
  std::vector<RankPair> pairs(match.teams.size());
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    pairs[t] = {prediction.entries[t].predicted_rank, match.teams[t].observed_rank};
  }
  return pairs;
}

double accuracy(std::span<const RankPair> pairs) {
  validate_pairs(pairs);
  const auto hits = std::count_if(pairs.begin(), pairs.end(),
                                  [](const RankPair& p) { return p.predicted == p.observed; });
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double mae(std::span<const RankPair> pairs) {
  validate_pairs(pairs);
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.error();
  return sum / static_cast<double>(pairs.size());
}

namespace {

std::uint64_t count_inversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) {
      scratch[k++] = v[i++];
    } else {
      inv += mid - i;
      scratch[k++] = v[j++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return inv;
}

// Predicted rank of the team sitting at each position (1-based position - 1).
std::vector<const RankPair*> by_position(std::span<const RankPair> pairs,
                                         PositionConvention positions) {
  std::vector<const RankPair*> out(pairs.size());
  for (const auto& p : pairs) {
    const int pos = positions == PositionConvention::kObserved ? p.observed : p.predicted;
    out[pos - 1] = &p;
  }
  return out;
}

}  // namespace

double kendall_tau(std::span<const RankPair> pairs) {
  validate_pairs(pairs);
  const std::size_t n = pairs.size();
  std::vector<int> pred_by_obs(n);
  for (const auto& p : pairs) pred_by_obs[p.observed - 1] = p.predicted;
  std::vector<int> scratch(n);
  const auto discordant = static_cast<double>(count_inversions(pred_by_obs, scratch, 0, n));
  const double total = pair_count(n);
  return (total - 2.0 * discordant) / total;
}

double kendall_tau_quadratic(std::span<const RankPair> pairs) {
  validate_pairs(pairs);
  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const long s = static_cast<long>(pairs[i].predicted - pairs[j].predicted) *
                     (pairs[i].observed - pairs[j].observed);
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }
  return static_cast<double>(concordant - discordant) / pair_count(pairs.size());
}

double mrr(std::span<const RankPair> pairs) {
  validate_pairs(pairs);
  double sum = 0.0;
  for (const auto& p : pairs) sum += 1.0 / (1.0 + p.error());
  return sum / static_cast<double>(pairs.size());
}

double average_precision(std::span<const RankPair> pairs, PositionConvention positions) {
  validate_pairs(pairs);
  const auto ordered = by_position(pairs, positions);
  double sum = 0.0;
  int hits = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const RankPair& p = *ordered[i];
    if (p.predicted == p.observed) ++hits;
    const double precision = static_cast<double>(hits) / static_cast<double>(i + 1);
    sum += precision / (1.0 + p.error());
  }
  return sum / static_cast<double>(pairs.size());
}

double ndcg(std::span<const RankPair> pairs, double weight_base, PositionConvention positions) {
  if (!(weight_base > 1.0)) throw DomainError("metrics: ndcg weight base must be > 1");
  validate_pairs(pairs);
  const auto ordered = by_position(pairs, positions);
  const double log_base = std::log(weight_base);
  double dcg = 0.0, ideal = 0.0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const double weight = log_base / std::log(static_cast<double>(i) + 2.0);
    dcg += weight / (1.0 + ordered[i]->error());
    ideal += weight;
  }
  return dcg / ideal;
}

MetricReport evaluate(std::span<const RankPair> pairs, const MetricOptions& options) {
  MetricReport r;
  r.team_count = static_cast<int>(pairs.size());
  r.accuracy = accuracy(pairs);
  r.mae = mae(pairs);
  r.kendall_tau = kendall_tau(pairs);
  r.mrr = mrr(pairs);
  r.ap = average_precision(pairs, options.positions);
  r.ndcg = ndcg(pairs, options.ndcg_base, options.positions);
  return r;
}

double rank_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("rank_correlation: series differ in length");
  if (x.size() < 2) throw DomainError("rank_correlation: need at least 2 observations");
  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double s = (x[i] - x[j]) * (y[i] - y[j]);
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }
  return static_cast<double>(concordant - discordant) / pair_count(x.size());
}

}  // namespace royale::metrics
