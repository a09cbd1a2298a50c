#pragma once

#include <span>
#include <vector>

#include "royale/model.hpp"

namespace royale::metrics {

struct RankPair {
  int predicted = 0;
  int observed = 0;

  int error() const { return predicted > observed ? predicted - observed : observed - predicted; }
};

// Which ordering the position index i of AP and NDCG walks.
enum class PositionConvention {
  kObserved,   // i = observed rank (leaderboard from the winner down)
  kPredicted,  // i = predicted rank
};

struct MetricOptions {
  double ndcg_base = 2.0;
  PositionConvention positions = PositionConvention::kObserved;
};

struct MetricReport {
  double accuracy = 0.0;
  double mae = 0.0;
  double kendall_tau = 0.0;
  double mrr = 0.0;
  double ap = 0.0;
  double ndcg = 0.0;
  int team_count = 0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Throws DomainError unless both columns are permutations of 1..N, N >= 2.
void validate_pairs(std::span<const RankPair> pairs);

std::vector<RankPair> make_rank_pairs(const PredictedRanking& prediction, const MatchRecord& match);

double accuracy(std::span<const RankPair> pairs);
double mae(std::span<const RankPair> pairs);

// Tau-a via inversion counting, O(N log N).
double kendall_tau(std::span<const RankPair> pairs);
// Same quantity by direct pair enumeration.
double kendall_tau_quadratic(std::span<const RankPair> pairs);

double mrr(std::span<const RankPair> pairs);
double average_precision(std::span<const RankPair> pairs,
                         PositionConvention positions = PositionConvention::kObserved);
// Position weight 1 / log_base(i + 1), relevance 1 / (1 + error). The base
// scales DCG and IDCG alike and so cancels in the ratio.
double ndcg(std::span<const RankPair> pairs, double weight_base = 2.0,
            PositionConvention positions = PositionConvention::kObserved);

MetricReport evaluate(std::span<const RankPair> pairs, const MetricOptions& options = {});

// Tau-a between two real-valued series; tied pairs count as neither
// concordant nor discordant.
double rank_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace royale::metrics
