#include "royale/replay.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "royale/errors.hpp"
#include "royale/format.hpp"

namespace royale {

ReplayResult replay(std::span<const MatchRecord> matches, const SystemConfig& config,
                    const ReplayOptions& options) {
  validate(config);
  ReplayResult result;
  result.store.system = system_name(config);
  result.store.params = describe_params(config);
  result.store.seed = options.seed;
  result.evaluations.reserve(matches.size());

  Diagnostics diag;
  const PlayerRating fresh = initial_rating(config);
  metrics::MetricOptions alt_options = options.metric_options;
  alt_options.positions = options.metric_options.positions == metrics::PositionConvention::kObserved
                              ? metrics::PositionConvention::kPredicted
                              : metrics::PositionConvention::kObserved;

  for (std::size_t m = 0; m < matches.size(); ++m) {
    const MatchRecord& match = matches[m];
    std::size_t unseen = 0;
    for (const auto& team : match.teams) {
      for (const auto& id : team.members) {
        if (result.store.ratings.try_emplace(id, fresh).second) ++unseen;
      }
    }

    const PredictedRanking prediction =
        update_match(config, result.store.ratings, match, derive_seed(options.seed, m), &diag);
    const auto pairs = metrics::make_rank_pairs(prediction, match);

    MatchEvaluation eval;
    eval.match_id = match.match_id;
    eval.timestamp = match.timestamp;
    eval.team_count = static_cast<int>(match.teams.size());
    eval.new_player_fraction =
        static_cast<double>(unseen) / static_cast<double>(match.player_count());
    eval.report = metrics::evaluate(pairs, options.metric_options);
    if (options.report_alternate_positions) eval.alternate = metrics::evaluate(pairs, alt_options);
    eval.team_errors.reserve(pairs.size());
    for (const auto& p : pairs) eval.team_errors.push_back(p.error());
    for (const auto& group : prediction.tie_groups) eval.tied_teams += group.size();
    result.evaluations.push_back(std::move(eval));
    ++result.store.matches_processed;
  }
  result.diagnostics = std::move(diag.messages);
  return result;
}

namespace {

constexpr const char* kStoreMagic = "# royale-rating-store v1";

std::string optional_double(const std::optional<double>& v) {
  return v ? format_double(*v) : "-";
}

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_store(std::ostream& out, const RatingStore& store) {
  out << kStoreMagic << '\n';
  out << "system=" << store.system << '\n';
  for (const auto& [key, value] : store.params) out << "param." << key << '=' << value << '\n';
  out << "seed=" << store.seed << '\n';
  out << "matches_processed=" << store.matches_processed << '\n';
  out << "players=" << store.ratings.size() << '\n';
  out << "# player_id\tmu\tsigma\tgames_played\tlast_observed_rank\n";

  std::vector<const std::pair<const PlayerId, PlayerRating>*> rows;
  rows.reserve(store.ratings.size());
  for (const auto& entry : store.ratings) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->first < b->first; });
  for (const auto* row : rows) {
    const auto& r = row->second;
    out << row->first.str() << '\t' << format_double(r.mu) << '\t' << optional_double(r.sigma)
        << '\t' << r.games_played << '\t' << optional_int(r.last_observed_rank) << '\n';
  }
}

RatingStore read_store(std::istream& in, const std::string& source_name) {
  RatingStore store;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kStoreMagic) {
    throw DataError(source_name, line_no, "not a rating-store snapshot (bad magic line)");
  }
  std::size_t expected_players = 0;
  bool in_body = false;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (line[0] == '#') {
        in_body = true;
        continue;
      }
      if (!in_body) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DataError("header line without '='");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "system") {
          store.system = value;
        } else if (key.starts_with("param.")) {
          store.params[key.substr(6)] = value;
        } else if (key == "seed") {
          store.seed = std::stoull(value);
        } else if (key == "matches_processed") {
          store.matches_processed = static_cast<std::size_t>(parse_int(value));
        } else if (key == "players") {
          expected_players = static_cast<std::size_t>(parse_int(value));
        } else {
          throw DataError("unknown header key '" + key + "'");
        }
        continue;
      }
      const auto fields = split(line, '\t');
      if (fields.size() != 5) throw DataError("expected 5 tab-separated fields");
      PlayerRating r;
      r.mu = parse_double(fields[1]);
      if (fields[2] != "-") r.sigma = parse_double(fields[2]);
      r.games_played = static_cast<int>(parse_int(fields[3]));
      if (fields[4] != "-") r.last_observed_rank = static_cast<int>(parse_int(fields[4]));
      if (!store.ratings.emplace(PlayerId(fields[0]), r).second) {
        throw DataError("duplicate player '" + fields[0] + "'");
      }
    }
  } catch (const DataError& e) {
    throw DataError(source_name, line_no, e.what());
  } catch (const std::exception& e) {
    throw DataError(source_name, line_no, e.what());
  }
  if (store.ratings.size() != expected_players) {
    throw DataError(source_name, line_no,
                    "player count mismatch: header says " + std::to_string(expected_players) +
                        ", found " + std::to_string(store.ratings.size()));
  }
  return store;
}

SystemConfig config_of(const RatingStore& store) {
  return config_from_params(store.system, store.params);
}

void write_metrics_csv(std::ostream& out, std::span<const MatchEvaluation> evaluations) {
  const bool alt = !evaluations.empty() && evaluations.front().alternate.has_value();
  out << "match_id,timestamp,N,new_player_fraction,accuracy,mae,kendall_tau,mrr,ap,ndcg";
  if (alt) out << ",ap_alt,ndcg_alt";
  out << '\n';
  for (const auto& e : evaluations) {
    const auto& r = e.report;
    out << e.match_id << ',' << e.timestamp << ',' << e.team_count << ','
        << format_double(e.new_player_fraction) << ',' << format_double(r.accuracy) << ','
        << format_double(r.mae) << ',' << format_double(r.kendall_tau) << ','
        << format_double(r.mrr) << ',' << format_double(r.ap) << ',' << format_double(r.ndcg);
    if (alt && e.alternate) {
      out << ',' << format_double(e.alternate->ap) << ',' << format_double(e.alternate->ndcg);
    }
    out << '\n';
  }
}

}  // namespace royale
