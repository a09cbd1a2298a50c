#include "royale/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <unordered_set>

#include "royale/errors.hpp"
#include "royale/experiment.hpp"
#include "royale/ingest.hpp"
#include "royale/rating_system.hpp"
#include "royale/replay.hpp"
#include "royale/synth.hpp"

namespace royale::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::size_t kMaxDiagnosticsInSummary = 20;

struct SystemFlags {
  elo::EloParams elo;
  glicko::GlickoParams glicko;
  trueskill::TrueSkillParams trueskill;
  std::string member_share = "variance";
};

struct PipelineFlags {
  std::vector<std::string> systems{"elo"};
  std::string input;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int team_size = 2;
  double ndcg_base = 2.0;
  std::string positions = "observed";
  bool verbose = false;
  SystemFlags params;
};

struct ExperimentFlags {
  std::string setup;
  std::size_t window = 0;  // 0 -> per-setup default
  std::size_t top_k = 1000;
  int min_games = -1;      // -1 -> per-setup default
  std::size_t horizon = 0; // 0 -> per-setup default
  std::string rank_by = "mu";
  double conservative_k = 3.0;
};

struct InspectFlags {
  std::string store;
  std::string input;
  std::size_t top = 10;
};

void add_pipeline_options(CLI::App& app, PipelineFlags& f) {
  app.add_option("--system", f.systems, "Rating system(s): elo, glicko, trueskill, prevrank")
      ->check(CLI::IsMember({"elo", "glicko", "trueskill", "prevrank"}))
      ->take_all();
  app.add_option("--input", f.input, "Match log CSV")->required();
  app.add_option("--out", f.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", f.seed, "Tie-breaking seed")->capture_default_str();
  app.add_option("--team-size", f.team_size, "Keep only matches with this team size (0 = all)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--ndcg-base", f.ndcg_base, "Logarithm base of the NDCG position weight")
      ->capture_default_str();
  app.add_option("--positions", f.positions, "Position index of AP/NDCG: observed or predicted")
      ->check(CLI::IsMember({"observed", "predicted"}))
      ->capture_default_str();
  app.add_flag("--verbose", f.verbose, "Also report AP/NDCG under the other position convention");

  auto& p = f.params;
  app.add_option("--k", p.elo.k_factor, "Elo K factor")->capture_default_str();
  app.add_option("--d-scale", p.elo.d_scale, "Elo rating-difference scale D")->capture_default_str();
  app.add_option("--elo-default", p.elo.default_rating, "Elo rating of new players")
      ->capture_default_str();
  app.add_option("--glicko-mu", p.glicko.default_mu, "Glicko rating of new players")
      ->capture_default_str();
  app.add_option("--glicko-sigma", p.glicko.default_sigma, "Glicko deviation of new players")
      ->capture_default_str();
  app.add_option("--glicko-q", p.glicko.q_constant, "Glicko q constant")->capture_default_str();
  app.add_option("--ts-mu", p.trueskill.default_mu, "TrueSkill mean of new players")
      ->capture_default_str();
  app.add_option("--ts-sigma", p.trueskill.default_sigma, "TrueSkill deviation of new players")
      ->capture_default_str();
  app.add_option("--beta", p.trueskill.beta, "TrueSkill performance scale beta")
      ->capture_default_str();
  app.add_option("--tau", p.trueskill.tau, "TrueSkill dynamics noise tau")->capture_default_str();
  app.add_option("--ts-member-share", p.member_share,
                 "Split of team mean change: variance or mean")
      ->check(CLI::IsMember({"variance", "mean"}))
      ->capture_default_str();
}

SystemConfig make_config(const std::string& name, const SystemFlags& flags) {
  SystemConfig config = default_config(name);
  if (name == "elo") config = flags.elo;
  if (name == "glicko") config = flags.glicko;
  if (name == "trueskill") {
    auto ts = flags.trueskill;
    ts.member_share = flags.member_share == "mean" ? trueskill::MemberShare::kMean
                                                   : trueskill::MemberShare::kVariance;
    config = ts;
  }
  validate(config);
  return config;
}

ReplayOptions make_replay_options(const PipelineFlags& f) {
  ReplayOptions options;
  options.seed = f.seed;
  options.metric_options.ndcg_base = f.ndcg_base;
  options.metric_options.positions = f.positions == "predicted"
                                         ? metrics::PositionConvention::kPredicted
                                         : metrics::PositionConvention::kObserved;
  options.report_alternate_positions = f.verbose;
  if (!(f.ndcg_base > 1.0)) throw DomainError("--ndcg-base must be > 1");
  return options;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string(), 0, "cannot open for writing");
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

ordered_json diagnostics_json(const std::vector<std::string>& messages) {
  ordered_json j;
  j["count"] = messages.size();
  auto list = ordered_json::array();
  for (std::size_t i = 0; i < messages.size() && i < kMaxDiagnosticsInSummary; ++i) {
    list.push_back(messages[i]);
  }
  j["first"] = list;
  return j;
}

ordered_json report_json(double accuracy, double mae, double tau, double mrr, double ap,
                         double ndcg) {
  ordered_json j;
  j["accuracy"] = accuracy;
  j["mae"] = mae;
  j["kendall_tau"] = tau;
  j["mrr"] = mrr;
  j["ap"] = ap;
  j["ndcg"] = ndcg;
  return j;
}

ordered_json mean_metrics(std::span<const MatchEvaluation> evals) {
  if (evals.empty()) return nullptr;
  double a = 0, m = 0, t = 0, r = 0, p = 0, n = 0;
  for (const auto& e : evals) {
    a += e.report.accuracy;
    m += e.report.mae;
    t += e.report.kendall_tau;
    r += e.report.mrr;
    p += e.report.ap;
    n += e.report.ndcg;
  }
  const double d = static_cast<double>(evals.size());
  return report_json(a / d, m / d, t / d, r / d, p / d, n / d);
}

ordered_json pipeline_json(const PipelineFlags& f, const IngestResult& ingested) {
  ordered_json j;
  j["input"] = f.input;
  j["seed"] = f.seed;
  j["team_size_filter"] = f.team_size;
  j["metrics"] = {{"ndcg_base", f.ndcg_base}, {"positions", f.positions}, {"verbose", f.verbose}};
  j["ingest"] = {{"rows", ingested.rows},
                 {"matches", ingested.matches.size()},
                 {"rejected", ingested.rejected},
                 {"filtered_out", ingested.filtered_out},
                 {"diagnostics", diagnostics_json(ingested.diagnostics)}};
  return j;
}

ordered_json run_json(const SystemConfig& config, const ReplayResult& result) {
  ordered_json j;
  j["system"] = system_name(config);
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : describe_params(config)) params[key] = value;
  j["params"] = params;
  j["matches_processed"] = result.store.matches_processed;
  j["players"] = result.store.ratings.size();
  std::span<const MatchEvaluation> evals = result.evaluations;
  j["mean_metrics"] = mean_metrics(evals);
  const std::size_t decile = evals.size() / 10;
  j["last_decile_mean_metrics"] =
      decile > 0 ? mean_metrics(evals.subspan(evals.size() - decile)) : mean_metrics(evals);
  j["diagnostics"] = diagnostics_json(result.diagnostics);
  return j;
}

IngestResult load_matches(const PipelineFlags& f, std::ostream& err) {
  IngestOptions options;
  if (f.team_size > 0) options.team_size = f.team_size;
  auto ingested = ingest(fs::path(f.input), options);
  for (const auto& d : ingested.diagnostics) err << "warning: " << d << '\n';
  return ingested;
}

template <class Fn>
auto for_each_system(const PipelineFlags& f, Fn&& fn) {
  using Result = decltype(fn(std::declval<const SystemConfig&>()));
  std::vector<SystemConfig> configs;
  for (const auto& name : f.systems) configs.push_back(make_config(name, f.params));
  std::vector<std::future<Result>> jobs;
  for (const auto& config : configs) {
    jobs.push_back(std::async(std::launch::async, [&fn, &config] { return fn(config); }));
  }
  std::vector<std::pair<SystemConfig, Result>> results;
  for (std::size_t i = 0; i < jobs.size(); ++i) results.emplace_back(configs[i], jobs[i].get());
  return results;
}

int do_replay(const PipelineFlags& f, std::ostream& out, std::ostream& err) {
  const auto options = make_replay_options(f);
  const auto ingested = load_matches(f, err);
  fs::create_directories(f.out_dir);

  auto results = for_each_system(f, [&](const SystemConfig& config) {
    return replay(ingested.matches, config, options);
  });

  ordered_json summary;
  summary["command"] = "replay";
  summary.update(pipeline_json(f, ingested));
  summary["runs"] = ordered_json::array();
  for (const auto& [config, result] : results) {
    const std::string name = system_name(config);
    {
      auto csv = open_output(fs::path(f.out_dir) / (name + "_metrics.csv"));
      write_metrics_csv(csv, result.evaluations);
    }
    {
      auto snap = open_output(fs::path(f.out_dir) / (name + "_store.txt"));
      write_store(snap, result.store);
    }
    summary["runs"].push_back(run_json(config, result));
  }
  write_json(fs::path(f.out_dir) / "replay_summary.json", summary);
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int do_experiment(const PipelineFlags& f, const ExperimentFlags& e, std::ostream& out,
                  std::ostream& err) {
  const auto options = make_replay_options(f);
  const bool all = e.setup == "all";
  const bool best = e.setup == "best";
  const std::size_t window = e.window > 0 ? e.window : (all ? 500 : 1);
  CohortRule rule = best ? best_players_rule() : frequent_players_rule();
  if (best) rule.top_k = e.top_k;
  if (e.min_games >= 0) rule.min_games = e.min_games;
  if (e.horizon > 0) rule.horizon = e.horizon;
  rule.conservative_k = e.rank_by == "conservative" ? e.conservative_k : 0.0;

  const auto ingested = load_matches(f, err);
  fs::create_directories(f.out_dir);

  struct Outcome {
    ReplayResult replay;
    ExperimentTrend trend;
  };
  auto results = for_each_system(f, [&](const SystemConfig& config) {
    Outcome o{replay(ingested.matches, config, options), {}};
    o.trend = all ? setup_all_players(o.replay, window)
                  : setup_cohort(e.setup, ingested.matches, o.replay, config, rule);
    return o;
  });

  ordered_json summary;
  summary["command"] = "experiment";
  summary.update(pipeline_json(f, ingested));
  ordered_json setup;
  setup["name"] = e.setup;
  setup["window"] = window;
  if (!all) {
    setup["top_k"] = rule.top_k ? ordered_json(*rule.top_k) : ordered_json(nullptr);
    setup["min_games_exclusive"] = rule.min_games;
    setup["horizon"] = rule.horizon;
    setup["rank_by"] = e.rank_by;
    setup["conservative_k"] = rule.conservative_k;
  }
  summary["setup"] = setup;
  summary["runs"] = ordered_json::array();
  for (const auto& [config, o] : results) {
    const std::string name = system_name(config);
    {
      auto csv = open_output(fs::path(f.out_dir) / (name + "_" + e.setup + "_trend.csv"));
      write_trend_csv(csv, o.trend);
    }
    {
      auto snap = open_output(fs::path(f.out_dir) / (name + "_store.txt"));
      write_store(snap, o.replay.store);
    }
    for (const auto& d : o.trend.diagnostics) err << "warning: " << name << ": " << d << '\n';
    auto run = run_json(config, o.replay);
    run["cohort_size"] = o.trend.cohort_size;
    run["trend_length"] = o.trend.points.size();
    if (!o.trend.points.empty()) {
      const auto& last = o.trend.points.back();
      run["final_trend_point"] =
          report_json(last.accuracy, last.mae, last.kendall_tau, last.mrr, last.ap, last.ndcg);
      run["final_trend_point"]["position_index"] = last.position;
      run["final_trend_point"]["new_player_fraction"] = last.new_player_fraction;
    }
    run["trend_diagnostics"] = diagnostics_json(o.trend.diagnostics);
    summary["runs"].push_back(run);
  }
  write_json(fs::path(f.out_dir) / ("experiment_" + e.setup + "_summary.json"), summary);
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int do_synth(const synth::SynthConfig& config, const std::string& out_dir, std::ostream& out) {
  const auto dataset = synth::generate(config);
  fs::create_directories(out_dir);
  {
    auto csv = open_output(fs::path(out_dir) / "matches.csv");
    write_match_log(csv, dataset.matches);
  }
  {
    auto csv = open_output(fs::path(out_dir) / "latent.csv");
    synth::write_latent_csv(csv, dataset.latent);
  }
  ordered_json summary;
  summary["command"] = "synth";
  summary["players"] = config.player_count;
  summary["team_size"] = config.team_size;
  summary["teams_per_match"] = config.teams_per_match;
  summary["matches"] = config.match_count;
  summary["skill_mean"] = config.skill_mean;
  summary["skill_spread"] = config.skill_spread;
  summary["noise_spread"] = config.noise_spread;
  summary["seed"] = config.seed;
  summary["start_epoch_ms"] = config.start_epoch_ms;
  summary["match_interval_ms"] = config.match_interval_ms;
  write_json(fs::path(out_dir) / "synth_summary.json", summary);
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int do_inspect(const InspectFlags& f, std::ostream& out, std::ostream& err) {
  ordered_json summary;
  summary["command"] = "inspect";
  if (!f.store.empty()) {
    std::ifstream in(f.store);
    if (!in) throw DataError(f.store, 0, "cannot open snapshot");
    const auto store = read_store(in, f.store);
    const auto config = config_of(store);
    summary["store"] = f.store;
    summary["system"] = store.system;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : store.params) params[key] = value;
    summary["params"] = params;
    summary["seed"] = store.seed;
    summary["matches_processed"] = store.matches_processed;
    summary["players"] = store.ratings.size();
    CohortRule rule{f.top, -1, 0, 0.0};
    auto top = ordered_json::array();
    for (const auto& id : select_cohort(store, config, rule)) {
      const auto& r = store.ratings.at(id);
      ordered_json row;
      row["player_id"] = id.str();
      row["mu"] = r.mu;
      row["sigma"] = r.sigma ? ordered_json(*r.sigma) : ordered_json(nullptr);
      row["games_played"] = r.games_played;
      top.push_back(row);
    }
    summary["top"] = top;
  } else {
    const auto ingested = ingest(fs::path(f.input));
    for (const auto& d : ingested.diagnostics) err << "warning: " << d << '\n';
    std::map<std::size_t, std::size_t> by_team_size, by_team_count;
    std::unordered_set<PlayerId> players;
    for (const auto& m : ingested.matches) {
      ++by_team_count[m.teams.size()];
      for (const auto& t : m.teams) {
        ++by_team_size[t.members.size()];
        players.insert(t.members.begin(), t.members.end());
      }
    }
    summary["input"] = f.input;
    summary["rows"] = ingested.rows;
    summary["matches"] = ingested.matches.size();
    summary["rejected"] = ingested.rejected;
    summary["players"] = players.size();
    ordered_json sizes = ordered_json::object();
    for (const auto& [k, v] : by_team_size) sizes[std::to_string(k)] = v;
    summary["teams_by_size"] = sizes;
    ordered_json counts = ordered_json::object();
    for (const auto& [k, v] : by_team_count) counts[std::to_string(k)] = v;
    summary["matches_by_team_count"] = counts;
    if (!ingested.matches.empty()) {
      summary["first_timestamp"] = ingested.matches.front().timestamp;
      summary["last_timestamp"] = ingested.matches.back().timestamp;
    }
    summary["diagnostics"] = diagnostics_json(ingested.diagnostics);
  }
  out << summary.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Team battle-royale rating systems and rank-prediction evaluation", "royale"};
  app.require_subcommand(1);

  PipelineFlags replay_flags;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a match log and score every match");
  add_pipeline_options(*replay_cmd, replay_flags);

  PipelineFlags exp_flags;
  ExperimentFlags exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run the all/best/frequent player set-ups");
  add_pipeline_options(*exp_cmd, exp_flags);
  exp_cmd->add_option("--setup", exp.setup, "all, best or frequent")
      ->required()
      ->check(CLI::IsMember({"all", "best", "frequent"}));
  exp_cmd->add_option("--window", exp.window,
                      "Moving-average window in matches (default 500 for all, 1 otherwise)");
  exp_cmd->add_option("--top-k", exp.top_k, "Best-players cohort size")->capture_default_str();
  exp_cmd->add_option("--min-games", exp.min_games,
                      "Cohort players played more than this many games (default 10 / 100)");
  exp_cmd->add_option("--horizon", exp.horizon, "First games scored per player (default 10 / 100)");
  exp_cmd->add_option("--rank-by", exp.rank_by, "Cohort ranking: mu or conservative (mu - k*sigma)")
      ->check(CLI::IsMember({"mu", "conservative"}))
      ->capture_default_str();
  exp_cmd->add_option("--conservative-k", exp.conservative_k, "k of the conservative ranking")
      ->capture_default_str();

  synth::SynthConfig synth_config;
  std::string synth_out = ".";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic match log with latent skills");
  synth_cmd->add_option("--players", synth_config.player_count)->capture_default_str();
  synth_cmd->add_option("--teams", synth_config.teams_per_match, "Teams per match")
      ->capture_default_str();
  synth_cmd->add_option("--team-size", synth_config.team_size)->capture_default_str();
  synth_cmd->add_option("--matches", synth_config.match_count)->capture_default_str();
  synth_cmd->add_option("--seed", synth_config.seed)->capture_default_str();
  synth_cmd->add_option("--skill-mean", synth_config.skill_mean)->capture_default_str();
  synth_cmd->add_option("--skill-spread", synth_config.skill_spread)->capture_default_str();
  synth_cmd->add_option("--noise", synth_config.noise_spread, "Per-player performance noise")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")->capture_default_str();

  InspectFlags inspect_flags;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a rating snapshot or a match log");
  auto* store_opt = inspect_cmd->add_option("--store", inspect_flags.store, "Rating-store snapshot");
  auto* input_opt = inspect_cmd->add_option("--input", inspect_flags.input, "Match log CSV");
  store_opt->excludes(input_opt);
  inspect_cmd->add_option("--top", inspect_flags.top, "Players listed from a snapshot")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (inspect_cmd->parsed() && inspect_flags.store.empty() && inspect_flags.input.empty()) {
      throw CLI::RequiredError("inspect needs --store or --input");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (replay_cmd->parsed()) return do_replay(replay_flags, out, err);
    if (exp_cmd->parsed()) return do_experiment(exp_flags, exp, out, err);
    if (synth_cmd->parsed()) return do_synth(synth_config, synth_out, out);
    if (inspect_cmd->parsed()) return do_inspect(inspect_flags, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace royale::cli
