#include "royale/rating_system.hpp"

#include "royale/errors.hpp"
#include "royale/format.hpp"

namespace royale {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string share_name(trueskill::MemberShare share) {
  return share == trueskill::MemberShare::kMean ? "mean" : "variance";
}

trueskill::MemberShare parse_share(const std::string& text) {
  if (text == "variance") return trueskill::MemberShare::kVariance;
  if (text == "mean") return trueskill::MemberShare::kMean;
  throw DataError("unknown member share '" + text + "'");
}

}  // namespace

std::string system_name(const SystemConfig& config) {
  return std::visit(overloaded{
                        [](const elo::EloParams&) { return std::string("elo"); },
                        [](const glicko::GlickoParams&) { return std::string("glicko"); },
                        [](const trueskill::TrueSkillParams&) { return std::string("trueskill"); },
                        [](const prev_rank::PrevRankParams&) { return std::string("prevrank"); },
                    },
                    config);
}

SystemConfig default_config(std::string_view name) {
  if (name == "elo") return elo::EloParams{};
  if (name == "glicko") return glicko::GlickoParams{};
  if (name == "trueskill") return trueskill::TrueSkillParams{};
  if (name == "prevrank") return prev_rank::PrevRankParams{};
  throw DomainError("unknown rating system '" + std::string(name) + "'");
}

void validate(const SystemConfig& config) {
  std::visit(overloaded{
                 [](const elo::EloParams& p) { elo::validate(p); },
                 [](const glicko::GlickoParams& p) { glicko::validate(p); },
                 [](const trueskill::TrueSkillParams& p) { trueskill::validate(p); },
                 [](const prev_rank::PrevRankParams&) {},
             },
             config);
}

std::map<std::string, std::string> describe_params(const SystemConfig& config) {
  return std::visit(
      overloaded{
          [](const elo::EloParams& p) -> std::map<std::string, std::string> {
            return {{"k_factor", format_double(p.k_factor)},
                    {"d_scale", format_double(p.d_scale)},
                    {"default_rating", format_double(p.default_rating)}};
          },
          [](const glicko::GlickoParams& p) -> std::map<std::string, std::string> {
            return {{"default_mu", format_double(p.default_mu)},
                    {"default_sigma", format_double(p.default_sigma)},
                    {"q_constant", format_double(p.q_constant)}};
          },
          [](const trueskill::TrueSkillParams& p) -> std::map<std::string, std::string> {
            return {{"default_mu", format_double(p.default_mu)},
                    {"default_sigma", format_double(p.default_sigma)},
                    {"beta", format_double(p.beta)},
                    {"tau", format_double(p.tau)},
                    {"member_share", share_name(p.member_share)}};
          },
          [](const prev_rank::PrevRankParams&) -> std::map<std::string, std::string> {
            return {};
          },
      },
      config);
}

SystemConfig config_from_params(std::string_view name,
                                const std::map<std::string, std::string>& params) {
  SystemConfig config = default_config(name);
  auto take = [&](const std::string& key, auto&& apply) {
    if (auto it = params.find(key); it != params.end()) apply(it->second);
  };
  std::visit(overloaded{
                 [&](elo::EloParams& p) {
                   take("k_factor", [&](const std::string& v) { p.k_factor = parse_double(v); });
                   take("d_scale", [&](const std::string& v) { p.d_scale = parse_double(v); });
                   take("default_rating",
                        [&](const std::string& v) { p.default_rating = parse_double(v); });
                 },
                 [&](glicko::GlickoParams& p) {
                   take("default_mu", [&](const std::string& v) { p.default_mu = parse_double(v); });
                   take("default_sigma",
                        [&](const std::string& v) { p.default_sigma = parse_double(v); });
                   take("q_constant", [&](const std::string& v) { p.q_constant = parse_double(v); });
                 },
                 [&](trueskill::TrueSkillParams& p) {
                   take("default_mu", [&](const std::string& v) { p.default_mu = parse_double(v); });
                   take("default_sigma",
                        [&](const std::string& v) { p.default_sigma = parse_double(v); });
                   take("beta", [&](const std::string& v) { p.beta = parse_double(v); });
                   take("tau", [&](const std::string& v) { p.tau = parse_double(v); });
                   take("member_share",
                        [&](const std::string& v) { p.member_share = parse_share(v); });
                 },
                 [](prev_rank::PrevRankParams&) {},
             },
             config);
  const auto known = describe_params(config);
  for (const auto& [key, value] : params) {
    if (!known.contains(key)) {
      throw DataError("unknown parameter '" + key + "' for system " + std::string(name));
    }
  }
  validate(config);
  return config;
}

PlayerRating initial_rating(const SystemConfig& config) {
  return std::visit(overloaded{
                        [](const elo::EloParams& p) {
                          PlayerRating r;
                          r.mu = p.default_rating;
                          return r;
                        },
                        [](const glicko::GlickoParams& p) {
                          PlayerRating r;
                          r.mu = p.default_mu;
                          r.sigma = p.default_sigma;
                          return r;
                        },
                        [](const trueskill::TrueSkillParams& p) {
                          PlayerRating r;
                          r.mu = p.default_mu;
                          r.sigma = p.default_sigma;
                          return r;
                        },
                        [](const prev_rank::PrevRankParams&) { return PlayerRating{}; },
                    },
                    config);
}

PredictedRanking update_match(const SystemConfig& config, RatingState& state,
                              const MatchRecord& match, std::uint64_t seed, Diagnostics* diag) {
  return std::visit(
      overloaded{
          [&](const elo::EloParams& p) {
            return elo::update_match(state, match, p, seed, diag).prediction;
          },
          [&](const glicko::GlickoParams& p) {
            return glicko::update_match(state, match, p, seed, diag).prediction;
          },
          [&](const trueskill::TrueSkillParams& p) {
            return trueskill::update_match(state, match, p, seed, diag).prediction;
          },
          [&](const prev_rank::PrevRankParams& p) {
            return prev_rank::update_match(state, match, p, seed).prediction;
          },
      },
      config);
}

double cohort_score(const SystemConfig& config, const PlayerRating& rating, double conservative_k) {
  if (std::holds_alternative<prev_rank::PrevRankParams>(config)) {
    return rating.last_observed_rank ? -static_cast<double>(*rating.last_observed_rank) : 0.0;
  }
  if (conservative_k > 0.0 && rating.sigma) return rating.mu - conservative_k * *rating.sigma;
  return rating.mu;
}

}  // namespace royale
