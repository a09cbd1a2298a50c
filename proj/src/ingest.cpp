#include "royale/ingest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include "royale/errors.hpp"
#include "royale/format.hpp"

namespace royale {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

namespace {

int digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) throw DataError("truncated timestamp '" + std::string(text) + "'");
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw DataError("bad timestamp '" + std::string(text) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw DataError("bad timestamp '" + std::string(text) + "'");
  }
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  const int y = digits(text, 0, 4);
  expect(text, 4, '-');
  const int mo = digits(text, 5, 2);
  expect(text, 7, '-');
  const int d = digits(text, 8, 2);
  if (text.size() <= 10 || (text[10] != 'T' && text[10] != ' ')) {
    throw DataError("bad timestamp '" + std::string(text) + "'");
  }
  const int hh = digits(text, 11, 2);
  expect(text, 13, ':');
  const int mm = digits(text, 14, 2);
  expect(text, 16, ':');
  const int ss = digits(text, 17, 2);
  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::int64_t scale = 100;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == start) throw DataError("bad timestamp '" + std::string(text) + "'");
  }
  std::int64_t offset_minutes = 0;
  if (pos < text.size()) {
    if (text[pos] == 'Z') {
      ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
      const int sign = text[pos] == '+' ? 1 : -1;
      const int oh = digits(text, pos + 1, 2);
      std::size_t after = pos + 3;
      if (after < text.size() && text[after] == ':') ++after;
      const int om = digits(text, after, 2);
      offset_minutes = sign * (oh * 60 + om);
      pos = after + 2;
    }
  }
  if (pos != text.size()) throw DataError("bad timestamp '" + std::string(text) + "'");

  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok() || hh > 23 || mm > 59 || ss > 60) {
    throw DataError("bad timestamp '" + std::string(text) + "'");
  }
  const auto days = sys_days{date}.time_since_epoch().count();
  const std::int64_t seconds = static_cast<std::int64_t>(days) * 86400 + hh * 3600 + mm * 60 + ss -
                               offset_minutes * 60;
  return seconds * 1000 + millis;
}

namespace {

constexpr std::array<std::string_view, 5> kColumns = {"match_id", "timestamp", "team_id",
                                                      "player_id", "team_placement"};
// Column names of the raw public aggregate-stats export.
constexpr std::array<std::string_view, 5> kAliases = {"match_id", "date", "team_id",
                                                      "player_name", "team_placement"};

struct PendingTeam {
  std::string team_id;
  std::vector<std::string> members;
  long long placement = 0;
};

struct PendingMatch {
  std::string match_id;
  std::string timestamp;
  std::int64_t epoch_ms = 0;
  std::size_t first_line = 0;
  std::vector<PendingTeam> teams;
  std::unordered_map<std::string, std::size_t> team_index;
  std::string problem;  // first inconsistency found while grouping rows
};

}  // namespace

IngestResult ingest(std::istream& in, const std::string& source_name, const IngestOptions& options) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;

  std::array<std::size_t, kColumns.size()> col{};
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> header;
    try {
      header = split_csv_line(line);
    } catch (const DataError& e) {
      throw DataError(source_name, line_no, e.what());
    }
    width = header.size();
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      auto it = std::find(header.begin(), header.end(), kColumns[c]);
      if (it == header.end()) it = std::find(header.begin(), header.end(), kAliases[c]);
      if (it == header.end()) {
        throw DataError(source_name, line_no,
                        "header is missing column '" + std::string(kColumns[c]) + "'");
      }
      col[c] = static_cast<std::size_t>(it - header.begin());
    }
    break;
  }
  if (width == 0) throw DataError(source_name, line_no, "missing header row");

  std::vector<PendingMatch> pending;
  std::unordered_map<std::string, std::size_t> match_index;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const DataError& e) {
      throw DataError(source_name, line_no, e.what());
    }
    if (fields.size() != width) {
      throw DataError(source_name, line_no,
                      "expected " + std::to_string(width) + " fields, got " +
                          std::to_string(fields.size()));
    }
    const std::string& match_id = fields[col[0]];
    const std::string& timestamp = fields[col[1]];
    const std::string& team_id = fields[col[2]];
    const std::string& player_id = fields[col[3]];
    if (match_id.empty() || team_id.empty() || player_id.empty()) {
      throw DataError(source_name, line_no, "empty match, team or player id");
    }
    long long placement = 0;
    std::int64_t epoch = 0;
    try {
      placement = parse_int(fields[col[4]]);
      epoch = parse_timestamp(timestamp);
    } catch (const DataError& e) {
      throw DataError(source_name, line_no, e.what());
    }
    ++result.rows;

    auto [mit, fresh] = match_index.try_emplace(match_id, pending.size());
    if (fresh) {
      PendingMatch m;
      m.match_id = match_id;
      m.timestamp = timestamp;
      m.epoch_ms = epoch;
      m.first_line = line_no;
      pending.push_back(std::move(m));
    }
    PendingMatch& m = pending[mit->second];
    if (epoch != m.epoch_ms && m.problem.empty()) {
      m.problem = "rows disagree on timestamp (line " + std::to_string(line_no) + ")";
    }
    auto [tit, new_team] = m.team_index.try_emplace(team_id, m.teams.size());
    if (new_team) m.teams.push_back(PendingTeam{team_id, {}, placement});
    PendingTeam& team = m.teams[tit->second];
    if (team.placement != placement && m.problem.empty()) {
      m.problem = "team " + team_id + " has inconsistent placements (line " +
                  std::to_string(line_no) + ")";
    }
    team.members.push_back(player_id);
  }

  for (auto& m : pending) {
    if (!m.problem.empty()) {
      result.diagnostics.push_back("rejected match " + m.match_id + ": " + m.problem);
      ++result.rejected;
      continue;
    }
    MatchRecord record;
    record.match_id = m.match_id;
    record.timestamp = m.timestamp;
    record.epoch_ms = m.epoch_ms;
    bool bad_placement = false;
    for (auto& t : m.teams) {
      if (t.placement < 1 || t.placement > static_cast<long long>(m.teams.size())) {
        bad_placement = true;
      }
      TeamEntry entry;
      entry.team_id = t.team_id;
      entry.observed_rank = bad_placement ? 0 : static_cast<int>(t.placement);
      for (auto& p : t.members) entry.members.emplace_back(std::move(p));
      record.teams.push_back(std::move(entry));
    }
    try {
      validate_match(record);
    } catch (const DomainError& e) {
      result.diagnostics.push_back("rejected match " + m.match_id + " (line " +
                                   std::to_string(m.first_line) + "): " + e.what());
      ++result.rejected;
      continue;
    }
    if (options.team_size) {
      const bool keep = std::all_of(record.teams.begin(), record.teams.end(), [&](const auto& t) {
        return static_cast<int>(t.members.size()) == *options.team_size;
      });
      if (!keep) {
        ++result.filtered_out;
        continue;
      }
    }
    result.matches.push_back(std::move(record));
  }

  std::stable_sort(result.matches.begin(), result.matches.end(),
                   [](const MatchRecord& a, const MatchRecord& b) { return a.epoch_ms < b.epoch_ms; });
  return result;
}

IngestResult ingest(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "cannot open match log");
  return ingest(in, path.string(), options);
}

void write_match_log(std::ostream& out, std::span<const MatchRecord> matches) {
  out << "match_id,timestamp,team_id,player_id,team_placement\n";
  for (const auto& m : matches) {
    for (const auto& t : m.teams) {
      for (const auto& p : t.members) {
        out << m.match_id << ',' << m.timestamp << ',' << t.team_id << ',' << p.str() << ','
            << t.observed_rank << '\n';
      }
    }
  }
}

}  // namespace royale
