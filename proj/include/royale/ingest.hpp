#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "royale/model.hpp"

namespace royale {

struct IngestOptions {
  // Keep only matches where every team has exactly this many members.
  std::optional<int> team_size;
};

struct IngestResult {
  std::vector<MatchRecord> matches;  // ascending by timestamp, file order on ties
  std::vector<std::string> diagnostics;
  std::size_t rows = 0;
  std::size_t rejected = 0;       // invalid placements or rosters
  std::size_t filtered_out = 0;   // dropped by the team-size filter
};

// Reads a match log with header columns match_id, timestamp, team_id,
// player_id, team_placement (any order, extra columns ignored; "date" and
// "player_name" are accepted for timestamp and player_id). Malformed rows
// throw DataError with file and line; matches whose placements are not a
// permutation of 1..N are dropped with a diagnostic naming the match.
IngestResult ingest(const std::filesystem::path& path, const IngestOptions& options = {});
IngestResult ingest(std::istream& in, const std::string& source_name,
                    const IngestOptions& options = {});

// ISO-8601 date-time ("2017-11-26T20:59:40Z", optional fraction, optional
// "Z" / "+hh:mm" / "+hhmm" offset; no offset means UTC) to Unix milliseconds.
std::int64_t parse_timestamp(std::string_view text);

// Writes matches in the same CSV schema, one row per (match, player).
void write_match_log(std::ostream& out, std::span<const MatchRecord> matches);

// Comma split honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace royale
