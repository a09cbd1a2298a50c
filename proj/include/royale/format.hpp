#pragma once

#include <string>
#include <string_view>

namespace royale {

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Strict parse of a full string; throws DataError on trailing junk.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

}  // namespace royale
