#pragma once

// ISO-8601 UTC timestamps <-> unix seconds, plus the civil-calendar split
// needed for monthly partitions. Self-contained; std::chrono calendar
// parsing is not available on the toolchains this targets.

#include <cstdint>
#include <string>

namespace windpower {

struct CivilDate {
  int year = 1970;
  int month = 1; // 1..12
  int day = 1;   // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

CivilDate civil_from_unix(std::int64_t unix_seconds);
std::int64_t unix_from_civil(const CivilDate& c);

/// Parses "YYYY-MM-DDThh:mm:ssZ" (the Z is required; all data is UTC).
/// Throws DataError on any malformed field.
std::int64_t parse_iso8601_utc(const std::string& text);

/// Formats unix seconds as "YYYY-MM-DDThh:mm:ssZ".
std::string format_iso8601_utc(std::int64_t unix_seconds);

} // namespace windpower
