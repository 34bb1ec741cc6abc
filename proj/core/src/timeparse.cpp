#include "timeparse.hpp"

#include <cstdio>

#include "windpower/errors.hpp"

namespace windpower {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yy + (m <= 2));
}

bool parse_fixed_uint(const std::string& s, std::size_t off, std::size_t len, int& out) {
  if (off + len > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const char ch = s[off + i];
    if (ch < '0' || ch > '9') return false;
    value = value * 10 + (ch - '0');
  }
  out = value;
  return true;
}

} // namespace

CivilDate civil_from_unix(std::int64_t unix_seconds) {
  std::int64_t days = unix_seconds / 86400;
  std::int64_t rem = unix_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  CivilDate c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>((rem % 3600) / 60);
  c.second = static_cast<int>(rem % 60);
  return c;
}

std::int64_t unix_from_civil(const CivilDate& c) {
  return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 + c.minute * 60 +
         c.second;
}

std::int64_t parse_iso8601_utc(const std::string& text) {
  CivilDate c;
  const bool shape_ok = text.size() == 20 && text[4] == '-' && text[7] == '-' &&
                        text[10] == 'T' && text[13] == ':' && text[16] == ':' && text[19] == 'Z';
  if (!shape_ok || !parse_fixed_uint(text, 0, 4, c.year) ||
      !parse_fixed_uint(text, 5, 2, c.month) || !parse_fixed_uint(text, 8, 2, c.day) ||
      !parse_fixed_uint(text, 11, 2, c.hour) || !parse_fixed_uint(text, 14, 2, c.minute) ||
      !parse_fixed_uint(text, 17, 2, c.second))
    throw DataError("malformed timestamp '" + text + "' (expected YYYY-MM-DDThh:mm:ssZ)");
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 || c.minute > 59 ||
      c.second > 60)
    throw DataError("timestamp field out of range in '" + text + "'");
  return unix_from_civil(c);
}

std::string format_iso8601_utc(std::int64_t unix_seconds) {
  const CivilDate c = civil_from_unix(unix_seconds);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                c.hour, c.minute, c.second);
  return buf;
}

} // namespace windpower
