#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windpower/series.hpp"

namespace windpower {

/// Column layout of the turbine CSV schema. Header row required; numeric
/// fields are decimal or the literal "NA"; timestamps are ISO-8601 UTC.
/// Lines starting with '#' carry provenance and are skipped on ingestion.
inline constexpr const char* kCsvHeader =
    "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms";

struct IngestReport {
  std::size_t rows_parsed = 0;
  std::size_t series_count = 0;
  std::size_t na_slots_filled = 0; // grid gaps turned into explicit NA rows
};

/// Reads one CSV file into per-turbine series. Rows are sorted by
/// (turbine_id, timestamp); gaps in the ten-minute grid become NA slots; a
/// channel that is NA throughout is treated as absent. Malformed rows and
/// duplicate (turbine_id, timestamp) pairs raise DataError naming the
/// offending line(s).
std::map<std::string, TurbineSeries> ingest(const std::string& path,
                                            IngestReport* report = nullptr);
std::map<std::string, TurbineSeries> ingest(std::istream& in, IngestReport* report = nullptr);

/// Seed/config provenance stamped into every artifact.
struct Provenance {
  std::string config_hash;
  std::optional<std::uint64_t> seed;
};

/// Serializes a series in the ingest schema at full precision, so that
/// ingest(export(series)) reproduces the series bit-exactly, NA positions
/// included. Absent channels are written as NA columns.
std::string export_series_csv(const TurbineSeries& series, const Provenance& prov = {});

/// Atomic file write: content goes to a temporary sibling first, then a
/// rename publishes it.
void write_text_atomic(const std::string& path, const std::string& content);

std::int64_t parse_timestamp(const std::string& iso8601_utc);
std::string format_timestamp(std::int64_t unix_seconds);

} // namespace windpower
