#include "windpower/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "timeparse.hpp"
#include "windpower/errors.hpp"

namespace windpower {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_value(const std::string& field, std::size_t line_no, const char* column) {
  if (field == "NA" || field.empty()) return kNA;
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw DataError("line " + std::to_string(line_no) + ": cannot parse " + column + " value '" +
                    field + "'");
  return value;
}

struct Row {
  std::int64_t timestamp = 0;
  double avg = kNA, min = kNA, max = kNA, std = kNA, wind = kNA;
  std::size_t line_no = 0;
};

/// Prints a double so that reading it back reproduces the exact bits.
std::string full_precision(double x) {
  if (is_na(x)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

} // namespace

std::map<std::string, TurbineSeries> ingest(std::istream& in, IngestReport* report) {
  std::map<std::string, std::vector<Row>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      std::string normalized = line;
      if (!normalized.empty() && normalized.back() == '\r') normalized.pop_back();
      if (normalized != kCsvHeader)
        throw DataError("line " + std::to_string(line_no) + ": unexpected header, expected '" +
                        std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }

    const auto fields = split_csv_line(line);
    if (fields.size() != 7)
      throw DataError("line " + std::to_string(line_no) + ": expected 7 columns, got " +
                      std::to_string(fields.size()));

    Row row;
    try {
      row.timestamp = parse_iso8601_utc(fields[0]);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string& id = fields[1];
    if (id.empty()) throw DataError("line " + std::to_string(line_no) + ": empty turbine_id");
    row.avg = parse_value(fields[2], line_no, "power_avg_kw");
    row.min = parse_value(fields[3], line_no, "power_min_kw");
    row.max = parse_value(fields[4], line_no, "power_max_kw");
    row.std = parse_value(fields[5], line_no, "power_std_kw");
    row.wind = parse_value(fields[6], line_no, "wind_speed_ms");
    row.line_no = line_no;
    rows[id].push_back(row);
    if (report) ++report->rows_parsed;
  }
  if (!header_seen) throw DataError("empty input: missing header row");

  std::map<std::string, TurbineSeries> out;
  for (auto& [id, turbine_rows] : rows) {
    std::stable_sort(turbine_rows.begin(), turbine_rows.end(),
                     [](const Row& a, const Row& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 1; i < turbine_rows.size(); ++i) {
      if (turbine_rows[i].timestamp == turbine_rows[i - 1].timestamp)
        throw DataError("turbine '" + id + "': redundant timestamp " +
                        format_iso8601_utc(turbine_rows[i].timestamp) + " on lines " +
                        std::to_string(turbine_rows[i - 1].line_no) + " and " +
                        std::to_string(turbine_rows[i].line_no));
    }

    const std::int64_t t0 = turbine_rows.front().timestamp;
    for (const Row& r : turbine_rows) {
      if ((r.timestamp - t0) % kStepSeconds != 0)
        throw DataError("turbine '" + id + "': timestamp off the ten-minute grid on line " +
                        std::to_string(r.line_no));
    }
    const std::size_t n =
        static_cast<std::size_t>((turbine_rows.back().timestamp - t0) / kStepSeconds) + 1;

    TurbineSeries s;
    s.turbine_id = id;
    s.t0_unix = t0;
    s.power_avg.assign(n, kNA);
    s.power_min.assign(n, kNA);
    s.power_max.assign(n, kNA);
    s.power_std.assign(n, kNA);
    s.wind_speed.assign(n, kNA);
    for (const Row& r : turbine_rows) {
      const auto i = static_cast<std::size_t>((r.timestamp - t0) / kStepSeconds);
      s.power_avg[i] = r.avg;
      s.power_min[i] = r.min;
      s.power_max[i] = r.max;
      s.power_std[i] = r.std;
      s.wind_speed[i] = r.wind;
    }
    if (report) report->na_slots_filled += n - turbine_rows.size();

    // all-NA channels are absent channels; min/max stay paired
    if (count_non_na(s.power_min) == 0 && count_non_na(s.power_max) == 0) {
      s.power_min.clear();
      s.power_max.clear();
    }
    if (count_non_na(s.power_std) == 0) s.power_std.clear();
    if (count_non_na(s.wind_speed) == 0) s.wind_speed.clear();

    s.validate();
    out.emplace(id, std::move(s));
  }
  if (report) report->series_count = out.size();
  return out;
}

std::map<std::string, TurbineSeries> ingest(const std::string& path, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return ingest(in, report);
}

std::string export_series_csv(const TurbineSeries& series, const Provenance& prov) {
  std::ostringstream out;
  if (!prov.config_hash.empty()) out << "# config_hash=" << prov.config_hash << "\n";
  if (prov.seed) out << "# seed=" << *prov.seed << "\n";
  out << kCsvHeader << "\n";

  const std::size_t n = series.size();
  auto channel = [&](const std::vector<double>& v, std::size_t i) {
    return v.empty() ? kNA : v[i];
  };
  for (std::size_t i = 0; i < n; ++i) {
    out << format_iso8601_utc(series.timestamp(i)) << ',' << series.turbine_id << ','
        << full_precision(series.power_avg[i]) << ',' << full_precision(channel(series.power_min, i))
        << ',' << full_precision(channel(series.power_max, i)) << ','
        << full_precision(channel(series.power_std, i)) << ','
        << full_precision(channel(series.wind_speed, i)) << "\n";
  }
  return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open output file '" + tmp + "'");
    out << content;
    if (!out) throw DataError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw DataError("cannot publish output file '" + path + "'");
}

std::int64_t parse_timestamp(const std::string& iso8601_utc) {
  return parse_iso8601_utc(iso8601_utc);
}

std::string format_timestamp(std::int64_t unix_seconds) {
  return format_iso8601_utc(unix_seconds);
}

} // namespace windpower
