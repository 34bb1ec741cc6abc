#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "windpower/csv_io.hpp"
#include "windpower/errors.hpp"
#include "windpower/model.hpp"
#include "windpower/reports.hpp"

using namespace windpower;

namespace {

const char* kSmallFile =
    "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
    "2014-03-01T00:00:00Z,WT01,100.5,90,110,3.2,7.5\n"
    "2014-03-01T00:10:00Z,WT01,NA,90,110,3.2,7.6\n"
    "2014-03-01T00:20:00Z,WT01,120.25,100,130,2.9,7.8\n";

} // namespace

TEST_CASE("ingest: three valid rows make one series of length three") {
  std::istringstream in(kSmallFile);
  IngestReport report;
  const auto series = ingest(in, &report);
  REQUIRE(series.size() == 1);
  const auto& s = series.at("WT01");
  CHECK(s.size() == 3);
  CHECK(s.power_avg[0] == 100.5);
  CHECK(is_na(s.power_avg[1])); // literal NA becomes an NA slot
  CHECK(s.power_avg[2] == 120.25);
  CHECK(s.t0_unix == 1393632000);
  CHECK(report.rows_parsed == 3);
  CHECK(report.series_count == 1);
}

TEST_CASE("ingest: gaps in the grid are filled with NA rows") {
  std::istringstream in(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:00:00Z,WT01,1,NA,NA,NA,NA\n"
      "2014-03-01T00:40:00Z,WT01,5,NA,NA,NA,NA\n");
  IngestReport report;
  const auto series = ingest(in, &report);
  const auto& s = series.at("WT01");
  REQUIRE(s.size() == 5);
  CHECK(s.power_avg[0] == 1.0);
  CHECK(is_na(s.power_avg[1]));
  CHECK(is_na(s.power_avg[2]));
  CHECK(is_na(s.power_avg[3]));
  CHECK(s.power_avg[4] == 5.0);
  CHECK(report.na_slots_filled == 3);
  // all-NA channels are treated as absent
  CHECK(!s.has_min_max());
  CHECK(!s.has_std());
  CHECK(!s.has_wind());
}

TEST_CASE("ingest: unsorted rows come back sorted by timestamp") {
  std::istringstream in(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:10:00Z,WT01,2,NA,NA,NA,NA\n"
      "2014-03-01T00:00:00Z,WT01,1,NA,NA,NA,NA\n");
  const auto series = ingest(in);
  CHECK(series.at("WT01").power_avg == std::vector<double>{1.0, 2.0});
}

TEST_CASE("ingest: duplicate timestamps name both lines") {
  std::istringstream in(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:00:00Z,WT01,1,NA,NA,NA,NA\n"
      "2014-03-01T00:10:00Z,WT01,2,NA,NA,NA,NA\n"
      "2014-03-01T00:00:00Z,WT01,3,NA,NA,NA,NA\n");
  try {
    ingest(in);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("redundant timestamp") != std::string::npos);
    CHECK(msg.find("lines 2 and 4") != std::string::npos);
  }
}

TEST_CASE("ingest: malformed rows carry their line number") {
  std::istringstream in(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:00:00Z,WT01,abc,NA,NA,NA,NA\n");
  try {
    ingest(in);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream bad_ts(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01 00:00:00,WT01,1,NA,NA,NA,NA\n");
  CHECK_THROWS_AS(ingest(bad_ts), DataError);

  std::istringstream off_grid(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:00:00Z,WT01,1,NA,NA,NA,NA\n"
      "2014-03-01T00:15:00Z,WT01,2,NA,NA,NA,NA\n");
  CHECK_THROWS_AS(ingest(off_grid), DataError);

  std::istringstream short_row(
      "timestamp,turbine_id,power_avg_kw,power_min_kw,power_max_kw,power_std_kw,wind_speed_ms\n"
      "2014-03-01T00:00:00Z,WT01,1\n");
  CHECK_THROWS_AS(ingest(short_row), DataError);

  std::istringstream no_header("2014-03-01T00:00:00Z,WT01,1,NA,NA,NA,NA\n");
  CHECK_THROWS_AS(ingest(no_header), DataError);
}

TEST_CASE("round-trip: export then ingest reproduces the series bit-exactly") {
  ModelParams params = reference_params(0.9);
  params.seed = 314;
  params.t_start_unix = 1393632000;
  auto series = simulate(params, 500).to_turbine_series("WT-RT");
  series.power_avg[17] = kNA;
  series.power_avg[400] = 1.0 / 3.0; // not representable in short decimal

  Provenance prov;
  prov.config_hash = "deadbeef";
  prov.seed = 314;
  const std::string csv = export_series_csv(series, prov);
  CHECK(csv.find("# config_hash=deadbeef") != std::string::npos);
  CHECK(csv.find("# seed=314") != std::string::npos);

  std::istringstream in(csv);
  const auto back = ingest(in);
  REQUIRE(back.size() == 1);
  const auto& s = back.at("WT-RT");
  REQUIRE(s.size() == series.size());
  CHECK(s.t0_unix == series.t0_unix);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_na(series.power_avg[i])) {
      CHECK(is_na(s.power_avg[i]));
    } else {
      CHECK(s.power_avg[i] == series.power_avg[i]); // bit-exact
    }
  }
}

TEST_CASE("timestamps: parse and format round-trip") {
  CHECK(parse_timestamp("2014-03-01T00:00:00Z") == 1393632000);
  CHECK(format_timestamp(1393632000) == "2014-03-01T00:00:00Z");
  CHECK(format_timestamp(parse_timestamp("1999-12-31T23:50:00Z")) == "1999-12-31T23:50:00Z");
  CHECK_THROWS_AS(parse_timestamp("2014-03-01T00:00:00"), DataError);
  CHECK_THROWS_AS(parse_timestamp("2014-13-01T00:00:00Z"), DataError);
}

TEST_CASE("model profile JSON round-trips") {
  ModelParams p = reference_params(0.7);
  p.seed = 99;
  p.t_start_unix = 1393632000;
  p.burn_in_steps = 12;
  const auto doc = model_params_to_json(p);
  const ModelParams q = model_params_from_json(doc);
  CHECK(q.hurst == p.hurst);
  CHECK(q.well_halfwidth_kw == p.well_halfwidth_kw);
  CHECK(q.diffusion_kw == p.diffusion_kw);
  CHECK(q.seasonal_amplitude_kw == p.seasonal_amplitude_kw);
  CHECK(q.seasonal_omega == p.seasonal_omega);
  CHECK(q.seed == 99);
  CHECK(q.t_start_unix == p.t_start_unix);
  CHECK(q.burn_in_steps == 12);

  nlohmann::json broken = doc;
  broken["hurst"] = 1.7;
  CHECK_THROWS_AS(model_params_from_json(broken), InvalidArgument);
  broken = doc;
  broken.erase("diffusion_kw");
  CHECK_THROWS_AS(model_params_from_json(broken), ConfigError);
}

TEST_CASE("stable hash is deterministic and sensitive") {
  CHECK(stable_hash_hex("abc") == stable_hash_hex("abc"));
  CHECK(stable_hash_hex("abc") != stable_hash_hex("abd"));
  CHECK(stable_hash_hex("").size() == 16);
}
