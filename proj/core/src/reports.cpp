#include "windpower/reports.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "windpower/errors.hpp"

namespace windpower {

using nlohmann::json;

std::string stable_hash_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_report(const std::string& path, json doc, const Provenance& prov) {
  doc["schema_version"] = kReportSchemaVersion;
  doc["config_hash"] = prov.config_hash;
  if (prov.seed) doc["seed"] = *prov.seed;
  write_text_atomic(path, doc.dump(2) + "\n");
}

json to_json(const CleansingReport& report) {
  return json{{"counts",
               {{"duplicate_timestamp", report.duplicate_timestamp},
                {"consecutive_identical", report.consecutive_identical},
                {"zero_std", report.zero_std},
                {"unphysical_ramp", report.unphysical_ramp}}},
              {"skipped_rules", report.skipped_rules},
              {"na_fraction_before", report.na_fraction_before},
              {"na_fraction_after", report.na_fraction_after}};
}

json to_json(const ScalingFit& fit) {
  json doc{{"alpha", fit.alpha},
           {"alpha_stderr", fit.alpha_stderr},
           {"fit_range", {fit.fit_range.lo, fit.fit_range.hi}},
           {"integrated_regime", fit.integrated_regime()},
           {"hurst_if_stationary", fit.hurst_stationary()},
           {"hurst_if_integrated", fit.hurst_integrated()}};
  if (fit.crossover) {
    doc["crossover_scale"] = *fit.crossover;
    doc["alpha_below"] = fit.alpha_below;
    doc["alpha_below_stderr"] = fit.alpha_below_stderr;
    doc["alpha_above"] = fit.alpha_above;
    doc["alpha_above_stderr"] = fit.alpha_above_stderr;
  } else {
    doc["crossover_scale"] = nullptr;
  }
  return doc;
}

json to_json(const SpectrumFit& fit, bool include_curve) {
  json doc{{"beta", fit.beta},
           {"beta_stderr", fit.beta_stderr},
           {"n_segments", fit.n_segments},
           {"fit_range_hz", {fit.fit_range.lo, fit.fit_range.hi}}};
  if (include_curve) {
    doc["frequencies_hz"] = fit.frequencies;
    doc["power"] = fit.power;
  }
  return doc;
}

json to_json(const Moments& moments) {
  return json{{"mean", moments.mean},
              {"stddev", moments.stddev},
              {"skewness", moments.skewness},
              {"excess_kurtosis", moments.excess_kurtosis}};
}

json to_json(const CalibrationResult& result) {
  return json{{"center_kw", result.center_kw},
              {"seasonal_omega", result.omega.omega},
              {"seasonal_peak_to_median", result.omega.peak_to_median},
              {"seasonal_dominant", result.omega.dominant},
              {"p_excess_low_by_month", result.excess.p_low},
              {"p_excess_high_by_month", result.excess.p_high},
              {"sigma_low_kw", result.sigma.sigma_low_kw},
              {"sigma_high_kw", result.sigma.sigma_high_kw},
              {"well_halfwidth_kw", result.well_halfwidth_kw},
              {"diffusion_kw", result.diffusion_kw},
              {"seasonal_amplitude_kw", result.seasonal_amplitude_kw},
              {"target_peak_mass", result.target_peak_mass},
              {"target_d2", result.target_d2},
              {"a_grid", result.a_grid},
              {"a_objective", result.a_objective}};
}

json model_params_to_json(const ModelParams& p) {
  return json{{"hurst", p.hurst},
              {"well_halfwidth_kw", p.well_halfwidth_kw},
              {"diffusion_kw", p.diffusion_kw},
              {"seasonal_amplitude_kw", p.seasonal_amplitude_kw},
              {"center_kw", p.center_kw},
              {"seasonal_omega", p.seasonal_omega},
              {"p_excess_high", p.p_excess_high},
              {"p_excess_low", p.p_excess_low},
              {"sigma_high_kw", p.sigma_high_kw},
              {"sigma_low_kw", p.sigma_low_kw},
              {"floor_kw", p.floor_kw},
              {"rated_kw", p.rated_kw},
              {"step_seconds", p.step_seconds},
              {"seed", p.seed},
              {"t_start", format_timestamp(p.t_start_unix)},
              {"burn_in_steps", p.burn_in_steps}};
}

ModelParams model_params_from_json(const json& doc) {
  ModelParams p;
  try {
    doc.at("hurst").get_to(p.hurst);
    doc.at("well_halfwidth_kw").get_to(p.well_halfwidth_kw);
    doc.at("diffusion_kw").get_to(p.diffusion_kw);
    doc.at("seasonal_amplitude_kw").get_to(p.seasonal_amplitude_kw);
    doc.at("center_kw").get_to(p.center_kw);
    doc.at("seasonal_omega").get_to(p.seasonal_omega);
    doc.at("p_excess_high").get_to(p.p_excess_high);
    doc.at("p_excess_low").get_to(p.p_excess_low);
    doc.at("sigma_high_kw").get_to(p.sigma_high_kw);
    doc.at("sigma_low_kw").get_to(p.sigma_low_kw);
    if (doc.contains("floor_kw")) doc.at("floor_kw").get_to(p.floor_kw);
    if (doc.contains("rated_kw")) doc.at("rated_kw").get_to(p.rated_kw);
    if (doc.contains("step_seconds")) doc.at("step_seconds").get_to(p.step_seconds);
    if (doc.contains("seed")) doc.at("seed").get_to(p.seed);
    if (doc.contains("t_start")) p.t_start_unix = parse_timestamp(doc.at("t_start").get<std::string>());
    if (doc.contains("burn_in_steps")) doc.at("burn_in_steps").get_to(p.burn_in_steps);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model profile: ") + e.what());
  }
  p.validate();
  return p;
}

ModelParams load_model_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model profile '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("model profile '" + path + "': " + e.what());
  }
  return model_params_from_json(doc);
}

} // namespace windpower
