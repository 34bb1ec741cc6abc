#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "windpower/analysis.hpp"
#include "windpower/calibration.hpp"
#include "windpower/cleansing.hpp"
#include "windpower/csv_io.hpp"
#include "windpower/dfa.hpp"
#include "windpower/model.hpp"

namespace windpower {

inline constexpr int kReportSchemaVersion = 1;

/// FNV-1a 64-bit hash, hex-encoded; stable across platforms, used to stamp
/// artifacts with the configuration they came from.
std::string stable_hash_hex(const std::string& text);

/// Adds schema_version and provenance fields, serializes with sorted keys,
/// and writes atomically.
void write_report(const std::string& path, nlohmann::json doc, const Provenance& prov);

nlohmann::json to_json(const CleansingReport& report);
nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const SpectrumFit& fit, bool include_curve = false);
nlohmann::json to_json(const Moments& moments);
nlohmann::json to_json(const CalibrationResult& result);

/// Model parameter profile, consumable by the simulate command.
nlohmann::json model_params_to_json(const ModelParams& params);
ModelParams model_params_from_json(const nlohmann::json& doc);
ModelParams load_model_profile(const std::string& path);

} // namespace windpower
