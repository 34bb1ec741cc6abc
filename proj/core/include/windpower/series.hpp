#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace windpower {

/// In-band marker for "not available". All sequence arithmetic propagates it.
inline const double kNA = std::numeric_limits<double>::quiet_NaN();

inline bool is_na(double x) { return std::isnan(x); }

/// Sampling step of the measurement grid: ten-minute averages.
inline constexpr std::int64_t kStepSeconds = 600;

/// One turbine's ten-minute series on a gap-free timestamp grid.
/// Gaps are represented as NA values, never as missing rows. Auxiliary
/// channels (min/max/std of the averaging interval, wind speed) are either
/// absent (empty) or exactly as long as power_avg. Instances are immutable
/// by convention once built; operations return fresh copies.
struct TurbineSeries {
  std::string turbine_id;
  std::int64_t t0_unix = 0; // UTC seconds of the first sample
  std::int64_t step_seconds = kStepSeconds;
  std::vector<double> power_avg; // kW
  std::vector<double> power_min; // kW, optional
  std::vector<double> power_max; // kW, optional
  std::vector<double> power_std; // kW, optional
  std::vector<double> wind_speed; // m/s, optional

  std::size_t size() const { return power_avg.size(); }
  bool has_min_max() const { return !power_min.empty() && !power_max.empty(); }
  bool has_std() const { return !power_std.empty(); }
  bool has_wind() const { return !wind_speed.empty(); }

  std::int64_t timestamp(std::size_t i) const {
    return t0_unix + static_cast<std::int64_t>(i) * step_seconds;
  }

  /// Throws InvalidArgument if lengths disagree, the step is not 600 s, or
  /// min/avg/max ordering is violated at some fully observed slot.
  void validate() const;
};

/// Power differences at a fixed lag, optionally standardized to zero mean
/// and unit (population) standard deviation over the non-NA entries.
struct IncrementSeries {
  std::string parent_id;
  std::int64_t dt_seconds = kStepSeconds;
  std::vector<double> values;       // kW; NA where either parent value is NA
  std::vector<double> standardized; // dimensionless; empty until standardize()
  double mean = 0.0;                // kW, over non-NA values
  double stddev = 0.0;              // kW, population convention
};

/// Differences P(t + dt) - P(t) of the average power channel.
/// dt must be a positive multiple of the series step; the result has
/// length T - dt/step and an entry is NA iff either parent value is NA.
IncrementSeries increments(const TurbineSeries& series, std::int64_t dt_seconds);

/// Same differencing for a bare sequence at an integer lag (in samples).
IncrementSeries increments(const std::vector<double>& values, std::size_t lag_samples,
                           std::int64_t step_seconds = kStepSeconds,
                           const std::string& parent_id = {});

/// Returns a copy with the standardized field populated:
/// (value - mean) / stddev over non-NA entries, population convention.
/// Throws InsufficientData (< 2 non-NA values) or DegenerateSeries (zero std).
IncrementSeries standardize(const IncrementSeries& inc);

// -- small NA-aware statistics shared across modules ------------------------

std::size_t count_non_na(const std::vector<double>& v);
double na_fraction(const std::vector<double>& v);
/// Mean over non-NA entries; throws InsufficientData when no value is present.
double mean_ignoring_na(const std::vector<double>& v);
/// Population variance over non-NA entries (needs >= 1 value).
double population_variance_ignoring_na(const std::vector<double>& v);

} // namespace windpower
