#include "windpower/series.hpp"

#include <algorithm>
#include <cmath>

#include "windpower/errors.hpp"

namespace windpower {

void TurbineSeries::validate() const {
  const std::size_t n = power_avg.size();
  auto check_len = [&](const std::vector<double>& v, const char* name) {
    if (!v.empty() && v.size() != n)
      throw InvalidArgument("series '" + turbine_id + "': channel " + name +
                            " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(n));
  };
  check_len(power_min, "power_min");
  check_len(power_max, "power_max");
  check_len(power_std, "power_std");
  check_len(wind_speed, "wind_speed");

  if (step_seconds != kStepSeconds)
    throw InvalidArgument("series '" + turbine_id + "': step must be 600 s, got " +
                          std::to_string(step_seconds));

  if (has_min_max()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = power_min[i], mid = power_avg[i], hi = power_max[i];
      if (is_na(lo) || is_na(mid) || is_na(hi)) continue;
      if (lo > mid || mid > hi)
        throw InvalidArgument("series '" + turbine_id + "': min <= avg <= max violated at slot " +
                              std::to_string(i));
    }
  }
}

std::size_t count_non_na(const std::vector<double>& v) {
  std::size_t n = 0;
  for (double x : v)
    if (!is_na(x)) ++n;
  return n;
}

double na_fraction(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return static_cast<double>(v.size() - count_non_na(v)) / static_cast<double>(v.size());
}

double mean_ignoring_na(const std::vector<double>& v) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (is_na(x)) continue;
    sum += x;
    ++n;
  }
  if (n == 0) throw InsufficientData("mean of an all-NA sequence");
  return sum / static_cast<double>(n);
}

double population_variance_ignoring_na(const std::vector<double>& v) {
  const double m = mean_ignoring_na(v);
  double ss = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (is_na(x)) continue;
    ss += (x - m) * (x - m);
    ++n;
  }
  return ss / static_cast<double>(n);
}

IncrementSeries increments(const TurbineSeries& series, std::int64_t dt_seconds) {
  if (dt_seconds <= 0 || dt_seconds % series.step_seconds != 0)
    throw InvalidArgument("increment lag must be a positive multiple of the series step");
  const auto lag = static_cast<std::size_t>(dt_seconds / series.step_seconds);
  if (series.size() < 2) throw InsufficientData("increments need at least two samples");
  IncrementSeries out = increments(series.power_avg, lag, series.step_seconds, series.turbine_id);
  out.dt_seconds = dt_seconds;
  return out;
}

IncrementSeries increments(const std::vector<double>& values, std::size_t lag_samples,
                           std::int64_t step_seconds, const std::string& parent_id) {
  if (lag_samples == 0) throw InvalidArgument("increment lag must be positive");
  if (values.size() < 2 || values.size() <= lag_samples)
    throw InsufficientData("increments need at least lag + 1 samples");

  IncrementSeries inc;
  inc.parent_id = parent_id;
  inc.dt_seconds = static_cast<std::int64_t>(lag_samples) * step_seconds;
  inc.values.resize(values.size() - lag_samples);
  for (std::size_t i = 0; i + lag_samples < values.size(); ++i) {
    const double a = values[i], b = values[i + lag_samples];
    inc.values[i] = (is_na(a) || is_na(b)) ? kNA : b - a;
  }
  return inc;
}

IncrementSeries standardize(const IncrementSeries& inc) {
  if (count_non_na(inc.values) < 2)
    throw InsufficientData("standardize needs at least two non-NA increments");
  const double m = mean_ignoring_na(inc.values);
  const double sd = std::sqrt(population_variance_ignoring_na(inc.values));
  if (sd == 0.0) throw DegenerateSeries("increment series has zero standard deviation");

  IncrementSeries out = inc;
  out.mean = m;
  out.stddev = sd;
  out.standardized.resize(inc.values.size());
  for (std::size_t i = 0; i < inc.values.size(); ++i)
    out.standardized[i] = is_na(inc.values[i]) ? kNA : (inc.values[i] - m) / sd;
  return out;
}

} // namespace windpower
