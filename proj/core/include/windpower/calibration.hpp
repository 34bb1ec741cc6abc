#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "windpower/model.hpp"
#include "windpower/series.hpp"

namespace windpower {

/// Half-open index range [begin, end) of one month within a series.
struct MonthRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Calendar months (UTC) covered by the series' timestamp grid.
std::vector<MonthRange> calendar_months(const TurbineSeries& series);

/// Equal-size partition for synthetic series without calendar anchoring.
std::vector<MonthRange> uniform_partition(std::size_t n, std::size_t k);

struct CalibrationConfig {
  double cut_in_ms = 3.0;   // turbine cut-in wind speed (config, not from data)
  double cut_off_ms = 25.0; // turbine cut-off wind speed
  // Peak windows of the bimodal density, reused as the target statistic of
  // the well-steepness search.
  double peak_low_lo_kw = 50.0;
  double peak_low_hi_kw = 200.0;
  double peak_high_lo_kw = 3550.0;
  double peak_high_hi_kw = 3800.0;
  double sigma_window_kw = 200.0;     // half-width of the Gaussian-fit windows
  double d2_bin_halfwidth_kw = 200.0; // conditioning bin around the center
  std::size_t replicas = 10;          // simulations averaged per candidate
  std::uint64_t seed = 20140301;

  // search spaces of the optimized parameters
  double a_grid_step_kw = 30.0;
  double a_grid_lo_kw = 900.0;
  double a_grid_hi_kw = 1790.0;
  double diffusion_lo_kw = 50.0;
  double diffusion_hi_kw = 1200.0;
  double amplitude_lo_kw = 0.0;
  double amplitude_hi_kw = 0.8;
};

/// Center of the symmetric double well: midpoint of the operating range.
double fix_center(double floor_kw, double rated_kw);

struct OmegaEstimate {
  double omega = 0.0;          // rad/step of the strongest periodogram bin
  double peak_to_median = 0.0; // diagnostic: peak amplitude vs median
  bool dominant = false;       // false flags "no dominant seasonality"
};

/// Frequency of the highest periodogram amplitude of the mean-removed
/// series (zero frequency excluded). Preferably fed the wind-speed series;
/// the power series is the documented fallback.
OmegaEstimate estimate_omega(const std::vector<double>& series);

struct ExcessProbabilities {
  std::vector<double> p_low;  // per month: fraction of wind below cut-in
  std::vector<double> p_high; // per month: fraction of wind above cut-off
};

/// Monthly probabilities of wind speeds outside the operating range.
/// Requires the wind channel and at least 100 non-NA samples per month.
ExcessProbabilities estimate_p(const TurbineSeries& series, double cut_in_ms, double cut_off_ms,
                               const std::vector<MonthRange>& months);

struct SigmaEstimate {
  double sigma_low_kw = 0.0;
  double sigma_high_kw = 0.0;
  std::size_t n_low = 0;
  std::size_t n_high = 0;
};

/// Maximum-likelihood Gaussian spread of the values inside
/// [bound - window, bound + window], centered at the bound itself, for both
/// operating-range bounds. Needs >= 50 values per side.
SigmaEstimate estimate_sigma(const std::vector<double>& values, double floor_kw, double rated_kw,
                             double window_kw);

/// Fraction of non-NA values inside the two peak windows.
double peak_mass_fraction(const std::vector<double>& values, const CalibrationConfig& cfg);

/// Grid search for the well halfwidth: matches the simulated peak-mass
/// fraction to the target, replica-averaged, ties broken toward larger a.
double optimize_well_halfwidth(double target_peak_mass, const ModelParams& params_template,
                               const std::vector<double>& grid, std::size_t n_steps,
                               const CalibrationConfig& cfg, std::vector<double>* objective = nullptr);

/// Conditional mean squared one-step increment at the center:
/// <(P(t+1) - P(t))^2 | |P(t) - center| <= bin>. Needs >= 200 samples in
/// the bin.
double empirical_d2(const std::vector<double>& values, double center_kw, double bin_halfwidth_kw);

/// Bisection on the diffusion strength until the simulated conditional
/// squared increment matches the target, replica-averaged.
double optimize_diffusion(double target_d2, const ModelParams& params_template,
                          std::size_t n_steps, const CalibrationConfig& cfg);

/// Per-month means of the running energy sum E(t) = sum_{t' <= t} P(t'),
/// with t' starting at each month's first slot. NA values contribute zero.
std::vector<double> month_energy_means(const std::vector<double>& values,
                                       const std::vector<MonthRange>& months);

/// Refining grid search for the seasonal amplitude: minimizes the
/// replica-averaged per-month gap of mean energy indicators.
double optimize_seasonal_amplitude(const std::vector<double>& target_month_energy,
                                   const ModelParams& params_template,
                                   const std::vector<MonthRange>& months,
                                   const CalibrationConfig& cfg);

struct CalibrationResult {
  // fixed from data
  double center_kw = 0.0;
  OmegaEstimate omega;
  ExcessProbabilities excess;
  SigmaEstimate sigma;
  // optimized by simulation matching
  double well_halfwidth_kw = 0.0;
  double diffusion_kw = 0.0;
  double seasonal_amplitude_kw = 0.0;
  // diagnostics
  double target_peak_mass = 0.0;
  double target_d2 = 0.0;
  std::vector<double> a_grid;
  std::vector<double> a_objective;

  ModelParams to_params(const ModelParams& base) const;
};

/// Full parameter-estimation pass for one Hurst exponent: fixes center,
/// seasonal frequency, excess probabilities (when wind data is present) and
/// excess spreads from the data, then optimizes well halfwidth, diffusion
/// and seasonal amplitude by simulation matching.
CalibrationResult calibrate(const TurbineSeries& cleaned, double hurst,
                            const CalibrationConfig& cfg);

} // namespace windpower
