#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "windpower/series.hpp"

namespace windpower {

/// Steps per calendar-free month (30 days) and per year (365 days) on the
/// ten-minute grid.
inline constexpr std::size_t kStepsPerDay = 144;
inline constexpr std::size_t kStepsPerMonth = 30 * kStepsPerDay;  // 4320
inline constexpr std::size_t kStepsPerYear = 365 * kStepsPerDay;  // 52560

/// Parameters of the bistable stochastic power model. The time unit is one
/// ten-minute step: diffusion and seasonal amplitudes are per step, the
/// seasonal frequency is rad/step, and the noise enters as one unit-variance
/// FGN value per step scaled by diffusion_kw (the calibration of the
/// diffusion strength absorbs the step-scaling convention).
struct ModelParams {
  double hurst = 0.9;
  double well_halfwidth_kw = 1235.0;  // distance of the stable points from the center
  double diffusion_kw = 485.0;        // noise strength per step
  double seasonal_amplitude_kw = 0.26; // amplitude of the periodic force, per step
  double center_kw = 1800.0;          // unstable midpoint between the wells
  double seasonal_omega = 2.0 * std::numbers::pi / static_cast<double>(kStepsPerYear); // rad/step
  double p_excess_high = 0.05; // probability that a beyond-rated sample stays beyond
  double p_excess_low = 0.10;  // same at the lower bound
  double sigma_high_kw = 68.93; // spread of excess values around the rated bound
  double sigma_low_kw = 4.47;   // spread of excess values around the floor
  double floor_kw = 0.0;
  double rated_kw = 3600.0;
  std::int64_t step_seconds = kStepSeconds;
  std::uint64_t seed = 0;
  std::int64_t t_start_unix = 0; // fixes the seasonal phase
  std::size_t burn_in_steps = 0;

  void validate() const;
};

/// Table of parameter sets calibrated for the reference turbine, one per
/// studied Hurst exponent (0.5, 0.7, 0.9). Throws InvalidArgument for any
/// other value.
ModelParams reference_params(double hurst);

/// Double-well potential, dimensionless:
/// V(P) = (P - P0)^4 / (4 a^4) - (P - P0)^2 / (2 a^2); minima V = -1/4 at
/// P0 +- a.
double potential(double power_kw, const ModelParams& params);

/// Deterministic restoring force (the seasonal drive excluded):
/// -((P - P0)/a)^3 + (P - P0)/a, in kW per step. Zero at the center and at
/// both stable points; odd around the center.
double drift(double power_kw, const ModelParams& params);

/// Periodic force A cos(omega t), phase anchored at t_start.
double seasonal_force(std::int64_t step_index, const ModelParams& params);

/// One simulated trajectory: the latent state (raw) follows the Langevin
/// recursion, while the emitted observation (clipped) applies per-sample
/// curtailment at the operating range.
struct SimulatedSeries {
  ModelParams params;
  std::vector<double> raw;     // latent P-tilde, continues the recursion unclipped
  std::vector<double> clipped; // emitted P

  std::size_t size() const { return clipped.size(); }
  TurbineSeries to_turbine_series(const std::string& id = "SIM") const;
};

/// Euler-Maruyama integration driven by one FGN sample of length n_steps
/// (plus burn-in). The initial state sits in one of the two wells, chosen
/// by the seeded generator. Beyond-range samples are emitted at the bound
/// with probability 1 - p, or at the bound plus a Normal(0, sigma) excess
/// with probability p; the latent state is never reset by clipping.
/// Deterministic given (params, n_steps).
SimulatedSeries simulate(const ModelParams& params, std::size_t n_steps);

/// Crossing statistics of the center line, with well membership defined by
/// the nearer stable point.
struct TransitionStats {
  std::size_t n_transitions = 0;
  double mean_residence_steps_low = 0.0;
  double mean_residence_steps_high = 0.0;
};

TransitionStats transition_stats(const SimulatedSeries& sim);
TransitionStats transition_stats(const std::vector<double>& values, double center_kw);

} // namespace windpower
