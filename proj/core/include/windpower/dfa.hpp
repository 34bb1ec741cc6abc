#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace windpower {

/// Cumulative sum of the mean-adjusted series. NA entries contribute zero
/// to the running sum; their positions are flagged so that windows touching
/// them can be excluded downstream.
struct Profile {
  std::vector<double> values;
  std::vector<std::uint8_t> from_na; // 1 where the source value was NA
};

Profile profile(const std::vector<double>& series);

/// Scale-dependent fluctuation strength F(s) of the detrended profile.
struct FluctuationCurve {
  std::vector<std::size_t> scales; // window sizes, in samples
  std::vector<double> fluctuation; // F(s), same unit as the series
  std::vector<std::size_t> segments_used; // forward + reversed windows kept
  int detrend_order = 2;
  std::vector<std::size_t> dropped_scales; // scales with no usable window
};

/// For each scale s the profile is split into floor(T/s) disjoint windows
/// from the start plus the same number from the end (reversed pass). Each
/// window is detrended by a least-squares polynomial of degree
/// detrend_order; F(s) is the root mean square of the per-window RMS
/// residuals over all usable windows. Windows containing an NA-flagged
/// position are excluded and the divisor adjusted.
FluctuationCurve fluctuation(const std::vector<double>& series,
                             const std::vector<std::size_t>& scales, int detrend_order = 2);

/// Log-spaced scale grid: `count` scales from s_min up to n/4. Short scales
/// suffer finite-size effects and n/4 keeps at least four forward windows.
std::vector<std::size_t> default_scales(std::size_t n, std::size_t count = 20,
                                        std::size_t s_min = 16);

struct ScaleRange {
  std::size_t lo = 0;
  std::size_t hi = 0; // inclusive
};

/// A fitted scaling exponent F(s) ~ s^alpha. alpha > 1 indicates an
/// integrated (nonstationary) regime; the two Hurst readings below differ
/// in which regime they assume, and both are reported rather than picking
/// one.
struct ScalingFit {
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  ScaleRange fit_range;
  std::optional<std::size_t> crossover; // scale s_c, when detected
  double alpha_below = 0.0;
  double alpha_below_stderr = 0.0;
  double alpha_above = 0.0;
  double alpha_above_stderr = 0.0;

  bool integrated_regime() const { return alpha > 1.0; }
  double hurst_stationary() const { return alpha; }       // valid for stationary noise
  double hurst_integrated() const { return alpha - 1.0; } // valid for integrated series
};

/// Least-squares slope of log F vs log s over scales inside fit_range.
/// Throws InsufficientScales below four usable scales.
ScalingFit fit_alpha(const FluctuationCurve& curve, ScaleRange fit_range);

/// Convenience: fit over the full scale support.
ScalingFit fit_alpha(const FluctuationCurve& curve);

struct CrossoverConfig {
  /// Minimum relative SSE improvement of the two-segment fit over the
  /// single line for a crossover to be reported. Guards against spurious
  /// breakpoints on clean power laws.
  double min_sse_improvement = 0.05;
  std::size_t min_scales_per_side = 4;
};

/// Exhaustive breakpoint search in log-log space: fits independent lines
/// below (s <= s_c) and above (s > s_c) every admissible interior scale and
/// keeps the split with the smallest total SSE. Reports no crossover when
/// the improvement over the single-line fit stays under the threshold.
ScalingFit fit_crossover(const FluctuationCurve& curve, const CrossoverConfig& cfg = {});

} // namespace windpower
