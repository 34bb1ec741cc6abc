#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "windpower/series.hpp"

namespace windpower {

struct Histogram {
  std::vector<double> bin_edges; // n_bins + 1, strictly increasing
  std::vector<std::size_t> counts;
  std::vector<double> density; // integrates to 1 over the non-NA mass
  std::size_t n_total = 0;     // non-NA values binned
};

/// Equal-width histogram over [min, max] of the non-NA values; the maximum
/// lands in the last bin. Throws InsufficientData unless there are at least
/// two distinct non-NA values.
Histogram pdf_histogram(const std::vector<double>& values, std::size_t n_bins);

/// Fraction of non-NA values falling in [lo1, hi1) or [lo2, hi2)
/// (open/closed per half-open bins of the empirical peak windows).
double mass_in_windows(const std::vector<double>& values, double lo1, double hi1, double lo2,
                       double hi2);

struct AcfCurve {
  std::vector<std::size_t> lags; // in samples, starting at 0
  std::vector<double> theta;     // Pearson correlation; NA where < 2 pairs
  double band_halfwidth = 0.0;   // 0 until a significance band is attached
  std::size_t n_shuffles = 0;
};

/// Lagged Pearson autocorrelation with pairwise NA deletion: at each lag
/// only index pairs whose two values are both non-NA enter, and the
/// correlation is normalized by the pair-set variances so theta(0) = 1 and
/// |theta| <= 1. Throws InvalidArgument when max_lag >= length and
/// DegenerateSeries when the series carries no variation at lag zero.
AcfCurve acf(const std::vector<double>& series, std::size_t max_lag);

/// Two-sigma width of the shuffle-surrogate autocorrelation, pooled over
/// lags 1..max_lag and all shuffles. The shuffle permutes non-NA values in
/// place, leaving NA positions fixed; the generator is seeded for
/// reproducible bands.
double significance_band(const std::vector<double>& series, std::size_t max_lag,
                         std::size_t n_shuffles, std::uint64_t seed);

/// Pooled band across several series (and their shuffles).
double significance_band(const std::vector<std::vector<double>>& series, std::size_t max_lag,
                         std::size_t n_shuffles, std::uint64_t seed);

/// Returns a copy whose non-NA values are permuted with the given seed;
/// NA slots stay where they were.
std::vector<double> shuffled_copy(const std::vector<double>& series, std::uint64_t seed);

struct FitRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

struct SpectrumFit {
  std::vector<double> frequencies; // 1/s (1/sample when dt = 1)
  std::vector<double> power;       // segment-averaged periodogram
  std::size_t n_segments = 10;
  double beta = 0.0; // E(f) ~ f^-beta over fit_range
  double beta_stderr = 0.0;
  FitRange fit_range;
};

/// Segment-averaged periodogram with a log-log slope fit. The series is
/// split into n_segments equal chunks; per chunk, NAs are replaced by the
/// chunk mean before the mean-removed transform. Power convention:
/// |DFT|^2 / segment_length at positive frequencies k / (len * dt).
SpectrumFit spectrum(const std::vector<double>& series, std::size_t n_segments, FitRange fit_range,
                     double dt_seconds = 1.0);

/// Slope-fit band used for ten-minute turbine spectra (empirical and
/// simulated alike): periods between half a day and the three-day
/// crossover scale, where the power series scales cleanly.
inline constexpr FitRange kTurbineSpectrumBandHz{3.7e-6, 2.4e-5};

struct Moments {
  double mean = 0.0;
  double stddev = 0.0; // population convention
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// Population moments over non-NA entries; needs at least 4 of them.
Moments moments_ignoring_na(const std::vector<double>& values);

/// Moments of the raw increment values.
Moments increment_moments(const IncrementSeries& inc);

/// Empirical quantile at probability p of the sorted non-NA sample,
/// convention (i - 0.5)/n with linear interpolation between order
/// statistics.
double quantile_sorted(const std::vector<double>& sorted_values, double p);

/// Matched empirical quantiles of two samples at probabilities
/// (i - 0.5)/n_quantiles; monotone in both coordinates.
std::vector<std::pair<double, double>> qq_pairs(const std::vector<double>& a,
                                                const std::vector<double>& b,
                                                std::size_t n_quantiles);

} // namespace windpower
