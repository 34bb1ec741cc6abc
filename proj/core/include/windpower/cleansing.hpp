#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "windpower/series.hpp"

namespace windpower {

/// Thresholds of the three-rule outlier screen.
struct CleansingConfig {
  double xi0 = 0.67;            // ramp threshold on (P(t+1)-P(t))/rated
  double q = 0.99;              // interval-overlap slack factor
  double rated_power_kw = 3600; // rated output the ramp is normalized by
  int precision_digits = 5;     // decimal digits for the identical-value rule

  void validate() const;
};

struct CleansingReport {
  // Per-rule counts of power_avg values newly set to NA. Redundant
  // timestamps are rejected at ingestion, so that counter stays zero here
  // and exists for schema completeness.
  std::size_t duplicate_timestamp = 0;
  std::size_t consecutive_identical = 0;
  std::size_t zero_std = 0;
  std::size_t unphysical_ramp = 0;
  // Rules that could not run because a required channel is absent.
  std::vector<std::string> skipped_rules;
  double na_fraction_before = 0.0;
  double na_fraction_after = 0.0;
};

struct CleansingResult {
  TurbineSeries series;
  CleansingReport report;
};

/// Marks implausible power_avg values NA and reports per-rule counts.
/// Rules, applied in order on the evolving copy:
///   1. the trailing value of two consecutive identical averages (at
///      precision_digits decimal digits) is NA unless its interval's min and
///      max equal the average too (genuinely constant operation);
///   2. values whose ten-minute standard deviation is exactly zero are NA;
///   3. the arriving value of a jump with |P(t+1)-P(t)|/rated > xi0 is NA
///      when the two intervals fail to overlap: the minimum of the upper
///      interval exceeds q times the maximum of the lower one.
/// A rule lacking its required channel is skipped and listed in the report.
CleansingResult cleanse(const TurbineSeries& series, const CleansingConfig& cfg = {});

} // namespace windpower
