#include "windpower/cleansing.hpp"

#include <cmath>

#include "windpower/errors.hpp"

namespace windpower {

namespace {

double round_decimals(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

bool equal_at_precision(double a, double b, int digits) {
  if (is_na(a) || is_na(b)) return false;
  return round_decimals(a, digits) == round_decimals(b, digits);
}

} // namespace

void CleansingConfig::validate() const {
  if (!(xi0 > 0.0)) throw InvalidArgument("cleansing: xi0 must be positive");
  if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("cleansing: q must lie in (0, 1]");
  if (!(rated_power_kw > 0.0)) throw InvalidArgument("cleansing: rated power must be positive");
  if (precision_digits < 0) throw InvalidArgument("cleansing: precision_digits must be >= 0");
}

CleansingResult cleanse(const TurbineSeries& series, const CleansingConfig& cfg) {
  cfg.validate();
  series.validate();

  CleansingResult result{series, {}};
  TurbineSeries& s = result.series;
  CleansingReport& rep = result.report;
  const std::size_t n = s.size();

  rep.na_fraction_before = na_fraction(s.power_avg);

  // Rule 1: consecutive identical averages. The min/max channels are needed
  // to exempt genuinely constant operation, so without them the rule is
  // skipped rather than guessed. Pairs are judged on the ingested values;
  // every trailing repeat of a frozen stretch gets flagged.
  if (s.has_min_max()) {
    for (std::size_t t = 1; t < n; ++t) {
      const double prev = series.power_avg[t - 1];
      const double cur = series.power_avg[t];
      if (!equal_at_precision(prev, cur, cfg.precision_digits)) continue;
      const bool constant_operation =
          equal_at_precision(s.power_min[t], cur, cfg.precision_digits) &&
          equal_at_precision(s.power_max[t], cur, cfg.precision_digits);
      if (constant_operation) continue;
      if (!is_na(s.power_avg[t])) {
        s.power_avg[t] = kNA;
        ++rep.consecutive_identical;
      }
    }
  } else {
    rep.skipped_rules.push_back("consecutive_identical");
  }

  // Rule 2: vanishing ten-minute standard deviation. Exact-zero comparison:
  // frozen sensors emit literal zeros, while calm intervals keep tiny
  // nonzero spread.
  if (s.has_std()) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s.power_std[t] == 0.0 && !is_na(s.power_avg[t])) {
        s.power_avg[t] = kNA;
        ++rep.zero_std;
      }
    }
  } else {
    rep.skipped_rules.push_back("zero_std");
  }

  // Rule 3: unphysical ramps. A jump larger than xi0 (relative to rated
  // power) is flagged when the two ten-minute intervals fail to overlap:
  // the minimum of the upper interval exceeds q times the maximum of the
  // lower one, in whichever direction the jump goes. The arriving value
  // P(t+1) is the one set NA.
  if (s.has_min_max()) {
    for (std::size_t t = 0; t + 1 < n; ++t) {
      const double a = s.power_avg[t];
      const double b = s.power_avg[t + 1];
      if (is_na(a) || is_na(b)) continue;
      const double xi = (b - a) / cfg.rated_power_kw;
      if (std::abs(xi) <= cfg.xi0) continue;

      bool implausible = false;
      if (xi > 0.0) {
        const double upper_min = s.power_min[t + 1];
        const double lower_max = s.power_max[t];
        implausible = !is_na(upper_min) && !is_na(lower_max) && upper_min > cfg.q * lower_max;
      } else {
        const double upper_min = s.power_min[t];
        const double lower_max = s.power_max[t + 1];
        implausible = !is_na(upper_min) && !is_na(lower_max) && upper_min > cfg.q * lower_max;
      }
      if (implausible) {
        s.power_avg[t + 1] = kNA;
        ++rep.unphysical_ramp;
      }
    }
  } else {
    rep.skipped_rules.push_back("unphysical_ramp");
  }

  rep.na_fraction_after = na_fraction(s.power_avg);
  return result;
}

} // namespace windpower
