#include "windpower/dfa.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "linfit.hpp"
#include "windpower/errors.hpp"
#include "windpower/series.hpp"

namespace windpower {

Profile profile(const std::vector<double>& series) {
  if (count_non_na(series) < 2) throw InsufficientData("profile needs at least two non-NA values");
  const double mean = mean_ignoring_na(series);

  Profile p;
  p.values.resize(series.size());
  p.from_na.resize(series.size());
  double running = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool na = is_na(series[i]);
    if (!na) running += series[i] - mean;
    p.values[i] = running;
    p.from_na[i] = na ? 1 : 0;
  }
  return p;
}

namespace {

/// Per-window detrending machinery for one scale: the design matrix of the
/// polynomial basis on normalized abscissae is factored once and reused for
/// every window of that size.
class WindowDetrender {
public:
  WindowDetrender(std::size_t s, int order)
      : design_(static_cast<Eigen::Index>(s), order + 1), qr_() {
    for (std::size_t i = 0; i < s; ++i) {
      // map 0..s-1 onto [-1, 1] to keep the basis well conditioned
      const double x = s > 1 ? 2.0 * static_cast<double>(i) / static_cast<double>(s - 1) - 1.0 : 0.0;
      double pow_x = 1.0;
      for (int c = 0; c <= order; ++c) {
        design_(static_cast<Eigen::Index>(i), c) = pow_x;
        pow_x *= x;
      }
    }
    qr_.compute(design_);
  }

  /// Mean squared residual of the least-squares polynomial fit.
  double residual_ms(const double* window, std::size_t s) const {
    Eigen::Map<const Eigen::VectorXd> y(window, static_cast<Eigen::Index>(s));
    const Eigen::VectorXd coeff = qr_.solve(y);
    const Eigen::VectorXd resid = y - design_ * coeff;
    return resid.squaredNorm() / static_cast<double>(s);
  }

private:
  Eigen::MatrixXd design_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

} // namespace

FluctuationCurve fluctuation(const std::vector<double>& series,
                             const std::vector<std::size_t>& scales, int detrend_order) {
  if (detrend_order < 0) throw InvalidArgument("detrend order must be >= 0");
  if (scales.empty()) throw InvalidArgument("fluctuation needs a non-empty scale grid");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (scales[i] <= scales[i - 1])
      throw InvalidArgument("scales must be strictly increasing");

  const Profile prof = profile(series);
  const std::size_t n = prof.values.size();
  const auto min_scale = static_cast<std::size_t>(detrend_order) + 2;
  if (scales.front() < min_scale || scales.back() > n / 4)
    throw InvalidArgument("scales must lie within [order + 2, T/4]");

  // prefix count of NA flags for O(1) window screening
  std::vector<std::size_t> na_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) na_prefix[i + 1] = na_prefix[i] + prof.from_na[i];
  auto window_clean = [&](std::size_t begin, std::size_t len) {
    return na_prefix[begin + len] == na_prefix[begin];
  };

  FluctuationCurve curve;
  curve.detrend_order = detrend_order;

  for (const std::size_t s : scales) {
    const std::size_t n_windows = n / s;
    const WindowDetrender detrender(s, detrend_order);

    double sum_sq = 0.0;
    std::size_t used = 0;
    for (std::size_t v = 0; v < n_windows; ++v) {
      const std::size_t fwd = v * s;
      if (window_clean(fwd, s)) {
        sum_sq += detrender.residual_ms(prof.values.data() + fwd, s);
        ++used;
      }
      const std::size_t rev = n - (v + 1) * s; // reversed pass
      if (window_clean(rev, s)) {
        sum_sq += detrender.residual_ms(prof.values.data() + rev, s);
        ++used;
      }
    }

    if (used == 0) {
      curve.dropped_scales.push_back(s);
      continue;
    }
    curve.scales.push_back(s);
    curve.fluctuation.push_back(std::sqrt(sum_sq / static_cast<double>(used)));
    curve.segments_used.push_back(used);
  }

  if (curve.scales.empty())
    throw InsufficientData("fluctuation: every scale lost all windows to NA gaps");
  return curve;
}

std::vector<std::size_t> default_scales(std::size_t n, std::size_t count, std::size_t s_min) {
  const std::size_t s_max = n / 4;
  if (s_max < s_min) throw InvalidArgument("series too short for the default scale grid");
  std::vector<std::size_t> scales;
  const double llo = std::log(static_cast<double>(s_min));
  const double lhi = std::log(static_cast<double>(s_max));
  for (std::size_t i = 0; i < count; ++i) {
    const double f = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    const auto s = static_cast<std::size_t>(std::lround(std::exp(llo + f * (lhi - llo))));
    if (scales.empty() || s > scales.back()) scales.push_back(s);
  }
  return scales;
}

namespace {

detail::LineFit loglog_fit(const FluctuationCurve& curve, std::size_t begin, std::size_t end) {
  std::vector<double> lx, ly;
  for (std::size_t i = begin; i < end; ++i) {
    if (!(curve.fluctuation[i] > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(curve.scales[i])));
    ly.push_back(std::log(curve.fluctuation[i]));
  }
  return detail::fit_line(lx, ly);
}

} // namespace

ScalingFit fit_alpha(const FluctuationCurve& curve, ScaleRange fit_range) {
  std::size_t begin = curve.scales.size(), end = 0;
  for (std::size_t i = 0; i < curve.scales.size(); ++i) {
    if (curve.scales[i] < fit_range.lo || curve.scales[i] > fit_range.hi) continue;
    begin = std::min(begin, i);
    end = std::max(end, i + 1);
  }
  if (begin >= end || end - begin < 4)
    throw InsufficientScales("fit_alpha needs >= 4 scales inside the fit range");

  const auto line = loglog_fit(curve, begin, end);
  if (line.n < 4) throw InsufficientScales("fit_alpha: fewer than 4 scales with positive F");

  ScalingFit fit;
  fit.alpha = line.slope;
  fit.alpha_stderr = line.slope_stderr;
  fit.fit_range = {curve.scales[begin], curve.scales[end - 1]};
  return fit;
}

ScalingFit fit_alpha(const FluctuationCurve& curve) {
  if (curve.scales.empty()) throw InsufficientScales("fit_alpha on an empty curve");
  return fit_alpha(curve, {curve.scales.front(), curve.scales.back()});
}

ScalingFit fit_crossover(const FluctuationCurve& curve, const CrossoverConfig& cfg) {
  const std::size_t n = curve.scales.size();
  if (n < 8) throw InsufficientScales("fit_crossover needs at least 8 scales");

  const auto single = loglog_fit(curve, 0, n);

  double best_sse = kNA;
  std::size_t best = 0;
  detail::LineFit best_below, best_above;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    // below covers s <= s_c, above covers s > s_c
    if (c + 1 < cfg.min_scales_per_side || n - (c + 1) < cfg.min_scales_per_side) continue;
    const auto below = loglog_fit(curve, 0, c + 1);
    const auto above = loglog_fit(curve, c + 1, n);
    if (below.n < cfg.min_scales_per_side || above.n < cfg.min_scales_per_side) continue;
    const double sse = below.sse + above.sse;
    if (is_na(best_sse) || sse < best_sse) {
      best_sse = sse;
      best = c;
      best_below = below;
      best_above = above;
    }
  }

  ScalingFit fit;
  fit.alpha = single.slope;
  fit.alpha_stderr = single.slope_stderr;
  fit.fit_range = {curve.scales.front(), curve.scales.back()};

  if (is_na(best_sse)) return fit; // no admissible breakpoint
  // an exact power law leaves only round-off residuals; never split it
  if (single.sse < 1e-20) return fit;
  const double improvement = (single.sse - best_sse) / single.sse;
  if (improvement < cfg.min_sse_improvement) return fit;

  fit.crossover = curve.scales[best];
  fit.alpha_below = best_below.slope;
  fit.alpha_below_stderr = best_below.slope_stderr;
  fit.alpha_above = best_above.slope;
  fit.alpha_above_stderr = best_above.slope_stderr;
  return fit;
}

} // namespace windpower
