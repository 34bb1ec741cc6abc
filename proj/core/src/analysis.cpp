#include "windpower/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fft.hpp"
#include "linfit.hpp"
#include "windpower/errors.hpp"

namespace windpower {

Histogram pdf_histogram(const std::vector<double>& values, std::size_t n_bins) {
  if (n_bins < 2) throw InvalidArgument("histogram needs at least two bins");

  double lo = kNA, hi = kNA;
  std::size_t n_total = 0;
  for (double x : values) {
    if (is_na(x)) continue;
    if (n_total == 0) {
      lo = hi = x;
    } else {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    ++n_total;
  }
  if (n_total == 0) throw InsufficientData("histogram of an all-NA sequence");
  if (!(hi > lo)) throw InsufficientData("histogram needs at least two distinct values");

  Histogram h;
  h.n_total = n_total;
  h.bin_edges.resize(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t i = 0; i <= n_bins; ++i)
    h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges.back() = hi; // avoid round-off past the data range

  h.counts.assign(n_bins, 0);
  for (double x : values) {
    if (is_na(x)) continue;
    auto bin = static_cast<std::size_t>((x - lo) / width);
    if (bin >= n_bins) bin = n_bins - 1;
    ++h.counts[bin];
  }

  h.density.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i)
    h.density[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(n_total) * width);
  return h;
}

double mass_in_windows(const std::vector<double>& values, double lo1, double hi1, double lo2,
                       double hi2) {
  std::size_t hits = 0, n = 0;
  for (double x : values) {
    if (is_na(x)) continue;
    ++n;
    if ((x > lo1 && x < hi1) || (x > lo2 && x < hi2)) ++hits;
  }
  if (n == 0) throw InsufficientData("peak-mass fraction of an all-NA sequence");
  return static_cast<double>(hits) / static_cast<double>(n);
}

namespace {

/// Pearson correlation over the pairs (x[t], x[t+lag]) with both values
/// present; NA when fewer than two pairs or one side has no variation.
double pearson_at_lag(const std::vector<double>& x, std::size_t lag) {
  double sa = 0, sb = 0;
  std::size_t n = 0;
  for (std::size_t t = 0; t + lag < x.size(); ++t) {
    const double a = x[t], b = x[t + lag];
    if (is_na(a) || is_na(b)) continue;
    sa += a;
    sb += b;
    ++n;
  }
  if (n < 2) return kNA;
  const double ma = sa / n, mb = sb / n;
  double vaa = 0, vbb = 0, vab = 0;
  for (std::size_t t = 0; t + lag < x.size(); ++t) {
    const double a = x[t], b = x[t + lag];
    if (is_na(a) || is_na(b)) continue;
    vaa += (a - ma) * (a - ma);
    vbb += (b - mb) * (b - mb);
    vab += (a - ma) * (b - mb);
  }
  if (vaa == 0.0 || vbb == 0.0) return kNA;
  return vab / std::sqrt(vaa * vbb);
}

} // namespace

AcfCurve acf(const std::vector<double>& series, std::size_t max_lag) {
  if (max_lag >= series.size())
    throw InvalidArgument("acf: max_lag must be smaller than the series length");
  if (count_non_na(series) < 2) throw InsufficientData("acf needs at least two non-NA values");

  AcfCurve curve;
  curve.lags.resize(max_lag + 1);
  curve.theta.resize(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    curve.lags[lag] = lag;
    if (lag == 0) {
      const double t0 = pearson_at_lag(series, 0);
      if (is_na(t0)) throw DegenerateSeries("acf of a constant series");
      curve.theta[0] = 1.0;
    } else {
      curve.theta[lag] = pearson_at_lag(series, lag);
    }
  }
  return curve;
}

std::vector<double> shuffled_copy(const std::vector<double>& series, std::uint64_t seed) {
  std::vector<double> present;
  present.reserve(series.size());
  for (double x : series)
    if (!is_na(x)) present.push_back(x);

  std::mt19937_64 engine(seed);
  std::shuffle(present.begin(), present.end(), engine);

  std::vector<double> out(series.size(), kNA);
  std::size_t j = 0;
  for (std::size_t i = 0; i < series.size(); ++i)
    if (!is_na(series[i])) out[i] = present[j++];
  return out;
}

double significance_band(const std::vector<std::vector<double>>& series, std::size_t max_lag,
                         std::size_t n_shuffles, std::uint64_t seed) {
  if (n_shuffles < 10) throw InvalidArgument("significance band needs at least 10 shuffles");
  if (series.empty()) throw InsufficientData("significance band of an empty collection");

  std::mt19937_64 seeder(seed);
  double sum = 0, sumsq = 0;
  std::size_t n = 0;
  for (const auto& s : series) {
    for (std::size_t r = 0; r < n_shuffles; ++r) {
      const auto surrogate = shuffled_copy(s, seeder());
      const auto curve = acf(surrogate, max_lag);
      for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        const double v = curve.theta[lag];
        if (is_na(v)) continue;
        sum += v;
        sumsq += v * v;
        ++n;
      }
    }
  }
  if (n < 2) throw InsufficientData("significance band: no surrogate correlations");
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  return 2.0 * std::sqrt(std::max(var, 0.0));
}

double significance_band(const std::vector<double>& series, std::size_t max_lag,
                         std::size_t n_shuffles, std::uint64_t seed) {
  return significance_band(std::vector<std::vector<double>>{series}, max_lag, n_shuffles, seed);
}

SpectrumFit spectrum(const std::vector<double>& series, std::size_t n_segments, FitRange fit_range,
                     double dt_seconds) {
  if (n_segments == 0) throw InvalidArgument("spectrum needs at least one segment");
  if (fit_range.empty()) throw InvalidArgument("spectrum fit range is empty");
  if (!(dt_seconds > 0.0)) throw InvalidArgument("spectrum needs a positive sample spacing");

  const std::size_t seg_len = series.size() / n_segments;
  if (seg_len < 64)
    throw InsufficientData("spectrum segments need >= 64 samples, got " + std::to_string(seg_len));

  const std::size_t n_freq = seg_len / 2;
  SpectrumFit fit;
  fit.n_segments = n_segments;
  fit.fit_range = fit_range;
  fit.frequencies.resize(n_freq);
  fit.power.assign(n_freq, 0.0);
  for (std::size_t k = 1; k <= n_freq; ++k)
    fit.frequencies[k - 1] = static_cast<double>(k) / (static_cast<double>(seg_len) * dt_seconds);

  std::vector<double> chunk(seg_len);
  for (std::size_t seg = 0; seg < n_segments; ++seg) {
    const std::size_t off = seg * seg_len;
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < seg_len; ++i) {
      chunk[i] = series[off + i];
      if (!is_na(chunk[i])) {
        sum += chunk[i];
        ++n;
      }
    }
    if (n < 2) throw InsufficientData("spectrum segment is (nearly) all NA");
    const double mean = sum / static_cast<double>(n);
    // NA slots take the segment mean, i.e. zero after mean removal; this
    // biases affected frequencies toward zero power, which is the
    // conservative direction for a slope fit.
    for (std::size_t i = 0; i < seg_len; ++i) chunk[i] = is_na(chunk[i]) ? 0.0 : chunk[i] - mean;

    const auto bins = detail::fft_real(chunk);
    for (std::size_t k = 1; k <= n_freq; ++k)
      fit.power[k - 1] += std::norm(bins[k]) / static_cast<double>(seg_len);
  }
  for (double& p : fit.power) p /= static_cast<double>(n_segments);

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n_freq; ++i) {
    const double f = fit.frequencies[i];
    if (f < fit_range.lo || f > fit_range.hi || !(fit.power[i] > 0.0)) continue;
    lx.push_back(std::log(f));
    ly.push_back(std::log(fit.power[i]));
  }
  if (lx.size() < 3)
    throw InsufficientData("spectrum slope fit needs >= 3 frequencies inside the range");
  const auto line = detail::fit_line(lx, ly);
  fit.beta = -line.slope;
  fit.beta_stderr = line.slope_stderr;
  return fit;
}

Moments moments_ignoring_na(const std::vector<double>& values) {
  double sum = 0;
  std::size_t n = 0;
  for (double x : values) {
    if (is_na(x)) continue;
    sum += x;
    ++n;
  }
  if (n < 4) throw InsufficientData("moments need at least 4 non-NA values");
  const double mean = sum / static_cast<double>(n);

  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : values) {
    if (is_na(x)) continue;
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (m2 == 0.0) throw DegenerateSeries("moments of a constant sequence");

  Moments mom;
  mom.mean = mean;
  mom.stddev = std::sqrt(m2);
  mom.skewness = m3 / (m2 * mom.stddev);
  mom.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return mom;
}

Moments increment_moments(const IncrementSeries& inc) { return moments_ignoring_na(inc.values); }

double quantile_sorted(const std::vector<double>& sorted_values, double p) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw InsufficientData("quantile of an empty sample");
  const double h = p * static_cast<double>(n) + 0.5; // inverse of p_k = (k - 0.5)/n
  if (h <= 1.0) return sorted_values.front();
  if (h >= static_cast<double>(n)) return sorted_values.back();
  const auto k = static_cast<std::size_t>(h); // 1-based lower order statistic
  const double frac = h - static_cast<double>(k);
  return sorted_values[k - 1] + frac * (sorted_values[k] - sorted_values[k - 1]);
}

std::vector<std::pair<double, double>> qq_pairs(const std::vector<double>& a,
                                                const std::vector<double>& b,
                                                std::size_t n_quantiles) {
  if (n_quantiles == 0) throw InvalidArgument("qq_pairs needs at least one quantile");

  auto sorted_non_na = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v)
      if (!is_na(x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto sa = sorted_non_na(a);
  const auto sb = sorted_non_na(b);
  if (sa.size() < n_quantiles || sb.size() < n_quantiles)
    throw InsufficientData("qq_pairs: fewer non-NA values than requested quantiles");

  std::vector<std::pair<double, double>> out(n_quantiles);
  for (std::size_t i = 0; i < n_quantiles; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n_quantiles);
    out[i] = {quantile_sorted(sa, p), quantile_sorted(sb, p)};
  }
  return out;
}

} // namespace windpower
