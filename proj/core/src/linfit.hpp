#pragma once

// Ordinary least-squares line fit used by the log-log slope estimators.

#include <cmath>
#include <cstddef>
#include <vector>

namespace windpower::detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double sse = 0.0;
  std::size_t n = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  LineFit fit;
  fit.n = n;
  if (n < 2) return fit;

  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;

  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.sse += r * r;
  }
  if (n > 2) fit.slope_stderr = std::sqrt(fit.sse / (n - 2) / sxx);
  return fit;
}

} // namespace windpower::detail
