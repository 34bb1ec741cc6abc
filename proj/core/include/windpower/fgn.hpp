#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace windpower {

enum class FgnMethod { durbin_levinson, circulant };

/// Request for one exact fractional-Gaussian-noise sample: unit variance,
/// unit spacing, Hurst exponent in (0, 1). Sampling is a deterministic
/// function of (hurst, n, seed, method).
struct FgnSpec {
  double hurst = 0.5;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  FgnMethod method = FgnMethod::circulant;

  void validate() const;
};

/// Autocovariance of unit-variance FGN at an integer lag:
/// gamma(0) = 1, gamma(k) = ((k+1)^2H - 2 k^2H + (k-1)^2H) / 2.
double fgn_autocovariance(double hurst, std::size_t lag);

/// Default size cap of the O(n^2) Durbin-Levinson path.
inline constexpr std::size_t kDurbinLevinsonLimit = std::size_t{1} << 15;

/// Exact sample via the Durbin-Levinson recursion. Throws CapacityExceeded
/// beyond the limit; use the circulant path for long series.
std::vector<double> sample_dl(const FgnSpec& spec, std::size_t limit = kDurbinLevinsonLimit);

struct CirculantDiag {
  double min_eigenvalue = 0.0;
  bool clamped = false;   // small negative eigenvalues were clamped to zero
  bool fell_back = false; // embedding failed, Durbin-Levinson used instead
};

/// Exact sample via circulant embedding of size 2(n-1), padded to the next
/// power of two. Eigenvalues below -1e-10 trigger a Durbin-Levinson
/// fallback; larger (round-off) negatives are clamped to zero and recorded.
std::vector<double> sample_circulant(const FgnSpec& spec, CirculantDiag* diag = nullptr);

/// Dispatches on spec.method.
std::vector<double> sample(const FgnSpec& spec);

} // namespace windpower
