#include "windpower/fgn.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "fft.hpp"
#include "windpower/errors.hpp"

namespace windpower {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

constexpr double kEigenvalueTolerance = -1e-10;

} // namespace

void FgnSpec::validate() const {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw InvalidArgument("FGN requires 0 < H < 1, got " + std::to_string(hurst));
  if (n < 1) throw InvalidArgument("FGN sample length must be >= 1");
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw InvalidArgument("FGN autocovariance requires 0 < H < 1");
  if (lag == 0) return 1.0;
  const double k = static_cast<double>(lag);
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(k - 1.0, e));
}

std::vector<double> sample_dl(const FgnSpec& spec, std::size_t limit) {
  spec.validate();
  if (spec.n > limit)
    throw CapacityExceeded("Durbin-Levinson path capped at n = " + std::to_string(limit) +
                           " (O(n^2)); use the circulant sampler");

  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const std::size_t n = spec.n;
  std::vector<double> gamma(n);
  for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(spec.hurst, k);

  std::vector<double> x(n);
  x[0] = gauss(engine); // gamma(0) = 1

  std::vector<double> phi, phi_prev;
  double v = 1.0;
  for (std::size_t t = 1; t < n; ++t) {
    double kappa = gamma[t];
    for (std::size_t j = 1; j < t; ++j) kappa -= phi_prev[j - 1] * gamma[t - j];
    const double reflection = kappa / v;

    phi.assign(t, 0.0);
    for (std::size_t j = 0; j + 1 < t; ++j)
      phi[j] = phi_prev[j] - reflection * phi_prev[t - 2 - j];
    phi[t - 1] = reflection;

    v *= (1.0 - reflection * reflection);
    if (v < 0.0) v = 0.0; // round-off guard; exact recursion keeps v > 0

    double mean = 0.0;
    for (std::size_t j = 0; j < t; ++j) mean += phi[j] * x[t - 1 - j];
    x[t] = mean + std::sqrt(v) * gauss(engine);
    phi_prev.swap(phi);
  }
  return x;
}

std::vector<double> sample_circulant(const FgnSpec& spec, CirculantDiag* diag) {
  spec.validate();
  if (diag) *diag = {};

  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const std::size_t n = spec.n;
  if (n == 1) return {gauss(engine)};

  const std::size_t m = next_pow2(2 * (n - 1));
  std::vector<std::complex<double>> row(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t lag = std::min(j, m - j);
    row[j] = fgn_autocovariance(spec.hurst, lag);
  }

  const auto eig = detail::fft_forward(row);
  double min_eig = eig[0].real();
  for (const auto& e : eig) min_eig = std::min(min_eig, e.real());
  if (diag) diag->min_eigenvalue = min_eig;

  if (min_eig < kEigenvalueTolerance) {
    // Provably does not happen for FGN with H in (0, 1); kept as a safety
    // net for future covariance families.
    if (diag) diag->fell_back = true;
    return sample_dl(spec, spec.n);
  }

  std::vector<double> lambda(m);
  bool clamped = false;
  for (std::size_t k = 0; k < m; ++k) {
    double val = eig[k].real();
    if (val < 0.0) {
      val = 0.0;
      clamped = true;
    }
    lambda[k] = val;
  }
  if (diag) diag->clamped = clamped;

  // Hermitian-symmetric spectral amplitudes with independent Gaussian
  // weights; the forward transform then yields two independent exact
  // samples in the real and imaginary parts (the real part is returned).
  std::vector<std::complex<double>> a(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  a[0] = std::sqrt(lambda[0] * inv_m) * gauss(engine);
  a[m / 2] = std::sqrt(lambda[m / 2] * inv_m) * gauss(engine);
  for (std::size_t k = 1; k < m / 2; ++k) {
    const double amp = std::sqrt(0.5 * lambda[k] * inv_m);
    const double re = gauss(engine);
    const double im = gauss(engine);
    a[k] = std::complex<double>(amp * re, amp * im);
    a[m - k] = std::conj(a[k]);
  }

  const auto z = detail::fft_forward(a);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = z[i].real();
  return x;
}

std::vector<double> sample(const FgnSpec& spec) {
  return spec.method == FgnMethod::durbin_levinson ? sample_dl(spec) : sample_circulant(spec);
}

} // namespace windpower
