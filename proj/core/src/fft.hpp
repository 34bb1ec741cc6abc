#pragma once

// Thin wrapper around FFTW3. Plan creation is not thread-safe, so it is
// serialized behind a mutex; execution of distinct plans is safe.

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace windpower::detail {

inline std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

/// Forward complex DFT, X_k = sum_j x_j exp(-2 pi i j k / n). No scaling.
inline std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  if (n == 0) return out;
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), src, dst, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

/// Real-to-complex DFT; returns the n/2 + 1 non-redundant bins.
inline std::vector<std::complex<double>> fft_real(const std::vector<double>& in) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  if (n == 0) return out;
  std::vector<double> buf(in); // r2c plans may clobber their input
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(), dst, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

} // namespace windpower::detail
