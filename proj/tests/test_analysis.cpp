#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "windpower/analysis.hpp"
#include "windpower/errors.hpp"
#include "windpower/fgn.hpp"

using namespace windpower;

namespace {

std::vector<double> gaussian_sample(std::size_t n, std::uint64_t seed, double mean = 0.0,
                                    double sd = 1.0) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(mean, sd);
  std::vector<double> out(n);
  for (auto& x : out) x = gauss(engine);
  return out;
}

double integrate_density(const Histogram& h) {
  double total = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i)
    total += h.density[i] * (h.bin_edges[i + 1] - h.bin_edges[i]);
  return total;
}

} // namespace

TEST_CASE("histogram: symmetric bimodal values occupy two equal bins") {
  std::vector<double> values;
  for (int i = 0; i < 50; ++i) {
    values.push_back(0.0);
    values.push_back(3600.0);
  }
  const auto h = pdf_histogram(values, 10);
  CHECK(h.n_total == 100);
  CHECK(h.counts.front() == 50);
  CHECK(h.counts.back() == 50);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 100);
  CHECK(h.density.front() == doctest::Approx(h.density.back()));
  CHECK(integrate_density(h) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("histogram: NA values are excluded, density still normalized") {
  auto values = gaussian_sample(5000, 21, 1800.0, 400.0);
  for (std::size_t i = 0; i < values.size(); i += 7) values[i] = kNA;
  const auto h = pdf_histogram(values, 40);
  CHECK(h.n_total == count_non_na(values));
  CHECK(integrate_density(h) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("histogram: error paths") {
  CHECK_THROWS_AS(pdf_histogram({1.0, 2.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(pdf_histogram({kNA, kNA}, 4), InsufficientData);
  CHECK_THROWS_AS(pdf_histogram(std::vector<double>(10, 5.0), 4), InsufficientData);
}

TEST_CASE("mass_in_windows counts open-interval hits") {
  const std::vector<double> v{0.0, 100.0, 150.0, 1800.0, 3600.0, 3700.0, kNA};
  CHECK(mass_in_windows(v, 50, 200, 3550, 3800) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("acf: alternating series is perfectly anticorrelated at lag 1") {
  std::vector<double> x(64);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 ? -1.0 : 1.0;
  const auto curve = acf(x, 4);
  CHECK(curve.theta[0] == 1.0);
  CHECK(curve.theta[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(curve.theta[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("acf: white noise stays below 0.02 up to lag 100") {
  const auto x = gaussian_sample(100000, 31);
  const auto curve = acf(x, 100);
  for (std::size_t lag = 1; lag <= 100; ++lag) CHECK(std::abs(curve.theta[lag]) < 0.02);
}

TEST_CASE("acf: pairwise deletion skips NA pairs") {
  std::vector<double> x = gaussian_sample(4000, 32);
  for (std::size_t i = 0; i < x.size(); i += 5) x[i] = kNA;
  const auto curve = acf(x, 10);
  CHECK(curve.theta[0] == 1.0);
  for (std::size_t lag = 1; lag <= 10; ++lag) {
    CHECK(!is_na(curve.theta[lag]));
    CHECK(std::abs(curve.theta[lag]) <= 1.0);
  }
}

TEST_CASE("acf: affine invariance to 1e-9") {
  const auto x = gaussian_sample(2000, 33, 5.0, 2.0);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.5 * x[i] - 1234.0;
  const auto cx = acf(x, 20);
  const auto cy = acf(y, 20);
  for (std::size_t lag = 0; lag <= 20; ++lag)
    CHECK(std::abs(cx.theta[lag] - cy.theta[lag]) < 1e-9);
}

TEST_CASE("acf: error paths") {
  CHECK_THROWS_AS(acf(gaussian_sample(50, 1), 50), InvalidArgument);
  CHECK_THROWS_AS(acf(std::vector<double>(50, 2.0), 5), DegenerateSeries);
}

TEST_CASE("shuffled_copy permutes values and fixes NA slots") {
  std::vector<double> x{1.0, kNA, 2.0, 3.0, kNA, 4.0};
  const auto y = shuffled_copy(x, 9);
  REQUIRE(y.size() == x.size());
  CHECK(is_na(y[1]));
  CHECK(is_na(y[4]));
  std::vector<double> xs, ys;
  for (double v : x)
    if (!is_na(v)) xs.push_back(v);
  for (double v : y)
    if (!is_na(v)) ys.push_back(v);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  CHECK(xs == ys);
}

TEST_CASE("significance band: white-noise width near 2/sqrt(N)") {
  const auto x = gaussian_sample(10000, 41);
  const double band = significance_band(x, 50, 100, 7);
  CHECK(band > 0.02 * 0.7);
  CHECK(band < 0.02 * 1.3);
}

TEST_CASE("significance band: degenerate input propagates from acf") {
  CHECK_THROWS_AS(significance_band(std::vector<double>(100, 1.0), 10, 10, 1), DegenerateSeries);
}

TEST_CASE("significance band: invariant under global scaling") {
  const auto x = gaussian_sample(4000, 42);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 250.0 * x[i];
  const double bx = significance_band(x, 20, 20, 11);
  const double by = significance_band(y, 20, 20, 11);
  CHECK(bx == doctest::Approx(by).epsilon(1e-9));
}

TEST_CASE("spectrum: white noise is flat") {
  const auto x = gaussian_sample(65536, 51);
  const auto fit = spectrum(x, 10, {0.002, 0.4});
  CHECK(std::abs(fit.beta) < 0.1);
}

TEST_CASE("spectrum: cumulated antipersistent noise has beta near 1 + 2H") {
  FgnSpec spec;
  spec.hurst = 0.33;
  spec.n = 65536;
  spec.seed = 77;
  const auto noise = sample_circulant(spec);
  std::vector<double> integrated(noise.size());
  double run = 0.0;
  for (std::size_t i = 0; i < noise.size(); ++i) integrated[i] = (run += noise[i]);
  const auto fit = spectrum(integrated, 10, {0.003, 0.05});
  CHECK(std::abs(fit.beta - 1.66) < 0.15);
}

TEST_CASE("spectrum: integration raises the slope by two") {
  // antipersistent noise keeps the cumulated slope below the plain
  // periodogram's leakage ceiling of 2
  FgnSpec spec;
  spec.hurst = 0.3;
  spec.n = 65536;
  spec.seed = 78;
  const auto noise = sample_circulant(spec);
  std::vector<double> integrated(noise.size());
  double run = 0.0;
  for (std::size_t i = 0; i < noise.size(); ++i) integrated[i] = (run += noise[i]);

  const FitRange range{0.003, 0.05};
  const auto base = spectrum(noise, 10, range);
  const auto cum = spectrum(integrated, 10, range);
  CHECK(std::abs((cum.beta - base.beta) - 2.0) < 0.15);
}

TEST_CASE("spectrum: frequencies carry the sampling interval") {
  const auto x = gaussian_sample(6400, 52);
  const auto fit = spectrum(x, 10, {1e-5, 8e-4}, 600.0);
  const std::size_t seg = 640;
  CHECK(fit.frequencies.front() == doctest::Approx(1.0 / (seg * 600.0)));
  CHECK(fit.frequencies.back() == doctest::Approx(0.5 / 600.0));
}

TEST_CASE("spectrum: error paths") {
  const auto x = gaussian_sample(500, 53);
  CHECK_THROWS_AS(spectrum(x, 10, {0.01, 0.4}), InsufficientData); // 50-sample segments
  CHECK_THROWS_AS(spectrum(x, 2, {0.4, 0.01}), InvalidArgument);   // empty range
}

TEST_CASE("moments: standardized Gaussian sample") {
  const auto x = gaussian_sample(1000000, 61);
  const auto m = moments_ignoring_na(x);
  CHECK(std::abs(m.mean) < 0.01);
  CHECK(m.stddev == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(m.skewness) < 0.02);
  CHECK(std::abs(m.excess_kurtosis) < 0.05);
}

TEST_CASE("moments: symmetric two-point mass has excess kurtosis -2") {
  std::vector<double> x;
  for (int i = 0; i < 100; ++i) {
    x.push_back(-3.0);
    x.push_back(3.0);
  }
  const auto m = moments_ignoring_na(x);
  CHECK(m.excess_kurtosis == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(m.skewness == doctest::Approx(0.0));
}

TEST_CASE("moments: error paths") {
  CHECK_THROWS_AS(moments_ignoring_na({1.0, 2.0, 3.0}), InsufficientData);
  CHECK_THROWS_AS(moments_ignoring_na({kNA, 1.0, 2.0, 3.0}), InsufficientData);
}

TEST_CASE("qq_pairs: identical samples sit on the diagonal") {
  const auto x = gaussian_sample(5000, 71);
  const auto pairs = qq_pairs(x, x, 100);
  for (const auto& [qa, qb] : pairs) CHECK(qa == doctest::Approx(qb));
}

TEST_CASE("qq_pairs: scaling maps to a line of slope two") {
  const auto x = gaussian_sample(5000, 72);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i];
  const auto pairs = qq_pairs(x, y, 50);
  for (const auto& [qa, qb] : pairs) CHECK(qb == doctest::Approx(2.0 * qa).epsilon(1e-9));
}

TEST_CASE("qq_pairs: monotone in both coordinates") {
  const auto a = gaussian_sample(3000, 73);
  const auto b = gaussian_sample(4000, 74, 1.0, 3.0);
  const auto pairs = qq_pairs(a, b, 64);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    CHECK(pairs[i].first >= pairs[i - 1].first);
    CHECK(pairs[i].second >= pairs[i - 1].second);
  }
}

TEST_CASE("qq_pairs: insufficient data") {
  CHECK_THROWS_AS(qq_pairs({1.0, 2.0}, {1.0, 2.0, 3.0}, 3), InsufficientData);
}

TEST_CASE("quantile convention: (i - 0.5)/n with interpolation") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0); // 1..100
  CHECK(quantile_sorted(v, 0.005) == doctest::Approx(1.0)); // clamps at the edge
  CHECK(quantile_sorted(v, 0.5) == doctest::Approx(50.5));
  CHECK(quantile_sorted(v, 0.995) == doctest::Approx(100.0));
}
