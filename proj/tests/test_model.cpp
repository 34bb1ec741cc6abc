#include <doctest.h>

#include <cmath>

#include "windpower/analysis.hpp"
#include "windpower/errors.hpp"
#include "windpower/model.hpp"
#include "windpower/series.hpp"

using namespace windpower;

TEST_CASE("potential: center, minima and a spot value") {
  ModelParams p = reference_params(0.9); // a = 1235, center 1800
  CHECK(potential(p.center_kw, p) == 0.0);
  CHECK(potential(p.center_kw + p.well_halfwidth_kw, p) == doctest::Approx(-0.25));
  CHECK(potential(p.center_kw - p.well_halfwidth_kw, p) == doctest::Approx(-0.25));
  CHECK(potential(3600.0, p) == doctest::Approx(0.06599955042936445).epsilon(1e-12));
}

TEST_CASE("drift: fixed points and odd symmetry") {
  ModelParams p = reference_params(0.9);
  CHECK(drift(p.center_kw, p) == 0.0);
  CHECK(drift(p.center_kw + p.well_halfwidth_kw, p) == doctest::Approx(0.0));
  CHECK(drift(p.center_kw - p.well_halfwidth_kw, p) == doctest::Approx(0.0));
  CHECK(drift(p.center_kw + 0.5 * p.well_halfwidth_kw, p) == doctest::Approx(0.375));
  for (double dx : {10.0, 333.3, 1235.0, 2500.0})
    CHECK(drift(p.center_kw + dx, p) == doctest::Approx(-drift(p.center_kw - dx, p)));
}

TEST_CASE("seasonal force: phase anchoring") {
  ModelParams p = reference_params(0.5);
  p.seasonal_amplitude_kw = 2.0;
  p.seasonal_omega = 2.0 * std::numbers::pi / 144.0; // one day
  p.t_start_unix = 0;
  CHECK(seasonal_force(0, p) == doctest::Approx(2.0));
  CHECK(seasonal_force(72, p) == doctest::Approx(-2.0)); // half period
  p.seasonal_omega = 0.0;
  for (std::int64_t t : {0, 100, 100000}) CHECK(seasonal_force(t, p) == doctest::Approx(2.0));
}

TEST_CASE("reference parameter table") {
  const auto p5 = reference_params(0.5);
  CHECK(p5.well_halfwidth_kw == 1755.0);
  CHECK(p5.diffusion_kw == 355.0);
  CHECK(p5.seasonal_amplitude_kw == 0.15);
  const auto p7 = reference_params(0.7);
  CHECK(p7.well_halfwidth_kw == 1445.0);
  CHECK(p7.diffusion_kw == 360.0);
  CHECK(p7.seasonal_amplitude_kw == 0.17);
  const auto p9 = reference_params(0.9);
  CHECK(p9.well_halfwidth_kw == 1235.0);
  CHECK(p9.diffusion_kw == 485.0);
  CHECK(p9.seasonal_amplitude_kw == 0.26);
  CHECK_THROWS_AS(reference_params(0.6), InvalidArgument);
}

TEST_CASE("simulate: noiseless dynamics rest at a stable point") {
  ModelParams p = reference_params(0.9);
  p.diffusion_kw = 0.0;
  p.seasonal_amplitude_kw = 0.0;
  p.seed = 3;
  const auto sim = simulate(p, 64);
  const double lo = p.center_kw - p.well_halfwidth_kw;
  const double hi = p.center_kw + p.well_halfwidth_kw;
  CHECK((sim.raw.front() == doctest::Approx(lo) || sim.raw.front() == doctest::Approx(hi)));
  for (double v : sim.raw) CHECK(v == doctest::Approx(sim.raw.front()));
}

TEST_CASE("simulate: zero excess probabilities give hard clipping") {
  ModelParams p = reference_params(0.5);
  p.p_excess_high = 0.0;
  p.p_excess_low = 0.0;
  p.seed = 4;
  const auto sim = simulate(p, kStepsPerMonth);
  for (double v : sim.clipped) {
    CHECK(v >= p.floor_kw);
    CHECK(v <= p.rated_kw);
  }
}

TEST_CASE("simulate: deterministic in (params, n_steps)") {
  ModelParams p = reference_params(0.7);
  p.seed = 5;
  const auto a = simulate(p, 2048);
  const auto b = simulate(p, 2048);
  CHECK(a.raw == b.raw);
  CHECK(a.clipped == b.clipped);
  p.seed = 6;
  const auto c = simulate(p, 2048);
  CHECK(a.clipped != c.clipped);
}

TEST_CASE("simulate: raw and clipped agree inside the operating range") {
  ModelParams p = reference_params(0.9);
  p.seed = 7;
  const auto sim = simulate(p, kStepsPerMonth);
  REQUIRE(sim.raw.size() == sim.clipped.size());
  for (std::size_t i = 0; i < sim.raw.size(); ++i) {
    if (sim.raw[i] >= p.floor_kw && sim.raw[i] <= p.rated_kw) {
      CHECK(sim.clipped[i] == sim.raw[i]);
    }
  }
}

TEST_CASE("simulate: burn-in discards the leading steps deterministically") {
  // equal total lengths give the same latent path; the burned run emits its
  // tail only
  ModelParams p = reference_params(0.9);
  p.seed = 8;
  p.burn_in_steps = 0;
  const auto plain = simulate(p, 1280);
  p.burn_in_steps = 256;
  const auto burned = simulate(p, 1024);
  REQUIRE(burned.raw.size() == 1024);
  for (std::size_t i = 0; i < burned.raw.size(); ++i)
    CHECK(burned.raw[i] == plain.raw[i + 256]);
}

TEST_CASE("simulate: well symmetry without seasonal bias") {
  ModelParams p = reference_params(0.5);
  p.seasonal_amplitude_kw = 0.0;
  p.p_excess_high = p.p_excess_low = 0.05;
  p.sigma_high_kw = p.sigma_low_kw = 10.0;

  double upper = 0.0, total = 0.0;
  for (std::uint64_t r = 0; r < 50; ++r) {
    p.seed = 100 + r;
    const auto sim = simulate(p, kStepsPerMonth);
    for (double v : sim.clipped) {
      upper += v >= p.center_kw ? 1.0 : 0.0;
      total += 1.0;
    }
  }
  const double occupancy = upper / total;
  CHECK(std::abs(occupancy - 0.5) < 0.05);
}

TEST_CASE("simulate: excess fraction converges to the excess probability") {
  ModelParams p = reference_params(0.5);
  p.p_excess_high = 0.3;
  p.p_excess_low = 0.2;
  p.seed = 11;
  const auto sim = simulate(p, kStepsPerYear);

  std::size_t high_events = 0, high_excess = 0, low_events = 0, low_excess = 0;
  for (std::size_t i = 0; i < sim.raw.size(); ++i) {
    if (sim.raw[i] > p.rated_kw) {
      ++high_events;
      if (sim.clipped[i] != p.rated_kw) ++high_excess;
    } else if (sim.raw[i] < p.floor_kw) {
      ++low_events;
      if (sim.clipped[i] != p.floor_kw) ++low_excess;
    }
  }
  REQUIRE(high_events > 10000);
  REQUIRE(low_events > 10000);
  const double se_high = std::sqrt(0.3 * 0.7 / static_cast<double>(high_events));
  const double se_low = std::sqrt(0.2 * 0.8 / static_cast<double>(low_events));
  CHECK(std::abs(static_cast<double>(high_excess) / high_events - 0.3) < 3.0 * se_high);
  CHECK(std::abs(static_cast<double>(low_excess) / low_events - 0.2) < 3.0 * se_low);
}

TEST_CASE("simulate: persistent month shows heavy-tailed increments") {
  ModelParams p = reference_params(0.9);
  p.seed = 12;
  const auto sim = simulate(p, kStepsPerMonth);
  const auto inc = increments(sim.to_turbine_series(), 600);
  const auto m = increment_moments(standardize(inc));
  CHECK(m.excess_kurtosis > 1.0);
}

TEST_CASE("transition stats: degenerate shapes") {
  CHECK(transition_stats(std::vector<double>(100, 3600.0), 1800.0).n_transitions == 0);

  std::vector<double> square(50);
  for (std::size_t i = 0; i < square.size(); ++i) square[i] = i % 2 ? 3600.0 : 0.0;
  const auto st = transition_stats(square, 1800.0);
  CHECK(st.n_transitions == square.size() - 1);
  CHECK(st.mean_residence_steps_low == doctest::Approx(1.0));
  CHECK(st.mean_residence_steps_high == doctest::Approx(1.0));

  CHECK_THROWS_AS(transition_stats(std::vector<double>{1.0}, 0.5), InsufficientData);
}

TEST_CASE("to_turbine_series exports the clipped observation") {
  ModelParams p = reference_params(0.7);
  p.seed = 13;
  const auto sim = simulate(p, 256);
  const auto series = sim.to_turbine_series("SIM7");
  CHECK(series.turbine_id == "SIM7");
  CHECK(series.power_avg == sim.clipped);
  CHECK(series.size() == 256);
  CHECK(!series.has_min_max());
  CHECK_NOTHROW(series.validate());
}

TEST_CASE("parameter validation") {
  ModelParams p = reference_params(0.9);
  p.hurst = 1.2;
  CHECK_THROWS_AS(simulate(p, 10), InvalidArgument);
  p = reference_params(0.9);
  p.p_excess_low = -0.1;
  CHECK_THROWS_AS(simulate(p, 10), InvalidArgument);
  p = reference_params(0.9);
  p.center_kw = -5.0;
  CHECK_THROWS_AS(simulate(p, 10), InvalidArgument);
  p = reference_params(0.9);
  CHECK_THROWS_AS(simulate(p, 0), InvalidArgument);
}
