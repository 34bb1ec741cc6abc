#include "windpower/model.hpp"

#include <cmath>
#include <random>

#include "windpower/errors.hpp"
#include "windpower/fgn.hpp"

namespace windpower {

void ModelParams::validate() const {
  if (!(hurst > 0.0 && hurst < 1.0)) throw InvalidArgument("model: hurst must lie in (0, 1)");
  if (!(well_halfwidth_kw > 0.0)) throw InvalidArgument("model: well halfwidth must be positive");
  if (diffusion_kw < 0.0) throw InvalidArgument("model: diffusion must be >= 0");
  if (!(p_excess_high >= 0.0 && p_excess_high <= 1.0) ||
      !(p_excess_low >= 0.0 && p_excess_low <= 1.0))
    throw InvalidArgument("model: excess probabilities must lie in [0, 1]");
  if (sigma_high_kw < 0.0 || sigma_low_kw < 0.0)
    throw InvalidArgument("model: excess sigmas must be >= 0");
  if (!(floor_kw < center_kw && center_kw < rated_kw))
    throw InvalidArgument("model: requires floor < center < rated");
}

ModelParams reference_params(double hurst) {
  ModelParams p;
  p.hurst = hurst;
  if (hurst == 0.5) {
    p.well_halfwidth_kw = 1755.0;
    p.diffusion_kw = 355.0;
    p.seasonal_amplitude_kw = 0.15;
  } else if (hurst == 0.7) {
    p.well_halfwidth_kw = 1445.0;
    p.diffusion_kw = 360.0;
    p.seasonal_amplitude_kw = 0.17;
  } else if (hurst == 0.9) {
    p.well_halfwidth_kw = 1235.0;
    p.diffusion_kw = 485.0;
    p.seasonal_amplitude_kw = 0.26;
  } else {
    throw InvalidArgument("reference parameters exist for H in {0.5, 0.7, 0.9}");
  }
  return p;
}

double potential(double power_kw, const ModelParams& params) {
  const double a = params.well_halfwidth_kw;
  const double d = power_kw - params.center_kw;
  return d * d * d * d / (4.0 * a * a * a * a) - d * d / (2.0 * a * a);
}

double drift(double power_kw, const ModelParams& params) {
  const double r = (power_kw - params.center_kw) / params.well_halfwidth_kw;
  return -r * r * r + r;
}

double seasonal_force(std::int64_t step_index, const ModelParams& params) {
  const double phase0 =
      static_cast<double>(params.t_start_unix / params.step_seconds + step_index);
  return params.seasonal_amplitude_kw * std::cos(params.seasonal_omega * phase0);
}

SimulatedSeries simulate(const ModelParams& params, std::size_t n_steps) {
  params.validate();
  if (n_steps < 1) throw InvalidArgument("simulate needs n_steps >= 1");

  std::mt19937_64 engine(params.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const std::size_t total = n_steps + params.burn_in_steps;

  FgnSpec noise_spec;
  noise_spec.hurst = params.hurst;
  noise_spec.n = total;
  noise_spec.seed = engine();
  noise_spec.method = FgnMethod::circulant;
  const std::vector<double> noise = sample(noise_spec);

  // start in one of the wells, chosen uniformly to avoid biasing occupancy
  const bool upper_well = uniform(engine) < 0.5;
  double state = params.center_kw +
                 (upper_well ? params.well_halfwidth_kw : -params.well_halfwidth_kw);

  SimulatedSeries out;
  out.params = params;
  out.raw.reserve(n_steps);
  out.clipped.reserve(n_steps);

  for (std::size_t i = 0; i < total; ++i) {
    state += drift(state, params) + seasonal_force(static_cast<std::int64_t>(i), params) +
             params.diffusion_kw * noise[i];
    if (i < params.burn_in_steps) continue;

    out.raw.push_back(state);
    double emitted = state;
    if (state > params.rated_kw) {
      emitted = params.rated_kw;
      if (uniform(engine) < params.p_excess_high)
        emitted += params.sigma_high_kw * gauss(engine);
    } else if (state < params.floor_kw) {
      emitted = params.floor_kw;
      if (uniform(engine) < params.p_excess_low) emitted += params.sigma_low_kw * gauss(engine);
    }
    out.clipped.push_back(emitted);
  }
  return out;
}

TurbineSeries SimulatedSeries::to_turbine_series(const std::string& id) const {
  TurbineSeries s;
  s.turbine_id = id;
  s.t0_unix = params.t_start_unix;
  s.step_seconds = params.step_seconds;
  s.power_avg = clipped;
  return s;
}

TransitionStats transition_stats(const std::vector<double>& values, double center_kw) {
  if (values.size() < 2) throw InsufficientData("transition stats need at least two samples");

  TransitionStats stats;
  std::size_t run = 1;
  std::size_t runs_low = 0, runs_high = 0, steps_low = 0, steps_high = 0;
  bool high = values[0] >= center_kw;

  auto close_run = [&](bool was_high, std::size_t length) {
    if (was_high) {
      ++runs_high;
      steps_high += length;
    } else {
      ++runs_low;
      steps_low += length;
    }
  };

  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool h = values[i] >= center_kw;
    if (h == high) {
      ++run;
      continue;
    }
    close_run(high, run);
    ++stats.n_transitions;
    high = h;
    run = 1;
  }
  close_run(high, run);

  stats.mean_residence_steps_low =
      runs_low ? static_cast<double>(steps_low) / static_cast<double>(runs_low) : 0.0;
  stats.mean_residence_steps_high =
      runs_high ? static_cast<double>(steps_high) / static_cast<double>(runs_high) : 0.0;
  return stats;
}

TransitionStats transition_stats(const SimulatedSeries& sim) {
  return transition_stats(sim.clipped, sim.params.center_kw);
}

} // namespace windpower
