#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "animlab/easing.hpp"
#include "animlab/harness/engine.hpp"
#include "animlab/signal.hpp"

namespace animlab {

struct InterruptionLimitResult {
  std::vector<int> n;
  std::vector<double> deviation;  // sup_i |y_i - x_0|
  std::optional<std::string> warning;
};

/// Simple transitions retargeted n times over one unit of time, with the
/// target toggling 1, 0, 1, ... starting from y = x_0 = 0:
/// y_i = y_{i-1} + s(1/n) (x_i - y_{i-1}).
InterruptionLimitResult experiment_interruption_limit(const std::vector<int>& n_values,
                                                      const Easing& easing = make_smoothstep(1.0));

struct VelocityJump {
  std::string engine;
  double max_jump;
};

/// max |v(t_i+) - v(t_i-)| over the retarget instants of `input`, for each
/// engine (name, JSON description).
std::vector<VelocityJump> experiment_velocity_jumps(
    const StepSignal& input, const std::vector<std::pair<std::string, Json>>& engines,
    double rate = 1000.0);

/// 0 -> 1 at t = 0, then back to 0 at t = 0.5, through simple, fir and
/// spline engines with d = 1 (smoothstep where an easing is needed).
std::vector<VelocityJump> experiment_velocity_jumps();
StepSignal interrupted_double_step();

struct EmergentAverageResult {
  double mean;
  double peak_to_peak;
  double min;
  double max;
};

/// Square wave (1 for the first duty * period of each period, else 0) over
/// 20 d, with statistics over the last 5 d sampled at `rate`. `d` is taken
/// from the engine's easing (or its "d").
EmergentAverageResult experiment_emergent_average(double period, const Json& engine,
                                                  double duty = 0.5, double rate = 1000.0);

struct OvershootResult {
  std::vector<Time> t;
  std::vector<double> y;
  double max_excursion;  // beyond [min(A, B), max(A, B)]
};

/// Additive mixing of an A -> B delta with easing of duration d1 and a
/// B -> A delta starting at `interrupt` with duration d2; each delta keeps
/// its own easing (smoothstep).
OvershootResult experiment_varying_easing_overshoot(double d1 = 2.0, double d2 = 0.2,
                                                    double interrupt = 0.1, double a = 0.0,
                                                    double b = 1.0, double rate = 1000.0);

struct SplineLimitResult {
  std::vector<double> T;
  std::vector<Eigen::Matrix2d> a_estimate;  // (A(T) - I) / T
  std::vector<Eigen::Vector2d> b_estimate;  // B(T) / T
  double final_value;
  double peak;
  Time peak_time;
};

/// First-order estimates of the spline-limit system at the given periods
/// and its RK4 unit-step response over `span` seconds at `rate`.
SplineLimitResult experiment_spline_limit(const std::vector<double>& periods = {1e-2, 1e-3, 1e-4},
                                          double rate = 1000.0, double span = 10.0);

}  // namespace animlab
