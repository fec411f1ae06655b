#include "animlab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "animlab/baseline.hpp"

namespace animlab {

InterruptionLimitResult experiment_interruption_limit(const std::vector<int>& n_values,
                                                      const Easing& easing) {
  InterruptionLimitResult r;
  if (easing.derivative(0.0) != 0.0) {
    r.warning = "easing '" + easing.name() +
                "' has nonzero initial slope; the interruption limit does not apply";
  }
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const double step = easing(1.0 / n);
    const double x0 = 0.0;
    double y = x0;
    double sup = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double x = (i % 2 == 1) ? 1.0 : 0.0;
      y += step * (x - y);
      sup = std::max(sup, std::abs(y - x0));
    }
    r.n.push_back(n);
    r.deviation.push_back(sup);
  }
  return r;
}

std::vector<VelocityJump> experiment_velocity_jumps(
    const StepSignal& input, const std::vector<std::pair<std::string, Json>>& engines,
    double rate) {
  std::vector<VelocityJump> out;
  for (const auto& [name, j] : engines) {
    auto engine = make_engine(j, input.initial(), rate);
    double worst = 0.0;
    for (const auto& e : input.events()) {
      const double before = engine.animator->velocity(e.t);
      engine.animator->retarget(e.t, e.value);
      const double after = engine.animator->velocity(e.t);
      worst = std::max(worst, std::abs(after - before));
    }
    out.push_back({name, worst});
  }
  return out;
}

StepSignal interrupted_double_step() { return StepSignal::from_events(0.0, {{0.0, 1.0}, {0.5, 0.0}}); }

std::vector<VelocityJump> experiment_velocity_jumps() {
  const Json easing = {{"kind", "smoothstep"}, {"d", 1.0}};
  return experiment_velocity_jumps(interrupted_double_step(),
                                   {{"simple", {{"kind", "simple"}, {"easing", easing}}},
                                    {"fir", {{"kind", "fir"}, {"easing", easing}}},
                                    {"spline", {{"kind", "spline"}, {"d", 1.0}}}});
}

namespace {

double engine_duration(const Json& engine) {
  if (engine.contains("easing") && engine.at("easing").is_object()) {
    return engine.at("easing").value("d", 1.0);
  }
  return engine.value("d", 1.0);
}

}  // namespace

EmergentAverageResult experiment_emergent_average(double period, const Json& engine, double duty,
                                                  double rate) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  if (!(duty > 0.0 && duty < 1.0)) throw std::invalid_argument("duty must be in (0, 1)");
  const double d = engine_duration(engine);
  const double span = 20.0 * d;
  auto e = make_engine(engine, 0.0, rate);

  std::vector<StepEvent> edges;
  for (double start = 0.0; start < span; start += period) {
    edges.push_back({start, 1.0});
    if (start + duty * period < span) edges.push_back({start + duty * period, 0.0});
  }

  const auto count = static_cast<std::size_t>(std::floor(span * rate + 1e-9)) + 1;
  const double window = span - 5.0 * d;
  std::size_t next = 0;
  double sum = 0.0;
  std::size_t samples = 0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t k = 0; k < count; ++k) {
    const Time t = static_cast<double>(k) / rate;
    while (next < edges.size() && edges[next].t <= t) {
      e.animator->retarget(edges[next].t, edges[next].value);
      ++next;
    }
    const double y = e.animator->eval(t);
    if (t >= window - 1e-12) {
      sum += y;
      ++samples;
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  return {sum / static_cast<double>(samples), hi - lo, lo, hi};
}

OvershootResult experiment_varying_easing_overshoot(double d1, double d2, double interrupt,
                                                    double a, double b, double rate) {
  const Easing s1 = make_smoothstep(d1);
  const Easing s2 = make_smoothstep(d2);
  OvershootResult r;
  const double span = std::max(d1, interrupt + d2) * 1.25;
  const auto count = static_cast<std::size_t>(std::floor(span * rate + 1e-9)) + 1;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  r.max_excursion = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const Time t = static_cast<double>(k) / rate;
    const double y = a + s1(t) * (b - a) + s2(t - interrupt) * (a - b);
    r.t.push_back(t);
    r.y.push_back(y);
    r.max_excursion = std::max({r.max_excursion, y - hi, lo - y});
  }
  return r;
}

SplineLimitResult experiment_spline_limit(const std::vector<double>& periods, double rate,
                                          double span) {
  SplineLimitResult r;
  for (double T : periods) {
    const auto m = spline_step_matrices(T);
    r.T.push_back(T);
    r.a_estimate.push_back((m.A - Eigen::Matrix2d::Identity()) / T);
    r.b_estimate.push_back(m.B / T);
  }
  const auto count = static_cast<std::size_t>(std::floor(span * rate + 1e-9)) + 1;
  const auto step = spline_limit_step_response(rate, count);
  const auto peak = std::max_element(step.samples.begin(), step.samples.end());
  r.peak = *peak;
  r.peak_time = step.time_at(static_cast<std::size_t>(peak - step.samples.begin()));
  r.final_value = step.samples.back();
  return r;
}

}  // namespace animlab
