#pragma once

#include <memory>
#include <string>

#include "animlab/easing.hpp"
#include "animlab/iir.hpp"
#include "animlab/signal.hpp"
#include "json.hpp"

namespace animlab {

using Json = nlohmann::ordered_json;

enum class VelocityMethod { analytic, central_difference, backward_difference };

std::string to_string(VelocityMethod m);

/// {"kind": "smoothstep" | "linear" | "bspline" | "one_pole_cascade", "d": s,
///  "order": n, "a": rate, "stages": n}. `d` defaults to `default_duration`.
Easing parse_easing(const Json& j, double default_duration = 1.0);

/// {"type": "spring", "mass", "stiffness", "damping"} |
/// {"type": "one_pole", "a"} | {"type": "one_pole_cascade", "a", "stages"}.
StateSpaceSystem parse_system(const Json& j);

Discretization parse_discretization(const std::string& name);

/// Presents a DiscreteAnimator ticking at k / rate as a continuous Animator.
/// A retarget at t takes effect from the first tick at or after t; eval
/// holds the latest tick's output; velocity is the backward difference of
/// consecutive ticks.
class SampledDiscreteAnimator final : public Animator {
 public:
  SampledDiscreteAnimator(std::unique_ptr<DiscreteAnimator> inner, double x0, double rate);

  void retarget(Time t, double value) override;
  double eval(Time t) override;
  double velocity(Time t) override;

 private:
  /// Pushes ticks until `tick` ticks have been pushed.
  void run_until(long long tick);

  std::unique_ptr<DiscreteAnimator> inner_;
  double rate_;
  MonotoneClock clock_;
  double target_;
  long long ticks_ = 0;  // ticks already pushed
  double last_ = 0.0;
  double previous_ = 0.0;
};

struct Engine {
  std::unique_ptr<Animator> animator;
  VelocityMethod velocity_method;
};

/// Builds an engine resting at x0 from its JSON description:
///   {"kind": "simple", "easing": {...}}
///   {"kind": "spline", "d": s, "v0": v}
///   {"kind": "fir", "easing": {...}, "discrete": bool}
///   {"kind": "iir", "system": {...}, "method": "bilinear" | "impulse_invariant"}
/// `rate` is the tick rate of discrete engines.
Engine make_engine(const Json& j, double x0, double rate);

}  // namespace animlab
