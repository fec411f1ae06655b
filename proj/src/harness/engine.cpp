#include "animlab/harness/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "animlab/baseline.hpp"
#include "animlab/fir.hpp"

namespace animlab {

std::string to_string(VelocityMethod m) {
  switch (m) {
    case VelocityMethod::analytic:
      return "analytic";
    case VelocityMethod::central_difference:
      return "central-difference";
    case VelocityMethod::backward_difference:
      return "backward-difference";
  }
  return "unknown";
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Easing parse_easing(const Json& j, double default_duration) {
  if (j.is_string()) return parse_easing(Json{{"kind", j}}, default_duration);
  const auto kind = require(j, "kind").get<std::string>();
  const double d = get_or(j, "d", default_duration);
  if (kind == "smoothstep") return make_smoothstep(d);
  if (kind == "linear") return make_linear(d);
  if (kind == "bspline") return make_easing(easing_kind::BSpline{get_or(j, "order", 3)}, d);
  if (kind == "one_pole_cascade") {
    easing_kind::OnePoleCascade c;
    if (j.contains("a")) c.a = j.at("a").get<double>();
    c.stages = get_or(j, "stages", 4);
    return make_easing(c, d);
  }
  throw std::invalid_argument("unknown easing kind '" + kind + "'");
}

StateSpaceSystem parse_system(const Json& j) {
  const auto type = require(j, "type").get<std::string>();
  if (type == "spring") {
    SpringParams p;
    p.mass = get_or(j, "mass", p.mass);
    p.stiffness = get_or(j, "stiffness", p.stiffness);
    p.damping = get_or(j, "damping", p.damping);
    return make_spring_system(p);
  }
  if (type == "one_pole") return make_one_pole_system(require(j, "a").get<double>());
  if (type == "one_pole_cascade") {
    return make_one_pole_cascade_system(require(j, "a").get<double>(), get_or(j, "stages", 4));
  }
  throw std::invalid_argument("unknown system type '" + type + "'");
}

Discretization parse_discretization(const std::string& name) {
  if (name == "bilinear") return Discretization::bilinear;
  if (name == "impulse_invariant") return Discretization::impulse_invariant;
  throw std::invalid_argument("unknown discretization '" + name + "'");
}

SampledDiscreteAnimator::SampledDiscreteAnimator(std::unique_ptr<DiscreteAnimator> inner,
                                                 double x0, double rate)
    : inner_(std::move(inner)), rate_(rate), target_(x0) {
  if (!inner_) throw std::invalid_argument("discrete animator is null");
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  // Prime the history at rest on x0, so a retarget at t = 0 is a transition.
  last_ = previous_ = inner_->push(x0);
}

void SampledDiscreteAnimator::run_until(long long tick) {
  while (ticks_ < tick) {
    previous_ = last_;
    last_ = inner_->push(target_);
    ++ticks_;
  }
}

void SampledDiscreteAnimator::retarget(Time t, double value) {
  clock_.advance(t);
  // Ticks strictly before t still see the old target.
  run_until(static_cast<long long>(std::ceil(t * rate_ - 1e-9)));
  target_ = value;
}

double SampledDiscreteAnimator::eval(Time t) {
  clock_.advance(t);
  run_until(static_cast<long long>(std::floor(t * rate_ + 1e-9)) + 1);
  return last_;
}

double SampledDiscreteAnimator::velocity(Time t) {
  clock_.advance(t);
  run_until(static_cast<long long>(std::floor(t * rate_ + 1e-9)) + 1);
  return (last_ - previous_) * rate_;
}

Engine make_engine(const Json& j, double x0, double rate) {
  const auto kind = require(j, "kind").get<std::string>();
  if (kind == "simple") {
    Easing e = parse_easing(require(j, "easing"));
    const auto method = e.has_closed_form_derivative() ? VelocityMethod::analytic
                                                       : VelocityMethod::central_difference;
    return {std::make_unique<SimpleAnimator>(x0, std::move(e)), method};
  }
  if (kind == "spline") {
    return {std::make_unique<SplineAnimator>(x0, get_or(j, "v0", 0.0), get_or(j, "d", 1.0)),
            VelocityMethod::analytic};
  }
  if (kind == "fir") {
    Easing e = parse_easing(require(j, "easing"));
    if (get_or(j, "discrete", false)) {
      auto inner = std::make_unique<FirDiscreteAnimator>(fir_coeffs_from_easing(e, rate));
      return {std::make_unique<SampledDiscreteAnimator>(std::move(inner), x0, rate),
              VelocityMethod::backward_difference};
    }
    const auto method = e.has_closed_form_derivative() ? VelocityMethod::analytic
                                                       : VelocityMethod::central_difference;
    return {std::make_unique<FirAnimator>(x0, std::move(e)), method};
  }
  if (kind == "iir") {
    const auto sys = parse_system(require(j, "system"));
    const auto method = parse_discretization(get_or<std::string>(j, "method", "bilinear"));
    auto inner = std::make_unique<IirAnimator>(discretize(sys, rate, method));
    return {std::make_unique<SampledDiscreteAnimator>(std::move(inner), x0, rate),
            VelocityMethod::backward_difference};
  }
  throw std::invalid_argument("unknown engine kind '" + kind + "'");
}

}  // namespace animlab
