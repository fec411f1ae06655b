#include "animlab/baseline.hpp"

#include <stdexcept>

#include "animlab/ode.hpp"

namespace animlab {

SampledSignal spline_limit_step_response(double rate, std::size_t count) {
  if (!(rate >= 100.0)) throw std::invalid_argument("spline limit integration needs rate >= 100");
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  const auto sys = spline_limit_system<double>();
  const Eigen::Vector2d Bu = sys.B * 1.0;
  const double h = 1.0 / rate;
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  SampledSignal out{0.0, rate, {}};
  out.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.samples.push_back(x(0));
    x = rk4_linear_step(sys.A, Bu, x, h);
  }
  return out;
}

SimpleAnimator::SimpleAnimator(double x0, Easing easing)
    : easing_(std::move(easing)), from_(x0), target_(x0) {}

double SimpleAnimator::value_at(Time t) const {
  if (t - start_ >= easing_.duration()) return target_;
  return from_ + easing_(t - start_) * (target_ - from_);
}

void SimpleAnimator::retarget(Time t, double value) {
  clock_.advance(t);
  from_ = value_at(t);
  start_ = t;
  target_ = value;
}

double SimpleAnimator::eval(Time t) {
  clock_.advance(t);
  return value_at(t);
}

double SimpleAnimator::velocity(Time t) {
  clock_.advance(t);
  return easing_.derivative(t - start_) * (target_ - from_);
}

SplineAnimator::SplineAnimator(double x0, double v0, double duration)
    : duration_(duration), p0_(x0), v0_(v0), p1_(x0) {
  if (!(duration > 0.0)) throw std::invalid_argument("spline duration must be positive");
}

double SplineAnimator::value_at(Time t) const {
  if (!started_) return p0_;
  // Slopes in normalized time carry a factor of d.
  return hermite(p0_, v0_ * duration_, p1_, 0.0, (t - start_) / duration_);
}

double SplineAnimator::velocity_at(Time t) const {
  if (!started_) return 0.0;
  return hermite_derivative(p0_, v0_ * duration_, p1_, 0.0, (t - start_) / duration_) /
         duration_;
}

void SplineAnimator::retarget(Time t, double value) {
  clock_.advance(t);
  if (started_) {
    const double p = value_at(t);
    v0_ = velocity_at(t);
    p0_ = p;
  }
  started_ = true;
  start_ = t;
  p1_ = value;
}

double SplineAnimator::eval(Time t) {
  clock_.advance(t);
  return value_at(t);
}

double SplineAnimator::velocity(Time t) {
  clock_.advance(t);
  return velocity_at(t);
}

}  // namespace animlab
