#pragma once

#include <Eigen/Core>
#include <algorithm>

#include "animlab/easing.hpp"
#include "animlab/signal.hpp"

namespace animlab {

/// Cubic Hermite segment from (p0, dp0) at t = 0 to (p1, dp1) at t = 1.
/// `t` is clamped to [0, 1].
template <typename Scalar>
Scalar hermite(Scalar p0, Scalar dp0, Scalar p1, Scalar dp1, Scalar t) {
  t = std::clamp(t, Scalar(0), Scalar(1));
  const Scalar t2 = t * t;
  const Scalar t3 = t2 * t;
  return (Scalar(2) * t3 - Scalar(3) * t2 + Scalar(1)) * p0 + (t3 - Scalar(2) * t2 + t) * dp0 +
         (Scalar(-2) * t3 + Scalar(3) * t2) * p1 + (t3 - t2) * dp1;
}

/// d/dt of hermite(); zero outside [0, 1).
template <typename Scalar>
Scalar hermite_derivative(Scalar p0, Scalar dp0, Scalar p1, Scalar dp1, Scalar t) {
  if (t < Scalar(0) || t >= Scalar(1)) return Scalar(0);
  const Scalar t2 = t * t;
  return (Scalar(6) * t2 - Scalar(6) * t) * p0 + (Scalar(3) * t2 - Scalar(4) * t + Scalar(1)) * dp0 +
         (Scalar(-6) * t2 + Scalar(6) * t) * p1 + (Scalar(3) * t2 - Scalar(2) * t) * dp1;
}

/// One-step state transition of the unit-duration spline transition
/// algorithm sampled with period T: (y, y')[k+1] = A (y, y')[k] + B u[k].
template <typename Scalar>
struct SplineStepMatrices {
  Eigen::Matrix<Scalar, 2, 2> A;
  Eigen::Matrix<Scalar, 2, 1> B;
};

template <typename Scalar>
SplineStepMatrices<Scalar> spline_step_matrices(Scalar T) {
  const Scalar T2 = T * T;
  const Scalar T3 = T2 * T;
  SplineStepMatrices<Scalar> m;
  m.A << Scalar(2) * T3 - Scalar(3) * T2 + Scalar(1), T3 - Scalar(2) * T2 + T,
      Scalar(6) * T2 - Scalar(6) * T, Scalar(3) * T2 - Scalar(4) * T + Scalar(1);
  m.B << Scalar(-2) * T3 + Scalar(3) * T2, Scalar(-6) * T2 + Scalar(6) * T;
  return m;
}

/// Continuous limit of (A(T) - I)/T and B(T)/T as T -> 0.
template <typename Scalar = double>
SplineStepMatrices<Scalar> spline_limit_system() {
  SplineStepMatrices<Scalar> m;
  m.A << Scalar(0), Scalar(1), Scalar(-6), Scalar(-4);
  m.B << Scalar(0), Scalar(6);
  return m;
}

/// Unit-step response of the spline-limit system from rest, integrated with
/// fixed-step RK4 at `rate` and sampled on the same grid.
SampledSignal spline_limit_step_response(double rate, std::size_t count);

/// Restarts the easing from the current output on every retarget. Tracks a
/// single transition at a time.
class SimpleAnimator final : public Animator {
 public:
  SimpleAnimator(double x0, Easing easing);

  void retarget(Time t, double value) override;
  double eval(Time t) override;
  double velocity(Time t) override;

  double target() const { return target_; }

 private:
  double value_at(Time t) const;

  Easing easing_;
  MonotoneClock clock_;
  Time start_ = 0.0;
  double from_;
  double target_;
};

/// Starts a Hermite segment from the current position and velocity to the
/// new target (arriving at rest) on every retarget.
class SplineAnimator final : public Animator {
 public:
  /// `v0` is the velocity handed to the first segment.
  SplineAnimator(double x0, double v0, double duration);

  void retarget(Time t, double value) override;
  double eval(Time t) override;
  double velocity(Time t) override;

 private:
  double value_at(Time t) const;
  double velocity_at(Time t) const;

  double duration_;
  MonotoneClock clock_;
  bool started_ = false;
  Time start_ = 0.0;
  double p0_;
  double v0_;
  double p1_;
};

}  // namespace animlab
