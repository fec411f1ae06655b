#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "animlab/signal.hpp"

namespace animlab {

/// Unit-interval curve primitives, templated on the scalar so they can be
/// evaluated with any floating type.
namespace curves {

template <typename Scalar>
Scalar smoothstep(Scalar u) {
  return u * u * (Scalar(3) - Scalar(2) * u);
}

template <typename Scalar>
Scalar smoothstep_derivative(Scalar u) {
  return Scalar(6) * u * (Scalar(1) - u);
}

/// CDF of the sum of `n` independent U(0,1) variables (Irwin-Hall), i.e. the
/// step response of n unit boxes in series. Uses the symmetry
/// F(x) = 1 - F(n - x) so that the alternating sum is only ever taken over
/// the left half of the support.
double irwin_hall_cdf(int n, double x);
double irwin_hall_pdf(int n, double x);

/// Step response of n cascaded one-pole stages x' = (u - x) at time x
/// (Erlang CDF with unit rate).
double erlang_cdf(int n, double x);
double erlang_pdf(int n, double x);

}  // namespace curves

/// A duration-d transition curve s with s(t) = 0 for t <= 0 and s(t) = 1 for
/// t >= d. Immutable; copies share the underlying closures.
class Easing {
 public:
  using Curve = std::function<double(double)>;

  /// `value` and `derivative` are only ever called on [0, d). Leave
  /// `derivative` empty to fall back to central differences.
  Easing(std::string name, double duration, Curve value, Curve derivative = {});

  double operator()(Time t) const;
  /// Right derivative: zero for t < 0 and t >= d.
  double derivative(Time t) const;

  double duration() const { return duration_; }
  double terminal() const { return 1.0; }
  const std::string& name() const { return name_; }
  bool has_closed_form_derivative() const { return static_cast<bool>(derivative_); }

 private:
  std::string name_;
  double duration_;
  Curve value_;
  Curve derivative_;
};

namespace easing_kind {
struct Smoothstep {};
/// Step response of `order` box filters of width d/order in series.
struct BSpline {
  int order = 1;
};
/// Step response of `stages` one-pole low-pass stages with pole rate `a`,
/// truncated at d and rescaled so s(d) = 1. Without `a`, the rate is chosen
/// so the untruncated response has reached 1 - 1e-4 at d.
struct OnePoleCascade {
  std::optional<double> a;
  int stages = 4;
};
}  // namespace easing_kind

using EasingKind =
    std::variant<easing_kind::Smoothstep, easing_kind::BSpline, easing_kind::OnePoleCascade>;

Easing make_easing(const EasingKind& kind, double duration);

inline Easing make_smoothstep(double duration) {
  return make_easing(easing_kind::Smoothstep{}, duration);
}
/// Linear ramp; same curve as a first-order B-spline.
Easing make_linear(double duration);

/// Default reach of the untruncated one-pole cascade at the cut-off time.
inline constexpr double kOnePoleReach = 1.0 - 1e-4;

/// Pole rate a such that the n-stage cascade's step response hits `reach`
/// at time `duration`.
double one_pole_cascade_rate(int stages, double duration, double reach = kOnePoleReach);

double eval_easing(const Easing& e, Time t);
double easing_derivative(const Easing& e, Time t);

/// w o s. `w` must be nondecreasing on [0,1] with w(0) = 0 and w(1) = 1.
/// Without `dw` the derivative falls back to central differences.
Easing warp_easing(const Easing& e, std::function<double(double)> w,
                   std::function<double(double)> dw = {});

}  // namespace animlab
