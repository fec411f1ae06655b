#pragma once

#include <Eigen/Core>
#include <concepts>
#include <deque>
#include <span>
#include <type_traits>
#include <vector>

#include "animlab/easing.hpp"
#include "animlab/signal.hpp"

namespace animlab {

/// A step response usable by FirStepAnimator: value, right derivative and
/// terminal value of a curve that is constant outside [0, duration].
template <typename K>
concept StepKernel = requires(const K& k, Time t) {
  { k.duration() } -> std::convertible_to<double>;
  k(t);
  k.derivative(t);
  k.terminal();
};

namespace detail {
template <typename T>
T zero_value() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    return T::Zero();
  }
}
}  // namespace detail

/// Continuous-time FIR transitions for step input:
///   y(t) = s(inf) x0 + sum_i s(t - t_i) (x_i - x_{i-1}).
/// Keeps a queue of in-flight transitions; a transition older than the
/// kernel duration is folded into the settled base.
///
/// With a matrix-valued kernel (e.g. ArcEasing) the input is scalar and the
/// output a vector; with a scalar Easing and vector Input the easing scales
/// each delta.
template <typename Output, typename Input = double, StepKernel Kernel = Easing>
class FirStepAnimator {
 public:
  FirStepAnimator(Input x0, Kernel kernel, bool prune = true)
      : kernel_(std::move(kernel)),
        base_(Output(kernel_.terminal() * x0)),
        last_target_(x0),
        prune_(prune) {}

  /// The delta is taken against the previous target, not the current output.
  void retarget(Time t, Input value) {
    clock_.advance(t);
    prune(t);
    queue_.push_back({t, Input(value - last_target_)});
    last_target_ = value;
  }

  Output eval(Time t) {
    clock_.advance(t);
    prune(t);
    Output y = base_;
    for (const auto& tr : queue_) y += Output(kernel_(t - tr.start) * tr.delta);
    return y;
  }

  Output velocity(Time t) {
    clock_.advance(t);
    prune(t);
    Output v = detail::zero_value<Output>();
    for (const auto& tr : queue_) v += Output(kernel_.derivative(t - tr.start) * tr.delta);
    return v;
  }

  std::size_t in_flight() const { return queue_.size(); }
  const Input& target() const { return last_target_; }
  const Kernel& kernel() const { return kernel_; }

 private:
  struct Transition {
    Time start;
    Input delta;
  };

  void prune(Time t) {
    if (!prune_) return;
    bool pruned = false;
    while (!queue_.empty() && t - queue_.front().start >= kernel_.duration()) {
      base_ += Output(kernel_.terminal() * queue_.front().delta);
      queue_.pop_front();
      pruned = true;
    }
    // Settled: the telescoped sum equals the last target in exact arithmetic.
    if (pruned && queue_.empty()) base_ = Output(kernel_.terminal() * last_target_);
  }

  Kernel kernel_;
  MonotoneClock clock_;
  Output base_;
  Input last_target_;
  std::deque<Transition> queue_;
  bool prune_;
};

/// Scalar FIR step animator behind the polymorphic Animator interface.
class FirAnimator final : public Animator {
 public:
  FirAnimator(double x0, Easing easing, bool prune = true) : impl_(x0, std::move(easing), prune) {}

  void retarget(Time t, double value) override { impl_.retarget(t, value); }
  double eval(Time t) override { return impl_.eval(t); }
  double velocity(Time t) override { return impl_.velocity(t); }
  std::size_t in_flight() const { return impl_.in_flight(); }

 private:
  FirStepAnimator<double> impl_;
};

struct FirCoefficients {
  double rate = 0.0;
  std::vector<double> taps;

  double sum() const;
};

/// Impulse-invariant taps h[k] = s'((k + 1/2) / rate) / rate for
/// k < ceil(d * rate), rescaled to sum to one. Requires d * rate >= 2.
FirCoefficients fir_coeffs_from_easing(const Easing& e, double rate);

/// Streaming direct-form FIR filter over a ring buffer of the last K inputs.
class FirFilter {
 public:
  enum class ColdStart {
    /// History starts filled with the first input (animator behaviour).
    hold_first,
    /// History starts at zero (plain filter behaviour).
    zeros,
  };

  explicit FirFilter(FirCoefficients coeffs, ColdStart cold = ColdStart::hold_first);

  double push(double x);
  void reset();

  const FirCoefficients& coefficients() const { return coeffs_; }

 private:
  FirCoefficients coeffs_;
  ColdStart cold_;
  std::vector<double> history_;
  std::size_t head_ = 0;  // slot holding the newest input
  bool primed_ = false;
};

double fir_discrete_push(FirFilter& state, double target);

class FirDiscreteAnimator final : public DiscreteAnimator {
 public:
  explicit FirDiscreteAnimator(FirCoefficients coeffs)
      : filter_(std::move(coeffs), FirFilter::ColdStart::hold_first) {}
  double push(double target) override { return filter_.push(target); }

 private:
  FirFilter filter_;
};

/// Reference output (s' * x)(t) on `grid`, by adaptive quadrature of
/// int_0^d s'(tau) x(t - tau) dtau split at the input's jump points.
std::vector<double> convolve_oracle(const StepSignal& x, const Easing& e,
                                    std::span<const Time> grid, double abs_tol = 1e-9);

}  // namespace animlab
