#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "animlab/signal.hpp"

namespace animlab {

/// Continuous linear system x' = A x + B u, y = C x + D u. At most 8 states.
struct StateSpaceSystem {
  Eigen::MatrixXd A, B, C, D;

  StateSpaceSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d);

  Eigen::Index order() const { return A.rows(); }
  Eigen::Index inputs() const { return B.cols(); }
  Eigen::Index outputs() const { return C.rows(); }
  Eigen::VectorXcd poles() const;
  /// DC gain -C A^-1 B + D of a SISO system.
  double dc_gain() const;
};

struct SpringParams {
  double mass = 1.0;
  double stiffness = 1.0;
  double damping = 2.0;
};

/// m x'' = k (u - x) - c x', state (x, x').
StateSpaceSystem make_spring_system(const SpringParams& p);
/// x' = a (u - x).
StateSpaceSystem make_one_pole_system(double a);
/// `stages` one-pole systems in series.
StateSpaceSystem make_one_pole_cascade_system(double a, int stages);

/// Series connection: the output of `first` drives `second` (SISO).
StateSpaceSystem series(const StateSpaceSystem& first, const StateSpaceSystem& second);

/// Fixed-step RK4 of a SISO system driven by a step signal, input held at
/// its value at the start of each step. Samples y at start + k / rate.
SampledSignal simulate(const StateSpaceSystem& sys, const StepSignal& input, Time start,
                       double rate, std::size_t count);
SampledSignal simulate(const StateSpaceSystem& sys, const StepSignal& input, Time start,
                       double rate, std::size_t count, const Eigen::VectorXd& x0);

/// Unit-step response from rest.
SampledSignal step_response(const StateSpaceSystem& sys, double rate, std::size_t count);

/// Continuous impulse response C e^{At} B at t >= 0.
double impulse_response_at(const StateSpaceSystem& sys, double t);

/// Second-order section in Transposed Direct Form II. a0 is 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double z1 = 0.0, z2 = 0.0;

  double push(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }

  void reset() { z1 = z2 = 0.0; }
  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
  /// Sets the delay cells to the fixed point for a constant input x.
  void seed(double x);
  /// Largest pole magnitude.
  double pole_radius() const;
};

double biquad_push(Biquad& bq, double x);

/// Biquads in series.
class BiquadCascade {
 public:
  BiquadCascade() = default;
  explicit BiquadCascade(std::vector<Biquad> stages) : stages_(std::move(stages)) {}

  double push(double x) {
    for (auto& s : stages_) x = s.push(x);
    return x;
  }
  void reset();
  void seed(double x);
  double dc_gain() const;

  const std::vector<Biquad>& stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }

 private:
  std::vector<Biquad> stages_;
};

enum class Discretization { bilinear, impulse_invariant };

/// Rational transfer function of a section, coefficients in ascending powers
/// of s. Degrees at most 2.
struct AnalogSection {
  std::vector<double> num;
  std::vector<double> den;
};

/// Discretize one section. The result keeps its natural DC gain.
Biquad discretize(const AnalogSection& section, double rate, Discretization method);

/// Splits a SISO system into ceil(n/2) sections by pole pairing (conjugate
/// pairs together, real poles two at a time, an odd real pole alone),
/// discretizes each and rescales every section to unit DC gain.
BiquadCascade discretize(const StateSpaceSystem& sys, double rate, Discretization method);

/// Discrete IIR transition: targets go through every stage in order. The
/// first push seeds all stages at rest on that target.
class IirAnimator final : public DiscreteAnimator {
 public:
  explicit IirAnimator(BiquadCascade cascade) : cascade_(std::move(cascade)) {}

  double push(double target) override;

 private:
  BiquadCascade cascade_;
  bool primed_ = false;
};

}  // namespace animlab
