#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace animlab {

/// Seconds on the animation clock.
using Time = double;

struct StepEvent {
  Time t;
  double value;
};

/// Piecewise-constant, right-continuous target signal: `initial` until the
/// first event, then each event's value on [t_i, t_{i+1}).
class StepSignal {
 public:
  StepSignal() = default;
  explicit StepSignal(double initial) : initial_(initial) {}

  /// Throws std::invalid_argument naming the first event whose time does not
  /// strictly exceed its predecessor's.
  static StepSignal from_events(double initial, std::vector<StepEvent> events);

  double operator()(Time t) const;

  double initial() const { return initial_; }
  std::span<const StepEvent> events() const { return events_; }
  bool empty() const { return events_.empty(); }

  /// Value of the last event, or the initial value if there are none.
  double final_value() const;

 private:
  double initial_ = 0.0;
  std::vector<StepEvent> events_;
};

double step_eval(const StepSignal& sig, Time t);

struct SampledSignal {
  Time start = 0.0;
  double rate = 1.0;
  std::vector<double> samples;

  double period() const { return 1.0 / rate; }
  Time time_at(std::size_t k) const { return start + static_cast<double>(k) / rate; }
  std::size_t size() const { return samples.size(); }
};

/// samples[k] = f(start + k / rate).
SampledSignal sample(const std::function<double(Time)>& f, Time start, double rate,
                     std::size_t count);

/// Raised when an animator is driven backwards in time.
class TimeOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Enforces the animator time contract: every call must carry a time no
/// earlier than the previous one.
class MonotoneClock {
 public:
  void advance(Time t);
  Time now() const { return now_; }

 private:
  Time now_ = -std::numeric_limits<double>::infinity();
};

/// Continuous-time animator. Calls must arrive with non-decreasing time; an
/// earlier time raises TimeOrderError.
class Animator {
 public:
  virtual ~Animator() = default;

  virtual void retarget(Time t, double value) = 0;
  virtual double eval(Time t) = 0;
  virtual double velocity(Time t) = 0;
};

/// Discrete-time animator: one target in, one output out per tick.
class DiscreteAnimator {
 public:
  virtual ~DiscreteAnimator() = default;
  virtual double push(double target) = 0;
};

}  // namespace animlab
