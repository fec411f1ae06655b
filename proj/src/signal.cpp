#include "animlab/signal.hpp"

#include <algorithm>
#include <cmath>

namespace animlab {

StepSignal StepSignal::from_events(double initial, std::vector<StepEvent> events) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!std::isfinite(events[i].t)) {
      throw std::invalid_argument("non-finite time at index " + std::to_string(i));
    }
    if (i > 0 && !(events[i].t > events[i - 1].t)) {
      throw std::invalid_argument("non-increasing time at index " + std::to_string(i));
    }
  }
  StepSignal sig(initial);
  sig.events_ = std::move(events);
  return sig;
}

double StepSignal::operator()(Time t) const {
  // First event strictly after t; the one before it (if any) is active.
  auto it = std::upper_bound(events_.begin(), events_.end(), t,
                             [](Time lhs, const StepEvent& e) { return lhs < e.t; });
  if (it == events_.begin()) return initial_;
  return std::prev(it)->value;
}

double StepSignal::final_value() const {
  return events_.empty() ? initial_ : events_.back().value;
}

double step_eval(const StepSignal& sig, Time t) { return sig(t); }

SampledSignal sample(const std::function<double(Time)>& f, Time start, double rate,
                     std::size_t count) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("sample rate must be positive");
  }
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  SampledSignal out{start, rate, {}};
  out.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.samples.push_back(f(out.time_at(k)));
  return out;
}

void MonotoneClock::advance(Time t) {
  if (std::isnan(t)) throw TimeOrderError("time is NaN");
  if (t < now_) {
    throw TimeOrderError("time went backwards: " + std::to_string(t) + " < " +
                         std::to_string(now_));
  }
  now_ = t;
}

}  // namespace animlab
