#include "animlab/apps/histogram.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace animlab {

StepSignal multiply(const StepSignal& a, const StepSignal& b) {
  std::vector<Time> times;
  for (const auto& e : a.events()) times.push_back(e.t);
  for (const auto& e : b.events()) times.push_back(e.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<StepEvent> events;
  events.reserve(times.size());
  for (Time t : times) events.push_back({t, a(t) * b(t)});
  return StepSignal::from_events(a.initial() * b.initial(), std::move(events));
}

HistogramPipeline::HistogramPipeline(std::vector<StepSignal> counts, StepSignal zoom,
                                     AnimatorFactory factory, Mode mode)
    : zoom_(std::move(zoom)), mode_(mode) {
  if (!factory) throw std::invalid_argument("histogram needs an animator factory");
  bins_.reserve(counts.size());
  for (auto& c : counts) {
    StepSignal input = mode == Mode::filter_count ? std::move(c) : multiply(zoom_, c);
    auto animator = factory(input.initial());
    if (!animator) throw std::invalid_argument("animator factory returned null");
    bins_.push_back({std::move(input), std::move(animator), 0});
  }
}

HistogramPipeline::Bin& HistogramPipeline::bin_at(std::size_t bin) {
  if (bin >= bins_.size()) {
    throw std::out_of_range("unknown bin " + std::to_string(bin) + " (have " +
                            std::to_string(bins_.size()) + ")");
  }
  return bins_[bin];
}

double HistogramPipeline::advance(Bin& b, Time t) {
  const auto events = b.input.events();
  while (b.next_event < events.size() && events[b.next_event].t <= t) {
    b.animator->retarget(events[b.next_event].t, events[b.next_event].value);
    ++b.next_event;
  }
  return b.animator->eval(t);
}

double HistogramPipeline::smoothed_count(std::size_t bin, Time t) {
  if (mode_ != Mode::filter_count) {
    throw std::logic_error("smoothed_count is only defined in filter_count mode");
  }
  return advance(bin_at(bin), t);
}

double HistogramPipeline::height(std::size_t bin, Time t) {
  const double y = advance(bin_at(bin), t);
  return mode_ == Mode::filter_count ? zoom_(t) * y : y;
}

double histogram_height(HistogramPipeline& p, std::size_t bin, Time t) { return p.height(bin, t); }

}  // namespace animlab
