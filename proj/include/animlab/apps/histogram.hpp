#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "animlab/signal.hpp"

namespace animlab {

/// Builds a fresh animator resting at x0.
using AnimatorFactory = std::function<std::unique_ptr<Animator>(double x0)>;

/// Animated histogram bars under a zoom factor z(t).
///
/// filter_count smooths each bin's count and multiplies by z afterwards, so
/// zooming is instant. filter_height smooths z * count instead, which is the
/// ordering that drags zoom changes through the transition.
class HistogramPipeline {
 public:
  enum class Mode { filter_count, filter_height };

  HistogramPipeline(std::vector<StepSignal> counts, StepSignal zoom, AnimatorFactory factory,
                    Mode mode = Mode::filter_count);

  /// Queries for one bin must come with non-decreasing t.
  double height(std::size_t bin, Time t);
  double smoothed_count(std::size_t bin, Time t);

  std::size_t bins() const { return bins_.size(); }
  Mode mode() const { return mode_; }
  double zoom(Time t) const { return zoom_(t); }

 private:
  struct Bin {
    StepSignal input;  // count, or z * count in filter_height mode
    std::unique_ptr<Animator> animator;
    std::size_t next_event = 0;
  };

  Bin& bin_at(std::size_t bin);
  double advance(Bin& b, Time t);

  StepSignal zoom_;
  Mode mode_;
  std::vector<Bin> bins_;
};

double histogram_height(HistogramPipeline& p, std::size_t bin, Time t);

/// Product of two step signals, with a breakpoint at every event of either.
StepSignal multiply(const StepSignal& a, const StepSignal& b);

}  // namespace animlab
