#pragma once

#include <Eigen/Core>
#include <vector>

#include "animlab/arc.hpp"
#include "animlab/fir.hpp"
#include "animlab/signal.hpp"

namespace animlab {

/// Default ellipse aspect for arc diagrams. Not derived from anything; pick
/// per scene.
inline constexpr double kDefaultArcAspect = 0.5;

/// Objects in a row of slots. Each object's slot index is a step signal and
/// moves along a half-ellipse arc: x interpolates the slots and y is the arc
/// excursion, whose side flips with the direction of travel.
class PermutationScene {
 public:
  PermutationScene(std::vector<StepSignal> slots, ArcEasing kernel);

  /// Queries for one object must come with non-decreasing t.
  Eigen::Vector2d position(std::size_t object, Time t);
  Eigen::Vector2d velocity(std::size_t object, Time t);

  /// Live retarget, on top of the scheduled events.
  void retarget(std::size_t object, Time t, double slot);

  std::size_t size() const { return objects_.size(); }

 private:
  struct Object {
    StepSignal slots;
    FirStepAnimator<Eigen::Vector2d, double, ArcEasing> animator;
    std::size_t next_event = 0;
  };

  Object& object_at(std::size_t object);
  void advance(Object& o, Time t);

  std::vector<Object> objects_;
};

Eigen::Vector2d permutation_position(PermutationScene& scene, std::size_t object, Time t);

}  // namespace animlab
