#include "animlab/apps/permutation.hpp"

#include <stdexcept>
#include <string>

namespace animlab {

PermutationScene::PermutationScene(std::vector<StepSignal> slots, ArcEasing kernel) {
  objects_.reserve(slots.size());
  for (auto& s : slots) {
    const double x0 = s.initial();
    objects_.push_back({std::move(s), {x0, kernel}, 0});
  }
}

PermutationScene::Object& PermutationScene::object_at(std::size_t object) {
  if (object >= objects_.size()) {
    throw std::out_of_range("unknown object " + std::to_string(object) + " (have " +
                            std::to_string(objects_.size()) + ")");
  }
  return objects_[object];
}

void PermutationScene::advance(Object& o, Time t) {
  const auto events = o.slots.events();
  while (o.next_event < events.size() && events[o.next_event].t <= t) {
    o.animator.retarget(events[o.next_event].t, events[o.next_event].value);
    ++o.next_event;
  }
}

Eigen::Vector2d PermutationScene::position(std::size_t object, Time t) {
  auto& o = object_at(object);
  advance(o, t);
  return o.animator.eval(t);
}

Eigen::Vector2d PermutationScene::velocity(std::size_t object, Time t) {
  auto& o = object_at(object);
  advance(o, t);
  return o.animator.velocity(t);
}

void PermutationScene::retarget(std::size_t object, Time t, double slot) {
  auto& o = object_at(object);
  advance(o, t);
  o.animator.retarget(t, slot);
}

Eigen::Vector2d permutation_position(PermutationScene& scene, std::size_t object, Time t) {
  return scene.position(object, t);
}

}  // namespace animlab
