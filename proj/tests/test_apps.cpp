#include <algorithm>
#include <map>
#include <random>

#include "animlab/apps/histogram.hpp"
#include "animlab/apps/permutation.hpp"
#include "animlab/apps/textdoc.hpp"
#include "animlab/fir.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace animlab;

namespace {

AnimatorFactory smooth_fir(double d) {
  return [d](double x0) { return std::make_unique<FirAnimator>(x0, make_smoothstep(d)); };
}

}  // namespace

// ---- histogram ------------------------------------------------------------

TEST_CASE("histogram examples") {
  const auto counts = StepSignal::from_events(4.0, {{1.0, 8.0}});
  const auto zoom = StepSignal::from_events(1.0, {{3.0, 2.0}});
  HistogramPipeline p({counts}, zoom, smooth_fir(1.0));
  CHECK(histogram_height(p, 0, 1.5) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(histogram_height(p, 0, 2.9999) == 8.0);
  CHECK(histogram_height(p, 0, 3.0) == 16.0);
  CHECK_THROWS_AS(histogram_height(p, 1, 3.0), std::out_of_range);
  CHECK(p.bins() == 1);

  HistogramPipeline constant({StepSignal(5.0)},
                             StepSignal::from_events(1.0, {{0.3, 3.0}, {0.7, 0.25}}),
                             smooth_fir(1.0));
  for (double t = 0.0; t < 1.5; t += 0.01) CHECK(constant.height(0, t) == constant.zoom(t) * 5.0);

  HistogramPipeline smoothed_height({counts}, zoom, smooth_fir(1.0),
                                    HistogramPipeline::Mode::filter_height);
  CHECK_THROWS_AS(smoothed_height.smoothed_count(0, 0.0), std::logic_error);
}

TEST_CASE("multiply") {
  const auto a = StepSignal::from_events(2.0, {{1.0, 3.0}});
  const auto b = StepSignal::from_events(5.0, {{0.5, 7.0}, {1.0, 1.0}});
  const auto c = multiply(a, b);
  CHECK(c(0.0) == 10.0);
  CHECK(c(0.5) == 14.0);
  CHECK(c(1.0) == 3.0);
  CHECK(c.events().size() == 2);
}

TEST_CASE("property: histogram commutation") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StepSignal> bins;
    for (int b = 0; b < 4; ++b) {
      auto ev = oracle::random_events(rng, 10.0, 0.05, 12, 0.0, 50.0);
      std::vector<StepEvent> events;
      for (const auto& e : ev) events.push_back({e.t, e.value});
      bins.push_back(StepSignal::from_events(10.0, events));
    }
    const StepSignal z(2.5);
    HistogramPipeline count_first(bins, z, smooth_fir(0.7));
    HistogramPipeline height_first(bins, z, smooth_fir(0.7), HistogramPipeline::Mode::filter_height);
    for (double t = 0.0; t <= 12.0; t += 1.0 / 60) {
      for (std::size_t b = 0; b < 4; ++b) {
        CHECK(std::abs(count_first.height(b, t) - height_first.height(b, t)) <= 1e-9);
      }
    }
  }

  // zooming while counts change: the orderings disagree
  const auto counts = StepSignal::from_events(10.0, {{1.0, 20.0}});
  const auto zoom = StepSignal::from_events(1.0, {{1.2, 3.0}});
  HistogramPipeline count_first({counts}, zoom, smooth_fir(1.0));
  HistogramPipeline height_first({counts}, zoom, smooth_fir(1.0),
                                 HistogramPipeline::Mode::filter_height);
  double diff = 0.0;
  for (double t = 0.0; t <= 3.0; t += 1.0 / 60) {
    diff = std::max(diff, std::abs(count_first.height(0, t) - height_first.height(0, t)));
  }
  CHECK(diff > 0.1);
}

// ---- permutation ----------------------------------------------------------

TEST_CASE("permutation examples") {
  const double d = 1.0;
  {
    PermutationScene s({StepSignal(3.0)}, ArcEasing(kDefaultArcAspect, make_smoothstep(1.0), d));
    const auto p = permutation_position(s, 0, 5.0);
    CHECK(p == Eigen::Vector2d(3, 0));
    CHECK_THROWS_AS(s.position(1, 5.0), std::out_of_range);
  }
  PermutationScene swap({StepSignal::from_events(0.0, {{1.0, 1.0}}),
                         StepSignal::from_events(1.0, {{1.0, 0.0}})},
                        ArcEasing(1.0, make_linear(1.0), d));
  const auto a = swap.position(0, 1.0 + d / 2);
  const auto b = swap.position(1, 1.0 + d / 2);
  CHECK(std::abs(a.x() - 0.5) <= 1e-6);
  CHECK(std::abs(a.y() + 0.5) <= 1e-6);
  CHECK(std::abs(b.x() - 0.5) <= 1e-6);
  CHECK(std::abs(b.y() - 0.5) <= 1e-6);
  CHECK(swap.position(0, 1.0 + d) == Eigen::Vector2d(1, 0));
  CHECK(swap.position(1, 1.0 + d) == Eigen::Vector2d(0, 0));
}

TEST_CASE("property: permutation is velocity-continuous under re-permutation") {
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<int> slot(0, 7);
  std::uniform_real_distribution<double> gap(0.05, 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StepEvent> events;
    double t = 0.0;
    for (int k = 0; k < 6; ++k) {
      t += gap(rng);
      events.push_back({t, static_cast<double>(slot(rng))});
    }
    PermutationScene s({StepSignal::from_events(0.0, events)},
                       ArcEasing(kDefaultArcAspect, make_easing(easing_kind::OnePoleCascade{}, 1.0), 0.8));
    for (const auto& e : events) {
      const auto before = s.velocity(0, e.t - 1e-9);
      const auto p_before = s.position(0, e.t - 1e-9);
      const auto after = s.velocity(0, e.t);
      const auto p_after = s.position(0, e.t);
      CHECK((after - before).norm() <= 1e-5);
      CHECK((p_after - p_before).norm() <= 1e-6);
    }
  }
}

TEST_CASE("permutation live retarget") {
  PermutationScene s({StepSignal(0.0)}, ArcEasing(1.0, make_smoothstep(1.0), 1.0));
  s.retarget(0, 0.5, 4.0);
  CHECK(s.position(0, 0.5) == Eigen::Vector2d(0, 0));
  CHECK(s.position(0, 1.5) == Eigen::Vector2d(4, 0));
}

// ---- text documents -------------------------------------------------------

namespace {

std::string ordered_glyphs(const DocumentHistory& h, const std::vector<CharId>& order) {
  std::string s;
  for (CharId id : order) s += h.glyph(id);
  return s;
}

std::size_t index_of(const std::vector<CharId>& order, CharId id) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
}

}  // namespace

TEST_CASE("total_order examples") {
  DocumentHistory ab("AB");
  ab.commit({EditOp::insert(1, "C")});
  CHECK(ab.text(1) == "ACB");
  CHECK(ordered_glyphs(ab, total_order(ab)) == "ACB");

  // X is replaced by Y in one revision: Y < X
  DocumentHistory rep("aXb");
  rep.commit({EditOp::erase(1, 1), EditOp::insert(1, "Y")});
  CHECK(rep.text(1) == "aYb");
  CHECK(ordered_glyphs(rep, total_order(rep)) == "aYXb");

  // new text goes after older tombstones in the same gap
  DocumentHistory old("aXb");
  old.commit({EditOp::erase(1, 1)});
  old.commit({EditOp::insert(1, "Y")});
  CHECK(ordered_glyphs(old, total_order(old)) == "aXYb");

  auto bad = DocumentHistory::from_snapshots({'a', 'b'}, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(total_order(bad), std::invalid_argument);
  CHECK_THROWS(DocumentHistory::from_snapshots({'a', 'b'}, {{0, 1}, {1}, {0, 1}}));
  CHECK_THROWS(DocumentHistory::from_snapshots({'a'}, {{0, 0}}));
  CHECK_THROWS(DocumentHistory::from_snapshots({'a'}, {{1}}));
}

TEST_CASE("property: total_order against a pairwise oracle") {
  std::mt19937_64 rng(87);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = gen::random_history(rng);
    const auto order = total_order(h);
    const auto records = h.records();

    // strict total order: a permutation of every character that ever appeared
    std::vector<CharId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.size() == records.size());

    // pairwise: coexisting characters keep their on-screen order
    std::map<std::pair<CharId, CharId>, bool> before;
    for (std::size_t r = 0; r < h.revisions(); ++r) {
      const auto& snap = h.snapshot(r);
      for (std::size_t i = 0; i < snap.size(); ++i) {
        for (std::size_t j = i + 1; j < snap.size(); ++j) before[{snap[i], snap[j]}] = true;
      }
    }
    for (const auto& [pair, _] : before) {
      CHECK_FALSE(before.count({pair.second, pair.first}));
      CHECK(index_of(order, pair.first) < index_of(order, pair.second));
    }
  }
}

TEST_CASE("ghost_position") {
  DocumentHistory h("ABC");
  h.commit({EditOp::erase(1, 1)});
  h.commit({EditOp::erase(1, 1)});
  const auto order = total_order(h);
  const auto l1 = plain_layout(h, 1);
  CHECK(ghost_position(order, l1, 0) == Eigen::Vector2d(0, 0));
  CHECK(ghost_position(order, l1, 1) == l1.positions.at(2));
  const auto l2 = plain_layout(h, 2);
  CHECK(ghost_position(order, l2, 2) == l2.eof);
  CHECK(l2.eof == Eigen::Vector2d(1, 0));
}

TEST_CASE("plain_layout wraps on newline") {
  DocumentHistory h("ab\ncd");
  const auto l = plain_layout(h, 0, {2.0, 3.0});
  CHECK(l.positions.at(1) == Eigen::Vector2d(2, 0));
  CHECK(l.positions.at(2) == Eigen::Vector2d(4, 0));
  CHECK(l.positions.at(3) == Eigen::Vector2d(0, 3));
  CHECK(l.eof == Eigen::Vector2d(4, 3));
}

TEST_CASE("chi colour ramp") {
  CHECK(to_hex(chi_color(0.0)) == "#000000");
  CHECK(to_hex(chi_color(1.0)) == "#2166ac");
  CHECK(to_hex(chi_color(-1.0)) == "#b2182c");
  CHECK(to_hex(chi_color(5.0)) == "#2166ac");
  const BumpKernel k{0.4};
  CHECK(k(0.0) == 0.0);
  CHECK(k(0.2) == doctest::Approx(1.0));
  CHECK(k(0.4) == 0.0);
  for (double t = 0.01; t < 0.39; t += 0.01) {
    CHECK(k.derivative(t) == doctest::Approx((k(t + 1e-7) - k(t - 1e-7)) / 2e-7).epsilon(1e-5));
  }
}

TEST_CASE("char_anim_tick") {
  DocumentHistory h("ab");
  h.commit({EditOp::insert(2, "c")});
  h.commit({EditOp::erase(0, 1)});
  TextScene scene(h, StepSignal::from_events(0.0, {{1.0, 1.0}, {2.0, 2.0}}));

  const auto settled = char_anim_tick(scene, 0, 0.9);
  CHECK(settled.psi == 1.0);
  CHECK(settled.size == 1.0);
  CHECK(to_hex(settled.color) == "#000000");
  CHECK(char_anim_tick(scene, 2, 0.95).rendered == false);

  double prev = 0.0;
  for (double t = 1.0; t <= 1.4; t += 0.01) {
    const auto c = char_anim_tick(scene, 2, t);
    CHECK(c.size >= prev);
    CHECK(c.chi >= 0.0);
    prev = c.size;
  }
  CHECK(char_anim_tick(scene, 2, 1.5).size == 1.0);

  prev = 1.0;
  bool removed = false;
  for (double t = 2.0; t <= 2.5; t += 0.01) {
    const auto a = char_anim_tick(scene, 0, t);
    CHECK(a.size <= prev);
    CHECK(a.chi <= 0.0);
    CHECK(a.rendered == (a.psi >= kRenderThreshold));
    removed = removed || !a.rendered;
    prev = a.size;
  }
  CHECK(removed);
  CHECK(char_anim_tick(scene, 0, 3.0).size == 0.0);
}

TEST_CASE("settled text reproduces the plain layout exactly") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = gen::random_history(rng);
    std::vector<StepEvent> events;
    for (std::size_t r = 1; r < h.revisions(); ++r) {
      events.push_back({0.25 * static_cast<double>(r), static_cast<double>(r)});
    }
    const std::size_t last = h.revisions() - 1;
    TextScene scene(h, StepSignal::from_events(0.0, events));
    const auto frames = scene.frame(0.25 * static_cast<double>(last) + 1.0);
    const auto layout = plain_layout(h, last);
    std::size_t visible = 0;
    for (const auto& f : frames) {
      const auto it = layout.positions.find(f.id);
      if (it == layout.positions.end()) {
        CHECK(f.size == 0.0);
        CHECK_FALSE(f.rendered);
      } else {
        ++visible;
        CHECK(f.size == 1.0);
        CHECK(f.position == it->second);
        CHECK(f.chi == 0.0);
      }
    }
    CHECK(visible == h.snapshot(last).size());
  }
}

TEST_CASE("TextScene rejects a non-integer revision") {
  DocumentHistory h("ab");
  CHECK_THROWS(TextScene(h, StepSignal::from_events(0.0, {{1.0, 0.5}})));
  CHECK_THROWS(TextScene(h, StepSignal::from_events(0.0, {{1.0, 3.0}})));
}
