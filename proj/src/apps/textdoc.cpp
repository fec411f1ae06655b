#include "animlab/apps/textdoc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace animlab {

DocumentHistory::DocumentHistory(std::string_view initial) {
  std::vector<CharId> first;
  for (char c : initial) {
    first.push_back(glyphs_.size());
    glyphs_.push_back(c);
  }
  snapshots_.push_back(std::move(first));
  check_last_revision();
}

DocumentHistory DocumentHistory::from_snapshots(std::vector<char> glyphs,
                                                std::vector<std::vector<CharId>> snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("history needs at least one revision");
  DocumentHistory h{Blank{}};
  h.glyphs_ = std::move(glyphs);
  for (auto& s : snapshots) {
    h.snapshots_.push_back(std::move(s));
    h.check_last_revision();
  }
  return h;
}

// Validates the newest snapshot and updates the insert/delete bookkeeping.
void DocumentHistory::check_last_revision() {
  const std::size_t r = snapshots_.size() - 1;
  inserted_.resize(glyphs_.size());
  deleted_.resize(glyphs_.size());
  std::vector<char> present(glyphs_.size(), 0);
  for (CharId id : snapshots_[r]) {
    if (id >= glyphs_.size()) {
      throw std::invalid_argument("revision " + std::to_string(r) + ": unknown character " +
                                  std::to_string(id));
    }
    if (present[id]) {
      throw std::invalid_argument("revision " + std::to_string(r) + ": character " +
                                  std::to_string(id) + " appears twice");
    }
    present[id] = 1;
    if (deleted_[id]) {
      throw std::invalid_argument("revision " + std::to_string(r) + ": character " +
                                  std::to_string(id) + " reinserted after deletion");
    }
    if (!inserted_[id]) inserted_[id] = r;
  }
  for (CharId id = 0; id < glyphs_.size(); ++id) {
    if (inserted_[id] && !deleted_[id] && !present[id]) deleted_[id] = r;
  }
}

std::size_t DocumentHistory::commit(const std::vector<EditOp>& ops) {
  std::vector<CharId> doc = snapshots_.back();
  for (const auto& op : ops) {
    if (op.position > doc.size()) {
      throw std::out_of_range("edit position " + std::to_string(op.position) +
                              " past end of document (" + std::to_string(doc.size()) + ")");
    }
    if (op.kind == EditOp::Kind::insert) {
      std::vector<CharId> ids;
      for (char c : op.text) {
        ids.push_back(glyphs_.size());
        glyphs_.push_back(c);
      }
      doc.insert(doc.begin() + static_cast<std::ptrdiff_t>(op.position), ids.begin(), ids.end());
    } else {
      if (op.count > doc.size() - op.position) {
        throw std::out_of_range("erase runs past end of document");
      }
      const auto first = doc.begin() + static_cast<std::ptrdiff_t>(op.position);
      doc.erase(first, first + static_cast<std::ptrdiff_t>(op.count));
    }
  }
  snapshots_.push_back(std::move(doc));
  check_last_revision();
  return snapshots_.size() - 1;
}

const std::vector<CharId>& DocumentHistory::snapshot(std::size_t revision) const {
  if (revision >= snapshots_.size()) {
    throw std::out_of_range("unknown revision " + std::to_string(revision));
  }
  return snapshots_[revision];
}

std::string DocumentHistory::text(std::size_t revision) const {
  std::string out;
  for (CharId id : snapshot(revision)) out.push_back(glyphs_[id]);
  return out;
}

std::vector<CharRecord> DocumentHistory::records() const {
  std::vector<CharRecord> out;
  for (CharId id = 0; id < glyphs_.size(); ++id) {
    if (inserted_[id]) out.push_back({id, glyphs_[id], *inserted_[id], deleted_[id]});
  }
  return out;
}

std::vector<CharId> total_order(const DocumentHistory& history) {
  std::vector<CharId> order = history.snapshot(0);
  auto index_of = [&](CharId id) {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
  };

  for (std::size_t r = 1; r < history.revisions(); ++r) {
    const auto& prev = history.snapshot(r - 1);
    const auto& cur = history.snapshot(r);
    const std::unordered_set<CharId> prev_set(prev.begin(), prev.end());
    const std::unordered_set<CharId> cur_set(cur.begin(), cur.end());

    std::vector<CharId> kept_before, kept_after;
    for (CharId id : prev) {
      if (cur_set.count(id)) kept_before.push_back(id);
    }
    for (CharId id : cur) {
      if (prev_set.count(id)) kept_after.push_back(id);
    }
    if (kept_before != kept_after) {
      throw std::invalid_argument("inconsistent history: characters change order in revision " +
                                  std::to_string(r));
    }

    // New characters between adjacent survivors; lo and hi bound the gap in
    // `order` (exclusive).
    auto place = [&](const std::vector<CharId>& run, std::size_t lo, std::size_t hi) {
      std::size_t at = hi;
      for (std::size_t k = lo; k < hi; ++k) {
        if (prev_set.count(order[k]) && !cur_set.count(order[k])) {
          at = k;
          break;
        }
      }
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(at), run.begin(), run.end());
    };

    std::vector<CharId> run;
    std::size_t lo = 0;
    for (CharId id : cur) {
      if (!prev_set.count(id)) {
        run.push_back(id);
        continue;
      }
      const std::size_t hi = index_of(id);
      if (!run.empty()) place(run, lo, hi);
      run.clear();
      lo = index_of(id) + 1;
    }
    if (!run.empty()) place(run, lo, order.size());
  }
  return order;
}

Layout plain_layout(const DocumentHistory& history, std::size_t revision,
                    const LayoutParams& params) {
  Layout layout;
  double column = 0.0;
  double row = 0.0;
  for (CharId id : history.snapshot(revision)) {
    layout.positions.emplace(id, Eigen::Vector2d(column * params.advance, row * params.line_height));
    if (history.glyph(id) == '\n') {
      column = 0.0;
      row += 1.0;
    } else {
      column += 1.0;
    }
  }
  layout.eof = Eigen::Vector2d(column * params.advance, row * params.line_height);
  return layout;
}

Eigen::Vector2d ghost_position(const std::vector<CharId>& order, const Layout& layout, CharId id) {
  auto it = std::find(order.begin(), order.end(), id);
  if (it == order.end()) throw std::out_of_range("character " + std::to_string(id) + " not in order");
  for (; it != order.end(); ++it) {
    auto p = layout.positions.find(*it);
    if (p != layout.positions.end()) return p->second;
  }
  return layout.eof;
}

double BumpKernel::operator()(Time t) const {
  if (t <= 0.0 || t >= d) return 0.0;
  const double u = t / d;
  const double w = u * (1.0 - u);
  return 16.0 * w * w;
}

double BumpKernel::derivative(Time t) const {
  if (t < 0.0 || t >= d) return 0.0;
  const double u = t / d;
  return 32.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / d;
}

Rgb chi_color(double chi) {
  const double w = std::min(std::abs(chi), 1.0);
  const Rgb& hue = chi >= 0.0 ? kAppearColor : kDisappearColor;
  return {w * hue.r, w * hue.g, w * hue.b};
}

std::string to_hex(const Rgb& c) {
  auto byte = [](double v) { return static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 255.0))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(c.r), byte(c.g), byte(c.b));
  return buf;
}

TextScene::TextScene(DocumentHistory history, StepSignal revision, TextSceneConfig config)
    : history_(std::move(history)),
      revision_(std::move(revision)),
      config_(std::move(config)),
      order_(total_order(history_)) {
  if (!(config_.color_duration > 0.0)) throw std::invalid_argument("color duration must be positive");
  for (const auto& e : revision_.events()) revision_index(e.value);
  const auto initial = targets(revision_index(revision_.initial()));
  chars_.reserve(order_.size());
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const auto& [present, at] = initial[k];
    chars_.push_back({order_[k],
                      {present, config_.presence},
                      {present, BumpKernel{config_.color_duration}},
                      {at, config_.position},
                      present,
                      at});
  }
}

std::size_t TextScene::revision_index(double value) const {
  const double r = std::round(value);
  if (r != value || r < 0.0 || r >= static_cast<double>(history_.revisions())) {
    throw std::invalid_argument("revision signal value " + std::to_string(value) +
                                " is not a revision index");
  }
  return static_cast<std::size_t>(r);
}

// (presence, target position) for each character in total order.
std::vector<std::pair<double, Eigen::Vector2d>> TextScene::targets(std::size_t revision) const {
  const Layout layout = plain_layout(history_, revision, config_.layout);
  std::vector<std::pair<double, Eigen::Vector2d>> out(order_.size());
  Eigen::Vector2d next = layout.eof;
  for (std::size_t k = order_.size(); k-- > 0;) {
    auto p = layout.positions.find(order_[k]);
    if (p != layout.positions.end()) {
      next = p->second;
      out[k] = {1.0, next};
    } else {
      out[k] = {0.0, next};
    }
  }
  return out;
}

void TextScene::apply_revision(Time t, std::size_t revision) {
  const auto next = targets(revision);
  for (std::size_t k = 0; k < chars_.size(); ++k) {
    auto& c = chars_[k];
    const auto& [present, at] = next[k];
    if (present != c.present) {
      c.psi.retarget(t, present);
      c.chi.retarget(t, present);
      c.present = present;
    }
    if (at != c.target) {
      c.position.retarget(t, at);
      c.target = at;
    }
  }
}

std::vector<CharFrame> TextScene::frame(Time t) {
  const auto events = revision_.events();
  while (next_event_ < events.size() && events[next_event_].t <= t) {
    apply_revision(events[next_event_].t, revision_index(events[next_event_].value));
    ++next_event_;
  }
  std::vector<CharFrame> out;
  out.reserve(chars_.size());
  for (auto& c : chars_) {
    const double psi = c.psi.eval(t);
    const double chi = c.chi.eval(t);
    out.push_back({c.id, history_.glyph(c.id), psi, chi, psi * config_.nominal_size, chi_color(chi),
                   c.position.eval(t), psi >= kRenderThreshold});
  }
  return out;
}

CharFrame char_anim_tick(TextScene& scene, CharId id, Time t) {
  for (const auto& f : scene.frame(t)) {
    if (f.id == id) return f;
  }
  throw std::out_of_range("unknown character " + std::to_string(id));
}

}  // namespace animlab
