#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "animlab/easing.hpp"
#include "animlab/fir.hpp"
#include "animlab/signal.hpp"

namespace animlab {

using CharId = std::size_t;

struct CharRecord {
  CharId id;
  char glyph;
  std::size_t insert_revision;
  std::optional<std::size_t> delete_revision;
};

struct EditOp {
  enum class Kind { insert, erase };
  Kind kind;
  std::size_t position;
  std::string text;       // insert
  std::size_t count = 0;  // erase

  static EditOp insert(std::size_t position, std::string text) {
    return {Kind::insert, position, std::move(text), 0};
  }
  static EditOp erase(std::size_t position, std::size_t count) {
    return {Kind::erase, position, {}, count};
  }
};

/// Sequence of document revisions. Each revision is the list of visible
/// character ids in document order; characters are created by inserts and
/// never come back once deleted.
class DocumentHistory {
 public:
  /// Revision 0 holds `initial`.
  explicit DocumentHistory(std::string_view initial = {});

  /// `glyphs[id]` is the character for id. Throws on unknown or duplicated
  /// ids and on reinsertion.
  static DocumentHistory from_snapshots(std::vector<char> glyphs,
                                        std::vector<std::vector<CharId>> snapshots);

  /// Applies `ops` in order to a copy of the latest revision and appends the
  /// result. Positions index the document as edited so far. Returns the new
  /// revision index.
  std::size_t commit(const std::vector<EditOp>& ops);

  std::size_t revisions() const { return snapshots_.size(); }
  const std::vector<CharId>& snapshot(std::size_t revision) const;
  std::string text(std::size_t revision) const;
  char glyph(CharId id) const { return glyphs_.at(id); }

  /// Characters that are visible in at least one revision, by id.
  std::vector<CharRecord> records() const;

 private:
  struct Blank {};
  explicit DocumentHistory(Blank) {}
  void check_last_revision();

  std::vector<char> glyphs_;
  std::vector<std::vector<CharId>> snapshots_;
  std::vector<std::optional<std::size_t>> inserted_;  // first revision shown
  std::vector<std::optional<std::size_t>> deleted_;   // first revision hidden after that
};

/// Total order on every character of the history that agrees with the
/// document order of each revision. Deleted characters stay in place as
/// tombstones; text inserted into a gap goes after older tombstones there,
/// but before characters deleted from that gap in the same revision.
/// Throws std::invalid_argument when a surviving character changes position
/// relative to another ("inconsistent history").
std::vector<CharId> total_order(const DocumentHistory& history);

struct LayoutParams {
  double advance = 1.0;
  double line_height = 1.0;
};

/// Monospace layout of one revision. '\n' occupies the end of its line.
struct Layout {
  std::unordered_map<CharId, Eigen::Vector2d> positions;
  Eigen::Vector2d eof = Eigen::Vector2d::Zero();
};

Layout plain_layout(const DocumentHistory& history, std::size_t revision,
                    const LayoutParams& params = {});

/// Layout position if `id` is visible, otherwise the position of the least
/// visible character after it in `order`, falling back to the end of file.
Eigen::Vector2d ghost_position(const std::vector<CharId>& order, const Layout& layout, CharId id);

/// Signed bump 16 u^2 (1 - u)^2 on [0, d], u = t / d; returns to zero, so it
/// works as a step response with terminal value 0.
struct BumpKernel {
  double d;

  double duration() const { return d; }
  double operator()(Time t) const;
  double derivative(Time t) const;
  double terminal() const { return 0.0; }
};

struct Rgb {
  double r, g, b;  // 0..255
};

inline constexpr Rgb kAppearColor{33, 102, 172};   // #2166ac
inline constexpr Rgb kDisappearColor{178, 24, 44};  // #b2182c

/// chi > 0 blends black toward the appear colour, chi < 0 toward the
/// disappear colour. |chi| is clamped to 1.
Rgb chi_color(double chi);
std::string to_hex(const Rgb& c);

struct TextSceneConfig {
  Easing presence = make_smoothstep(0.4);
  Easing position = make_smoothstep(0.4);
  double color_duration = 0.4;
  double nominal_size = 1.0;
  LayoutParams layout;
};

struct CharFrame {
  CharId id;
  char glyph;
  double psi;
  double chi;
  double size;
  Rgb color;
  Eigen::Vector2d position;
  bool rendered;  // psi >= kRenderThreshold
};

inline constexpr double kRenderThreshold = 1e-3;

/// Per-character animation of a document driven by a revision-index step
/// signal: presence drives size and colour, layout (or ghost) position
/// drives placement.
class TextScene {
 public:
  TextScene(DocumentHistory history, StepSignal revision, TextSceneConfig config = {});

  /// Calls must come with non-decreasing t. One entry per character, in
  /// total order.
  std::vector<CharFrame> frame(Time t);
  const std::vector<CharId>& order() const { return order_; }
  const DocumentHistory& history() const { return history_; }

 private:
  struct CharState {
    CharId id;
    FirStepAnimator<double> psi;
    FirStepAnimator<double, double, BumpKernel> chi;
    FirStepAnimator<Eigen::Vector2d, Eigen::Vector2d> position;
    double present;
    Eigen::Vector2d target;
  };

  std::size_t revision_index(double value) const;
  std::vector<std::pair<double, Eigen::Vector2d>> targets(std::size_t revision) const;
  void apply_revision(Time t, std::size_t revision);

  DocumentHistory history_;
  StepSignal revision_;
  TextSceneConfig config_;
  std::vector<CharId> order_;
  std::vector<CharState> chars_;
  std::size_t next_event_ = 0;
};

/// Per-frame attributes of one character; equivalent to the matching entry
/// of scene.frame(t).
CharFrame char_anim_tick(TextScene& scene, CharId id, Time t);

}  // namespace animlab
