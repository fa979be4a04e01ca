#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minidroid/device.hpp"
#include "minidroid/screen.hpp"

namespace minidroid {

// Executor input: what the policy conditions on for one decision.
struct Context {
  Screen observation;
  std::string task_goal;
  std::string sub_goal;
  std::vector<std::pair<std::string, Action>> injected_prefix;

  friend bool operator==(const Context&, const Context&) = default;
};

// --- text utilities ---------------------------------------------------------

inline std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

inline std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::string> quoted_spans(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (true) {
    auto open = s.find('"', i);
    if (open == std::string::npos) break;
    auto close = s.find('"', open + 1);
    if (close == std::string::npos) break;
    std::string span = s.substr(open + 1, close - open - 1);
    if (!span.empty()) out.push_back(span);
    i = close + 1;
  }
  return out;
}

// Fraction of `label` tokens also present in `query` tokens.
inline double overlap_score(const std::set<std::string>& query_tokens,
                            const std::string& label) {
  auto toks = tokenize(label);
  if (toks.empty()) return 0.0;
  int hit = 0;
  for (const auto& t : toks)
    if (query_tokens.count(t)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(toks.size());
}

inline double jaccard(const std::set<std::string>& a,
                      const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  int inter = 0;
  for (const auto& t : a)
    if (b.count(t)) ++inter;
  return static_cast<double>(inter) /
         static_cast<double>(a.size() + b.size() - inter);
}

// --- candidate string table --------------------------------------------------

// Text tokens select entries of a per-context string table. The first four
// slots are fixed control strings; the rest hold quoted spans from the
// sub-goal and task goal, in discovery order.
inline constexpr int kNumSlots = 10;
inline constexpr int kFixedSlots = 4;
inline constexpr int kEndToken = kNumSlots;
inline constexpr int kVocabSize = kNumSlots + 1;
inline constexpr int kMaxTextTokens = 3;

struct CandidateTable {
  std::array<std::string, kNumSlots> slots;

  static CandidateTable build(const Context& ctx) {
    CandidateTable t;
    t.slots = {"back", "home", "success", "failure", "", "", "", "", "", ""};
    int next = kFixedSlots;
    auto add = [&](const std::string& s) {
      if (s.empty() || next >= kNumSlots) return;
      for (int i = 0; i < next; ++i)
        if (t.slots[i] == s) return;
      t.slots[next++] = s;
    };
    for (const auto& span : quoted_spans(ctx.sub_goal)) add(span);
    for (const auto& span : quoted_spans(ctx.task_goal)) add(span);
    return t;
  }

  int find(const std::string& s) const {
    for (int i = 0; i < kNumSlots; ++i)
      if (slots[i] == s) return i;
    return -1;
  }
};

// --- feature vector ----------------------------------------------------------

// Sparse real vector with sorted unique indices.
struct FeatureVector {
  std::vector<std::pair<int, double>> entries;

  void set(int idx, double v) {
    if (v != 0.0) entries.emplace_back(idx, v);
  }
  void finish() {
    std::sort(entries.begin(), entries.end());
    // Duplicate indices would double-count in dot products.
    std::vector<std::pair<int, double>> dedup;
    for (const auto& [i, v] : entries) {
      if (!dedup.empty() && dedup.back().first == i)
        dedup.back().second = std::max(dedup.back().second, v);
      else
        dedup.emplace_back(i, v);
    }
    entries = std::move(dedup);
  }
};

// Global feature slots.
inline constexpr int kFeatBias = 0;
inline constexpr int kFeatKindSuggest = 1;              // 7 entries
inline constexpr int kFeatPrefixLastKind = 8;           // 7 entries
inline constexpr int kFeatPrefixEmpty = 15;
inline constexpr int kFeatPrefixLen = 16;
inline constexpr int kFeatHasFocused = 17;
inline constexpr int kFeatNumElements = 18;
inline constexpr int kFeatHasQuoted = 19;
inline constexpr int kFeatSaysSuccess = 20;
inline constexpr int kFeatSaysFailure = 21;
inline constexpr int kNumGlobalFeats = 24;

// Per-slot block.
inline constexpr int kSlotFeatBase = kNumGlobalFeats;
inline constexpr int kSlotNonEmpty = 0;
inline constexpr int kSlotQuotedInSubgoal = 1;
inline constexpr int kSlotInTaskGoal = 2;
inline constexpr int kSlotOverlap = 3;
inline constexpr int kSlotEqualsFocused = 4;
inline constexpr int kNumSlotFeats = 5;

// Per-cell block.
inline constexpr int kCellFeatBase = kSlotFeatBase + kNumSlots * kNumSlotFeats;
inline constexpr int kCellKindOneHot = 0;  // 6 entries
inline constexpr int kCellOccupied = 6;
inline constexpr int kCellOverlap = 7;
inline constexpr int kCellBestOverlap = 8;
inline constexpr int kCellFocused = 9;
inline constexpr int kCellToggleOn = 10;
inline constexpr int kCellRecency = 11;
inline constexpr int kCellRepeatMatch = 12;
inline constexpr int kCellLabelQuoted = 13;
inline constexpr int kNumCellFeats = 14;

inline constexpr int kFeatureDim = kCellFeatBase + kNumCells * kNumCellFeats;

inline int slot_feat(int slot, int which) {
  return kSlotFeatBase + slot * kNumSlotFeats + which;
}
inline int cell_feat(int cell, int which) {
  return kCellFeatBase + cell * kNumCellFeats + which;
}

namespace detail {

// Phrase lexicon per action kind, evaluated on the lowercased sub-goal.
// "long press" is rewritten first so bare "press" never counts as a click.
inline std::array<double, kNumActionKinds> kind_suggestions(
    const std::string& sub_goal_lower) {
  std::string s = sub_goal_lower;
  std::array<double, kNumActionKinds> out{};
  auto has = [&](const char* phrase) {
    return s.find(phrase) != std::string::npos;
  };
  if (has("long press") || has("long-press") || has("hold ")) {
    out[static_cast<int>(ActionKind::kLongPress)] = 1.0;
    std::size_t p;
    while ((p = s.find("long press")) != std::string::npos) s.erase(p, 10);
  }
  if (has("tap") || has("click") || has("press") || has("select") ||
      has("choose"))
    out[static_cast<int>(ActionKind::kClick)] = 1.0;
  if (has("swipe") || has("scroll") || has("drag"))
    out[static_cast<int>(ActionKind::kSwipe)] = 1.0;
  if (has("type") || has("enter ") || has("input") || has("write "))
    out[static_cast<int>(ActionKind::kType)] = 1.0;
  if (has("home button") || has("back button") || has("navigate back") ||
      has("go back"))
    out[static_cast<int>(ActionKind::kSystemButton)] = 1.0;
  if (has("terminate") || has("finish") || has("task is complete") ||
      has("task is done"))
    out[static_cast<int>(ActionKind::kTerminate)] = 1.0;
  if (has("answer") || has("report") || has("respond") || has("reply"))
    out[static_cast<int>(ActionKind::kAnswer)] = 1.0;
  return out;
}

}  // namespace detail

// Deterministic hand-crafted featurization of a Context.
inline FeatureVector featurize(const Context& ctx) {
  FeatureVector f;
  const std::string sub_lower = lower(ctx.sub_goal);
  const auto sub_tokens_v = tokenize(ctx.sub_goal);
  const std::set<std::string> sub_tokens(sub_tokens_v.begin(),
                                         sub_tokens_v.end());
  const auto spans = quoted_spans(ctx.sub_goal);
  const CandidateTable table = CandidateTable::build(ctx);

  // Globals.
  f.set(kFeatBias, 1.0);
  auto suggest = detail::kind_suggestions(sub_lower);
  for (int k = 0; k < kNumActionKinds; ++k)
    f.set(kFeatKindSuggest + k, suggest[k]);
  if (ctx.injected_prefix.empty()) {
    f.set(kFeatPrefixEmpty, 1.0);
  } else {
    const Action& last = ctx.injected_prefix.back().second;
    f.set(kFeatPrefixLastKind + static_cast<int>(last.kind), 1.0);
    f.set(kFeatPrefixLen,
          static_cast<double>(ctx.injected_prefix.size()) / 10.0);
  }
  std::string focused_text;
  bool has_focused = false;
  for (const auto& e : ctx.observation.elements) {
    auto it = e.state.find("focused");
    if (it != e.state.end() && it->second == "true") {
      has_focused = true;
      auto t = e.state.find("text");
      if (t != e.state.end()) focused_text = t->second;
    }
  }
  f.set(kFeatHasFocused, has_focused ? 1.0 : 0.0);
  f.set(kFeatNumElements,
        static_cast<double>(ctx.observation.elements.size()) / 20.0);
  f.set(kFeatHasQuoted, spans.empty() ? 0.0 : 1.0);
  f.set(kFeatSaysSuccess,
        sub_lower.find("success") != std::string::npos ? 1.0 : 0.0);
  f.set(kFeatSaysFailure,
        sub_lower.find("failure") != std::string::npos ? 1.0 : 0.0);

  // Text slots.
  for (int s = kFixedSlots; s < kNumSlots; ++s) {
    const std::string& val = table.slots[s];
    if (val.empty()) continue;
    f.set(slot_feat(s, kSlotNonEmpty), 1.0);
    bool in_sub = std::find(spans.begin(), spans.end(), val) != spans.end();
    f.set(slot_feat(s, kSlotQuotedInSubgoal), in_sub ? 1.0 : 0.0);
    f.set(slot_feat(s, kSlotInTaskGoal),
          ctx.task_goal.find(val) != std::string::npos ? 1.0 : 0.0);
    f.set(slot_feat(s, kSlotOverlap), overlap_score(sub_tokens, val));
    f.set(slot_feat(s, kSlotEqualsFocused),
          !val.empty() && val == focused_text ? 1.0 : 0.0);
  }

  // Cells.
  double best_overlap = 0.0;
  int best_cell = -1;
  for (const auto& e : ctx.observation.elements) {
    if (e.element_id == kSessionStatusId) continue;
    const int cell = cell_of_point(e.bbox.center());
    f.set(cell_feat(cell, kCellKindOneHot + static_cast<int>(e.kind)), 1.0);
    f.set(cell_feat(cell, kCellOccupied), 1.0);
    const double ov = overlap_score(sub_tokens, e.label);
    f.set(cell_feat(cell, kCellOverlap), ov);
    if (ov > best_overlap) {
      best_overlap = ov;
      best_cell = cell;
    }
    auto it = e.state.find("focused");
    if (it != e.state.end() && it->second == "true")
      f.set(cell_feat(cell, kCellFocused), 1.0);
    auto on = e.state.find("on");
    if (on != e.state.end() && on->second == "true")
      f.set(cell_feat(cell, kCellToggleOn), 1.0);
    for (const auto& span : spans)
      if (e.label == span) f.set(cell_feat(cell, kCellLabelQuoted), 1.0);
  }
  if (best_cell >= 0 && best_overlap > 0.0)
    f.set(cell_feat(best_cell, kCellBestOverlap), 1.0);

  // Prefix-derived recency and repetition cues.
  const int n = static_cast<int>(ctx.injected_prefix.size());
  for (int i = 0; i < n; ++i) {
    const auto& [instr, act] = ctx.injected_prefix[i];
    if (!act.coordinate) continue;
    const int cell = cell_of_point(*act.coordinate);
    const double decay = std::pow(0.7, n - 1 - i);
    f.set(cell_feat(cell, kCellRecency), decay);
    const auto itoks_v = tokenize(instr);
    const std::set<std::string> itoks(itoks_v.begin(), itoks_v.end());
    const double sim = jaccard(sub_tokens, itoks);
    if (sim > 0.0) f.set(cell_feat(cell, kCellRepeatMatch), sim);
  }

  f.finish();
  return f;
}

}  // namespace minidroid
