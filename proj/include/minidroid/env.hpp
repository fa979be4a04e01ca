#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "minidroid/envdef.hpp"

namespace minidroid {

// Items of a list are stored joined under the owning screen's pseudo element
// "_screen", key "<list>.items". The separator never occurs in content.
inline constexpr char kItemSep = '\x1f';

inline std::vector<std::string> split_items(const std::string& joined) {
  std::vector<std::string> out;
  if (joined.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = joined.find(kItemSep, start);
    if (pos == std::string::npos) {
      out.push_back(joined.substr(start));
      break;
    }
    out.push_back(joined.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string join_items(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += kItemSep;
    out += items[i];
  }
  return out;
}

using ElementStateMap = std::map<std::string, std::string>;
using ScreenStateMap = std::map<std::string, ElementStateMap>;

// Full simulator state. A pure value: step() returns a new state.
struct EnvState {
  std::string current_screen;
  std::map<std::string, ScreenStateMap> app_states;
  int step_count = 0;
  bool done = false;
  std::optional<std::string> answer_given;
  std::uint64_t seed = 0;
  double discount = 1.0;
  // Set when the horizon forced termination; such episodes never succeed.
  bool timed_out = false;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

struct StepOutcome {
  Screen observation;
  bool transitioned = false;
  bool terminal = false;
  std::optional<bool> success;
};

class Env {
 public:
  explicit Env(EnvDefinition def) : def_(std::move(def)) {
    validate_definition(def_);
  }

  const EnvDefinition& definition() const { return def_; }
  int horizon() const { return def_.horizon; }

  // Deterministic initial state for (task, seed). The seed drives decoy
  // content only; task parameters come from the TaskSpec itself.
  EnvState reset(const TaskSpec& task, std::uint64_t seed) const {
    const TaskDef* td = def_.find_task(task.template_id);
    if (!td) throw ConfigError("unknown task template: " + task.template_id);

    EnvState st;
    st.current_screen = def_.home_screen;
    st.seed = seed;
    for (const auto& sd : def_.screens) {
      ScreenStateMap& sm = st.app_states[sd.screen_id];
      for (const auto& ed : sd.elements) {
        ElementStateMap em;
        for (const auto& [k, v] : ed.initial_state)
          em[k] = resolve_slots(v, task.params, seed);
        if (ed.label.find('{') != std::string::npos)
          em["label"] = resolve_slots(ed.label, task.params, seed);
        if (!em.empty()) sm[ed.element_id] = std::move(em);
      }
      for (const auto& ld : sd.lists) {
        std::vector<std::string> items;
        for (const auto& item : ld.initial_items)
          items.push_back(resolve_slots(item, task.params, seed));
        sm["_screen"][ld.name + ".items"] = join_items(items);
        sm["_screen"][ld.name + ".offset"] = "0";
      }
    }
    for (const auto& o : td->initial) {
      ScreenStateMap& sm = st.app_states[o.screen];
      if (!o.element.empty())
        sm[o.element][o.key] = resolve_slots(o.value, task.params, seed);
      if (!o.list.empty()) {
        std::vector<std::string> items;
        for (const auto& item : o.items)
          items.push_back(resolve_slots(item, task.params, seed));
        sm["_screen"][o.list + ".items"] = join_items(items);
        sm["_screen"][o.list + ".offset"] = "0";
      }
    }
    return st;
  }

  // Renders the observation for a state: element labels and visible state,
  // list windows applied, and a session status element on terminal states.
  Screen render(const EnvState& st) const {
    const ScreenDef* sd = def_.find_screen(st.current_screen);
    if (!sd) throw InternalError("state on unknown screen " + st.current_screen);

    Screen scr;
    scr.screen_id = sd->screen_id;
    scr.width = def_.width;
    scr.height = def_.height;

    const ScreenStateMap& sm = st.app_states.at(sd->screen_id);
    for (const auto& ed : sd->elements) {
      UiElement e;
      e.element_id = ed.element_id;
      e.kind = ed.kind;
      e.bbox = ed.bbox;
      e.label = ed.label;
      auto it = sm.find(ed.element_id);
      if (it != sm.end()) {
        e.state = it->second;
        auto lbl = e.state.find("label");
        if (lbl != e.state.end()) {
          e.label = lbl->second;
          e.state.erase(lbl);
        }
      }
      if (!ed.bound_list.empty()) {
        auto items = list_items(st, sd->screen_id, ed.bound_list);
        int offset = list_offset(st, sd->screen_id, ed.bound_list);
        std::size_t idx = static_cast<std::size_t>(offset + ed.list_index);
        e.label = idx < items.size() ? items[idx] : "";
      }
      if (ed.kind == ElementKind::kTextField && !e.state.count("text"))
        e.state["text"] = "";
      scr.elements.push_back(std::move(e));
    }
    if (st.done) {
      UiElement status;
      status.element_id = kSessionStatusId;
      status.kind = ElementKind::kIcon;
      status.label = "done";
      status.bbox = Rect{0, 0, 2, 2};
      status.state["done"] = "true";
      if (st.answer_given) status.state["answer"] = *st.answer_given;
      scr.elements.push_back(std::move(status));
    }
    return scr;
  }

  // Applies one action. Deterministic; never mutates the input state.
  std::pair<EnvState, StepOutcome> step(const EnvState& state,
                                        const Action& action) const {
    if (state.done) throw UsageError("step() on a finished episode");
    validate_action(action, def_.width, def_.height);

    EnvState st = state;
    const bool dropped =
        std::find(def_.fault_drop_kinds.begin(), def_.fault_drop_kinds.end(),
                  action.kind) != def_.fault_drop_kinds.end();

    if (!dropped) apply_action(st, action);

    st.step_count += 1;
    if (!st.done && st.step_count >= def_.horizon) {
      st.done = true;
      st.timed_out = true;
    }

    StepOutcome out;
    out.transitioned = !(st.current_screen == state.current_screen &&
                         st.app_states == state.app_states &&
                         st.done == state.done &&
                         st.answer_given == state.answer_given);
    out.terminal = st.done;
    out.observation = render(st);
    return {std::move(st), std::move(out)};
  }

  // Evaluates the task's success predicate over a finished episode.
  bool check_success(const EnvState& st, const TaskSpec& task) const {
    if (!st.done) throw UsageError("check_success() on a running episode");
    if (st.timed_out) return false;
    const TaskDef* td = def_.find_task(task.template_id);
    if (!td) throw ConfigError("unknown task template: " + task.template_id);

    for (const auto& c : td->success) {
      const std::string want = resolve_slots(c.value, task.params, st.seed);
      switch (c.kind) {
        case SuccessClause::Kind::kListContains:
        case SuccessClause::Kind::kListNotContains: {
          const ScreenDef* owner = def_.screen_of_list(c.list);
          if (!owner) throw ConfigError("success clause: unknown list " + c.list);
          auto items = list_items(st, owner->screen_id, c.list);
          bool found =
              std::find(items.begin(), items.end(), want) != items.end();
          if (c.kind == SuccessClause::Kind::kListContains ? !found : found)
            return false;
          break;
        }
        case SuccessClause::Kind::kStateEquals: {
          auto sit = st.app_states.find(c.screen);
          if (sit == st.app_states.end()) return false;
          auto eit = sit->second.find(c.element);
          if (eit == sit->second.end()) return false;
          auto kit = eit->second.find(c.key);
          if (kit == eit->second.end() || kit->second != want) return false;
          break;
        }
        case SuccessClause::Kind::kAnswerIs:
          if (!st.answer_given || *st.answer_given != want) return false;
          break;
        case SuccessClause::Kind::kScreenIs:
          if (st.current_screen != want) return false;
          break;
      }
    }
    return true;
  }

  // Convenience used by step(); exposed for tests.
  std::pair<EnvState, StepOutcome> step_checked(const EnvState& state,
                                                const Action& action,
                                                const TaskSpec& task) const {
    auto [st, out] = step(state, action);
    if (out.terminal) out.success = check_success(st, task);
    return {std::move(st), std::move(out)};
  }

 private:
  std::vector<std::string> list_items(const EnvState& st,
                                      const std::string& screen,
                                      const std::string& list) const {
    return split_items(
        st.app_states.at(screen).at("_screen").at(list + ".items"));
  }
  int list_offset(const EnvState& st, const std::string& screen,
                  const std::string& list) const {
    return std::stoi(
        st.app_states.at(screen).at("_screen").at(list + ".offset"));
  }

  int visible_rows(const ScreenDef& sd, const std::string& list) const {
    int n = 0;
    for (const auto& e : sd.elements)
      if (e.bound_list == list) n = std::max(n, e.list_index + 1);
    return n;
  }

  void apply_ops(EnvState& st, const std::vector<RuleOp>& ops,
                 const ElementDef* fired, const ScreenDef& sd) const {
    // Element op targets resolve by id; they may live on a sibling screen
    // (e.g. a button that prefills a field on the dialog it opens).
    auto owner_of = [&](const std::string& elem) -> const std::string& {
      const ScreenDef* s = def_.screen_of_element(elem);
      if (!s) throw InternalError("rule op targets unknown element " + elem);
      return s->screen_id;
    };
    for (const auto& op : ops) {
      switch (op.kind) {
        case RuleOp::Kind::kGoto:
          st.current_screen = op.target;
          break;
        case RuleOp::Kind::kFocus: {
          const ScreenDef* owner = def_.screen_of_element(op.target);
          ScreenStateMap& sm = st.app_states[owner->screen_id];
          for (const auto& e : owner->elements)
            if (e.kind == ElementKind::kTextField)
              sm[e.element_id]["focused"] = "false";
          sm[op.target]["focused"] = "true";
          break;
        }
        case RuleOp::Kind::kSetState:
          st.app_states[owner_of(op.target)][op.target][op.key] = op.value;
          break;
        case RuleOp::Kind::kClearText:
          st.app_states[owner_of(op.target)][op.target]["text"] = "";
          break;
        case RuleOp::Kind::kAppendFrom: {
          const std::string text =
              st.app_states[owner_of(op.src)][op.src]["text"];
          const ScreenDef* owner = def_.screen_of_list(op.list);
          auto& joined =
              st.app_states[owner->screen_id]["_screen"][op.list + ".items"];
          auto items = split_items(joined);
          items.push_back(text);
          joined = join_items(items);
          break;
        }
        case RuleOp::Kind::kAppendJoin: {
          const std::string a = st.app_states[owner_of(op.src)][op.src]["text"];
          const std::string b =
              st.app_states[owner_of(op.src2)][op.src2]["text"];
          const ScreenDef* owner = def_.screen_of_list(op.list);
          auto& joined =
              st.app_states[owner->screen_id]["_screen"][op.list + ".items"];
          auto items = split_items(joined);
          items.push_back(a + op.value + b);
          joined = join_items(items);
          break;
        }
        case RuleOp::Kind::kRemoveSelected: {
          const std::string sel = current_selection(st);
          const ScreenDef* owner = def_.screen_of_list(op.list);
          auto& joined =
              st.app_states[owner->screen_id]["_screen"][op.list + ".items"];
          auto items = split_items(joined);
          auto it = std::find(items.begin(), items.end(), sel);
          if (it != items.end()) items.erase(it);
          joined = join_items(items);
          break;
        }
        case RuleOp::Kind::kSelectSelf: {
          if (!fired) break;
          // Selection stores the row's rendered label, session wide.
          auto items = list_items(st, sd.screen_id, fired->bound_list);
          int offset = list_offset(st, sd.screen_id, fired->bound_list);
          std::size_t idx = static_cast<std::size_t>(offset + fired->list_index);
          if (idx < items.size())
            st.app_states["_session"]["_screen"]["selected"] = items[idx];
          break;
        }
        case RuleOp::Kind::kCopySelected:
          st.app_states[owner_of(op.target)][op.target]["text"] =
              current_selection(st);
          break;
        case RuleOp::Kind::kScroll: {
          const ScreenDef* owner = def_.screen_of_list(op.list);
          auto items = list_items(st, owner->screen_id, op.list);
          int rows = visible_rows(*owner, op.list);
          int max_offset =
              std::max(0, static_cast<int>(items.size()) - rows);
          auto& off =
              st.app_states[owner->screen_id]["_screen"][op.list + ".offset"];
          int cur = std::stoi(off);
          off = std::to_string(std::clamp(cur + op.delta, 0, max_offset));
          break;
        }
        case RuleOp::Kind::kToggle: {
          auto& on = st.app_states[owner_of(op.target)][op.target]["on"];
          on = (on == "true") ? "false" : "true";
          break;
        }
      }
    }
  }

  std::string current_selection(const EnvState& st) const {
    auto sit = st.app_states.find("_session");
    if (sit == st.app_states.end()) return "";
    auto it = sit->second.find("_screen");
    if (it == sit->second.end()) return "";
    auto kit = it->second.find("selected");
    return kit != it->second.end() ? kit->second : "";
  }

  void apply_action(EnvState& st, const Action& action) const {
    const ScreenDef& sd = *def_.find_screen(st.current_screen);
    switch (action.kind) {
      case ActionKind::kClick:
      case ActionKind::kLongPress: {
        const ElementDef* hit = nullptr;
        for (const auto& e : sd.elements)
          if (e.bbox.contains(*action.coordinate)) {
            hit = &e;
            break;
          }
        if (!hit) return;  // miss: never mutates state
        if (!hit->bound_list.empty()) {
          // Rows past the end of the bound window are inert.
          auto items = list_items(st, sd.screen_id, hit->bound_list);
          int offset = list_offset(st, sd.screen_id, hit->bound_list);
          if (static_cast<std::size_t>(offset + hit->list_index) >=
              items.size())
            return;
        }
        apply_ops(st,
                  action.kind == ActionKind::kClick ? hit->on_click
                                                    : hit->on_long_press,
                  hit, sd);
        break;
      }
      case ActionKind::kSwipe: {
        const int dx = action.coordinate2->x - action.coordinate->x;
        const int dy = action.coordinate2->y - action.coordinate->y;
        SwipeDirection dir;
        if (std::abs(dx) > std::abs(dy))
          dir = dx > 0 ? SwipeDirection::kRight : SwipeDirection::kLeft;
        else
          dir = dy > 0 ? SwipeDirection::kDown : SwipeDirection::kUp;
        for (const auto& r : sd.swipe_rules)
          if (r.direction == dir) {
            apply_ops(st, r.ops, nullptr, sd);
            break;
          }
        break;
      }
      case ActionKind::kType: {
        for (const auto& e : sd.elements) {
          if (e.kind != ElementKind::kTextField) continue;
          auto& em = st.app_states[sd.screen_id][e.element_id];
          if (em["focused"] == "true") {
            em["text"] += *action.text;  // append semantics
            break;
          }
        }
        break;
      }
      case ActionKind::kSystemButton: {
        if (*action.button == SystemButton::kHome)
          st.current_screen = def_.home_screen;
        else if (!sd.back_target.empty())
          st.current_screen = sd.back_target;
        break;
      }
      case ActionKind::kTerminate:
        st.done = true;
        break;
      case ActionKind::kAnswer:
        st.answer_given = *action.text;
        st.done = true;
        break;
    }
  }

  EnvDefinition def_;
};

}  // namespace minidroid
