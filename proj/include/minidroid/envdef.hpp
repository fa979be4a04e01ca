#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "minidroid/errors.hpp"
#include "minidroid/gens.hpp"
#include "minidroid/rng.hpp"
#include "minidroid/screen.hpp"
#include "minidroid/task_types.hpp"

namespace minidroid {

using Json = nlohmann::ordered_json;

// A single effect executed when an element or gesture rule fires.
struct RuleOp {
  enum class Kind {
    kGoto,            // target = screen id
    kFocus,           // target = element id (text field)
    kSetState,        // target = element id, key, value
    kClearText,       // target = element id
    kAppendFrom,      // src = text field element id, list = list name
    kAppendJoin,      // src + src2 joined with `value`, appended to list
    kRemoveSelected,  // list = list name, removes the item selected earlier
    kSelectSelf,      // stores the fired element's label as the selection
    kCopySelected,    // target = text field, receives the selection
    kScroll,          // list = list name, delta rows
    kToggle,          // target = element id, flips state "on"
  };

  Kind kind = Kind::kGoto;
  std::string target;
  std::string key;
  std::string value;
  std::string src;
  std::string src2;
  std::string list;
  int delta = 0;

  friend bool operator==(const RuleOp&, const RuleOp&) = default;

  static RuleOp go(std::string screen) {
    RuleOp op;
    op.kind = Kind::kGoto;
    op.target = std::move(screen);
    return op;
  }
  static RuleOp focus(std::string elem) {
    RuleOp op;
    op.kind = Kind::kFocus;
    op.target = std::move(elem);
    return op;
  }
  static RuleOp set_state(std::string elem, std::string key,
                          std::string value) {
    RuleOp op;
    op.kind = Kind::kSetState;
    op.target = std::move(elem);
    op.key = std::move(key);
    op.value = std::move(value);
    return op;
  }
  static RuleOp clear_text(std::string elem) {
    RuleOp op;
    op.kind = Kind::kClearText;
    op.target = std::move(elem);
    return op;
  }
  static RuleOp append_from(std::string src, std::string list) {
    RuleOp op;
    op.kind = Kind::kAppendFrom;
    op.src = std::move(src);
    op.list = std::move(list);
    return op;
  }
  static RuleOp append_join(std::string src, std::string src2, std::string sep,
                            std::string list) {
    RuleOp op;
    op.kind = Kind::kAppendJoin;
    op.src = std::move(src);
    op.src2 = std::move(src2);
    op.value = std::move(sep);
    op.list = std::move(list);
    return op;
  }
  static RuleOp remove_selected(std::string list) {
    RuleOp op;
    op.kind = Kind::kRemoveSelected;
    op.list = std::move(list);
    return op;
  }
  static RuleOp copy_selected(std::string elem) {
    RuleOp op;
    op.kind = Kind::kCopySelected;
    op.target = std::move(elem);
    return op;
  }
  static RuleOp select_self() {
    RuleOp op;
    op.kind = Kind::kSelectSelf;
    return op;
  }
  static RuleOp scroll(std::string list, int delta) {
    RuleOp op;
    op.kind = Kind::kScroll;
    op.list = std::move(list);
    op.delta = delta;
    return op;
  }
  static RuleOp toggle(std::string elem) {
    RuleOp op;
    op.kind = Kind::kToggle;
    op.target = std::move(elem);
    return op;
  }
};

inline const char* to_string(RuleOp::Kind k) {
  switch (k) {
    case RuleOp::Kind::kGoto: return "goto";
    case RuleOp::Kind::kFocus: return "focus";
    case RuleOp::Kind::kSetState: return "set_state";
    case RuleOp::Kind::kClearText: return "clear_text";
    case RuleOp::Kind::kAppendFrom: return "append_from";
    case RuleOp::Kind::kAppendJoin: return "append_join";
    case RuleOp::Kind::kRemoveSelected: return "remove_selected";
    case RuleOp::Kind::kSelectSelf: return "select_self";
    case RuleOp::Kind::kCopySelected: return "copy_selected";
    case RuleOp::Kind::kScroll: return "scroll";
    case RuleOp::Kind::kToggle: return "toggle";
  }
  return "?";
}

inline RuleOp::Kind rule_op_kind_from_string(const std::string& s) {
  if (s == "goto") return RuleOp::Kind::kGoto;
  if (s == "focus") return RuleOp::Kind::kFocus;
  if (s == "set_state") return RuleOp::Kind::kSetState;
  if (s == "clear_text") return RuleOp::Kind::kClearText;
  if (s == "append_from") return RuleOp::Kind::kAppendFrom;
  if (s == "append_join") return RuleOp::Kind::kAppendJoin;
  if (s == "remove_selected") return RuleOp::Kind::kRemoveSelected;
  if (s == "select_self") return RuleOp::Kind::kSelectSelf;
  if (s == "copy_selected") return RuleOp::Kind::kCopySelected;
  if (s == "scroll") return RuleOp::Kind::kScroll;
  if (s == "toggle") return RuleOp::Kind::kToggle;
  throw ValidationError("unknown rule op: " + s);
}

enum class SwipeDirection { kUp, kDown, kLeft, kRight };

inline const char* to_string(SwipeDirection d) {
  switch (d) {
    case SwipeDirection::kUp: return "up";
    case SwipeDirection::kDown: return "down";
    case SwipeDirection::kLeft: return "left";
    case SwipeDirection::kRight: return "right";
  }
  return "?";
}

inline SwipeDirection swipe_direction_from_string(const std::string& s) {
  if (s == "up") return SwipeDirection::kUp;
  if (s == "down") return SwipeDirection::kDown;
  if (s == "left") return SwipeDirection::kLeft;
  if (s == "right") return SwipeDirection::kRight;
  throw ValidationError("unknown swipe direction: " + s);
}

// Element as declared in the definition file. Labels and initial state
// values may contain parameter slots ("{filename}") or seed-derived decoy
// slots ("{@filename:2}"), resolved at reset time.
struct ElementDef {
  std::string element_id;
  ElementKind kind = ElementKind::kButton;
  std::string label;
  Rect bbox;
  std::map<std::string, std::string> initial_state;
  std::string bound_list;  // non-empty: label mirrors bound_list[list_index]
  int list_index = 0;
  std::vector<RuleOp> on_click;
  std::vector<RuleOp> on_long_press;

  friend bool operator==(const ElementDef&, const ElementDef&) = default;
};

// Scrollable item collection. Row elements bind to a window over `items`.
struct ListDef {
  std::string name;
  std::vector<std::string> initial_items;

  friend bool operator==(const ListDef&, const ListDef&) = default;
};

struct SwipeRule {
  SwipeDirection direction = SwipeDirection::kUp;
  std::vector<RuleOp> ops;

  friend bool operator==(const SwipeRule&, const SwipeRule&) = default;
};

struct ScreenDef {
  std::string screen_id;
  std::vector<ElementDef> elements;
  std::vector<ListDef> lists;
  std::vector<SwipeRule> swipe_rules;
  std::string back_target;  // empty: back is a no-op on this screen

  friend bool operator==(const ScreenDef&, const ScreenDef&) = default;
};

// One conjunct of a task's success predicate.
struct SuccessClause {
  enum class Kind {
    kListContains,
    kListNotContains,
    kStateEquals,
    kAnswerIs,
    kScreenIs,
  };

  Kind kind = Kind::kListContains;
  std::string list;
  std::string screen;
  std::string element;
  std::string key;
  std::string value;  // may contain {param} slots

  friend bool operator==(const SuccessClause&, const SuccessClause&) = default;
};

inline const char* to_string(SuccessClause::Kind k) {
  switch (k) {
    case SuccessClause::Kind::kListContains: return "list_contains";
    case SuccessClause::Kind::kListNotContains: return "list_not_contains";
    case SuccessClause::Kind::kStateEquals: return "state_equals";
    case SuccessClause::Kind::kAnswerIs: return "answer_is";
    case SuccessClause::Kind::kScreenIs: return "screen_is";
  }
  return "?";
}

inline SuccessClause::Kind success_clause_kind_from_string(
    const std::string& s) {
  if (s == "list_contains") return SuccessClause::Kind::kListContains;
  if (s == "list_not_contains") return SuccessClause::Kind::kListNotContains;
  if (s == "state_equals") return SuccessClause::Kind::kStateEquals;
  if (s == "answer_is") return SuccessClause::Kind::kAnswerIs;
  if (s == "screen_is") return SuccessClause::Kind::kScreenIs;
  throw ValidationError("unknown success clause kind: " + s);
}

// Per-episode state override applied at reset, after defaults.
struct InitialOverride {
  std::string screen;
  std::string element;  // empty when targeting a list
  std::string list;     // empty when targeting an element state
  std::string key;
  std::string value;                // element state value, {param} allowed
  std::vector<std::string> items;   // list contents, {param} allowed

  friend bool operator==(const InitialOverride&,
                         const InitialOverride&) = default;
};

// Data half of a task template: goal wording, parameter generators,
// success predicate and initial-state tweaks. The scripted expert for the
// template lives in code, keyed by template_id.
struct TaskDef {
  std::string template_id;
  std::string goal_template;  // with {param} slots
  Difficulty difficulty = Difficulty::kEasy;
  std::vector<std::pair<std::string, std::string>> params;  // name -> gen
  std::vector<SuccessClause> success;
  std::vector<InitialOverride> initial;

  friend bool operator==(const TaskDef&, const TaskDef&) = default;
};

inline constexpr int kEnvFormatVersion = 1;

struct EnvDefinition {
  int format_version = kEnvFormatVersion;
  std::string home_screen;
  int width = kScreenWidth;
  int height = kScreenHeight;
  int horizon = 30;
  std::vector<ScreenDef> screens;
  std::vector<TaskDef> tasks;
  // Fault injection for robustness scenarios: actions of these kinds are
  // silently dropped by the environment.
  std::vector<ActionKind> fault_drop_kinds;

  friend bool operator==(const EnvDefinition&, const EnvDefinition&) = default;

  const ScreenDef* find_screen(const std::string& id) const {
    for (const auto& s : screens)
      if (s.screen_id == id) return &s;
    return nullptr;
  }
  const TaskDef* find_task(const std::string& template_id) const {
    for (const auto& t : tasks)
      if (t.template_id == template_id) return &t;
    return nullptr;
  }
  // Lists have globally unique names; returns the owning screen.
  const ScreenDef* screen_of_list(const std::string& list) const {
    for (const auto& s : screens)
      for (const auto& l : s.lists)
        if (l.name == list) return &s;
    return nullptr;
  }
  // Element ids are globally unique; returns the owning screen.
  const ScreenDef* screen_of_element(const std::string& elem) const {
    for (const auto& s : screens)
      for (const auto& e : s.elements)
        if (e.element_id == elem) return &s;
    return nullptr;
  }
};

// --- parameter slot resolution -------------------------------------------

// Replaces "{key}" with params.at(key) and "{@gen:slot}" with a value drawn
// from the named generator seeded by (seed, slot). Unknown {key} throws.
inline std::string resolve_slots(const std::string& text,
                                 const std::map<std::string, std::string>& params,
                                 std::uint64_t seed) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] != '{') {
      out += text[i++];
      continue;
    }
    auto close = text.find('}', i);
    if (close == std::string::npos)
      throw ValidationError("unterminated slot in: " + text);
    std::string slot = text.substr(i + 1, close - i - 1);
    if (!slot.empty() && slot[0] == '@') {
      auto colon = slot.find(':');
      if (colon == std::string::npos)
        throw ValidationError("decoy slot needs an index: " + slot);
      std::string gen = slot.substr(1, colon - 1);
      std::uint64_t idx = std::stoull(slot.substr(colon + 1));
      Rng rng(derive_seed(seed, {0x6465636fULL, idx}));
      out += generate_value(gen, rng);
    } else {
      auto it = params.find(slot);
      if (it == params.end())
        throw ValidationError("unknown parameter slot {" + slot + "}");
      out += it->second;
    }
    i = close + 1;
  }
  return out;
}

// --- JSON (de)serialization ------------------------------------------------

inline Json to_json(const RuleOp& op) {
  Json j;
  j["op"] = to_string(op.kind);
  switch (op.kind) {
    case RuleOp::Kind::kGoto:
    case RuleOp::Kind::kFocus:
    case RuleOp::Kind::kClearText:
    case RuleOp::Kind::kToggle:
    case RuleOp::Kind::kCopySelected:
      j["target"] = op.target;
      break;
    case RuleOp::Kind::kSetState:
      j["target"] = op.target;
      j["key"] = op.key;
      j["value"] = op.value;
      break;
    case RuleOp::Kind::kAppendFrom:
      j["src"] = op.src;
      j["list"] = op.list;
      break;
    case RuleOp::Kind::kAppendJoin:
      j["src"] = op.src;
      j["src2"] = op.src2;
      j["value"] = op.value;
      j["list"] = op.list;
      break;
    case RuleOp::Kind::kRemoveSelected:
      j["list"] = op.list;
      break;
    case RuleOp::Kind::kSelectSelf:
      break;
    case RuleOp::Kind::kScroll:
      j["list"] = op.list;
      j["delta"] = op.delta;
      break;
  }
  return j;
}

inline RuleOp rule_op_from_json(const Json& j) {
  RuleOp op;
  op.kind = rule_op_kind_from_string(j.at("op").get<std::string>());
  if (j.contains("target")) op.target = j["target"].get<std::string>();
  if (j.contains("key")) op.key = j["key"].get<std::string>();
  if (j.contains("value")) op.value = j["value"].get<std::string>();
  if (j.contains("src")) op.src = j["src"].get<std::string>();
  if (j.contains("src2")) op.src2 = j["src2"].get<std::string>();
  if (j.contains("list")) op.list = j["list"].get<std::string>();
  if (j.contains("delta")) op.delta = j["delta"].get<int>();
  return op;
}

inline Json to_json(const EnvDefinition& def) {
  Json j;
  j["format_version"] = def.format_version;
  j["home_screen"] = def.home_screen;
  j["width"] = def.width;
  j["height"] = def.height;
  j["horizon"] = def.horizon;
  j["screens"] = Json::array();
  for (const auto& s : def.screens) {
    Json js;
    js["screen_id"] = s.screen_id;
    if (!s.back_target.empty()) js["back_target"] = s.back_target;
    js["elements"] = Json::array();
    for (const auto& e : s.elements) {
      Json je;
      je["element_id"] = e.element_id;
      je["kind"] = to_string(e.kind);
      je["label"] = e.label;
      je["bbox"] = {e.bbox.x, e.bbox.y, e.bbox.w, e.bbox.h};
      if (!e.initial_state.empty()) je["initial_state"] = e.initial_state;
      if (!e.bound_list.empty()) {
        je["bound_list"] = e.bound_list;
        je["list_index"] = e.list_index;
      }
      if (!e.on_click.empty()) {
        je["on_click"] = Json::array();
        for (const auto& op : e.on_click) je["on_click"].push_back(to_json(op));
      }
      if (!e.on_long_press.empty()) {
        je["on_long_press"] = Json::array();
        for (const auto& op : e.on_long_press)
          je["on_long_press"].push_back(to_json(op));
      }
      js["elements"].push_back(je);
    }
    if (!s.lists.empty()) {
      js["lists"] = Json::array();
      for (const auto& l : s.lists) {
        Json jl;
        jl["name"] = l.name;
        jl["initial_items"] = l.initial_items;
        js["lists"].push_back(jl);
      }
    }
    if (!s.swipe_rules.empty()) {
      js["swipe_rules"] = Json::array();
      for (const auto& r : s.swipe_rules) {
        Json jr;
        jr["direction"] = to_string(r.direction);
        jr["ops"] = Json::array();
        for (const auto& op : r.ops) jr["ops"].push_back(to_json(op));
        js["swipe_rules"].push_back(jr);
      }
    }
    j["screens"].push_back(js);
  }
  j["tasks"] = Json::array();
  for (const auto& t : def.tasks) {
    Json jt;
    jt["template_id"] = t.template_id;
    jt["goal_template"] = t.goal_template;
    jt["difficulty"] = to_string(t.difficulty);
    jt["params"] = Json::array();
    for (const auto& [name, gen] : t.params)
      jt["params"].push_back({{"name", name}, {"gen", gen}});
    jt["success"] = Json::array();
    for (const auto& c : t.success) {
      Json jc;
      jc["kind"] = to_string(c.kind);
      if (!c.list.empty()) jc["list"] = c.list;
      if (!c.screen.empty()) jc["screen"] = c.screen;
      if (!c.element.empty()) jc["element"] = c.element;
      if (!c.key.empty()) jc["key"] = c.key;
      jc["value"] = c.value;
      jt["success"].push_back(jc);
    }
    if (!t.initial.empty()) {
      jt["initial"] = Json::array();
      for (const auto& o : t.initial) {
        Json jo;
        jo["screen"] = o.screen;
        if (!o.element.empty()) {
          jo["element"] = o.element;
          jo["key"] = o.key;
          jo["value"] = o.value;
        }
        if (!o.list.empty()) {
          jo["list"] = o.list;
          jo["items"] = o.items;
        }
        jt["initial"].push_back(jo);
      }
    }
    j["tasks"].push_back(jt);
  }
  if (!def.fault_drop_kinds.empty()) {
    j["fault_drop_kinds"] = Json::array();
    for (auto k : def.fault_drop_kinds)
      j["fault_drop_kinds"].push_back(to_string(k));
  }
  return j;
}

inline EnvDefinition env_definition_from_json(const Json& j) {
  EnvDefinition def;
  def.format_version = j.at("format_version").get<int>();
  if (def.format_version != kEnvFormatVersion)
    throw ConfigError("unsupported env format_version " +
                      std::to_string(def.format_version));
  def.home_screen = j.at("home_screen").get<std::string>();
  def.width = j.at("width").get<int>();
  def.height = j.at("height").get<int>();
  def.horizon = j.at("horizon").get<int>();
  for (const auto& js : j.at("screens")) {
    ScreenDef s;
    s.screen_id = js.at("screen_id").get<std::string>();
    if (js.contains("back_target"))
      s.back_target = js["back_target"].get<std::string>();
    for (const auto& je : js.at("elements")) {
      ElementDef e;
      e.element_id = je.at("element_id").get<std::string>();
      e.kind = element_kind_from_string(je.at("kind").get<std::string>());
      e.label = je.at("label").get<std::string>();
      const auto& bb = je.at("bbox");
      e.bbox = Rect{bb.at(0).get<int>(), bb.at(1).get<int>(),
                    bb.at(2).get<int>(), bb.at(3).get<int>()};
      if (je.contains("initial_state"))
        e.initial_state =
            je["initial_state"].get<std::map<std::string, std::string>>();
      if (je.contains("bound_list")) {
        e.bound_list = je["bound_list"].get<std::string>();
        e.list_index = je.at("list_index").get<int>();
      }
      if (je.contains("on_click"))
        for (const auto& jo : je["on_click"])
          e.on_click.push_back(rule_op_from_json(jo));
      if (je.contains("on_long_press"))
        for (const auto& jo : je["on_long_press"])
          e.on_long_press.push_back(rule_op_from_json(jo));
      s.elements.push_back(std::move(e));
    }
    if (js.contains("lists"))
      for (const auto& jl : js["lists"]) {
        ListDef l;
        l.name = jl.at("name").get<std::string>();
        l.initial_items =
            jl.at("initial_items").get<std::vector<std::string>>();
        s.lists.push_back(std::move(l));
      }
    if (js.contains("swipe_rules"))
      for (const auto& jr : js["swipe_rules"]) {
        SwipeRule r;
        r.direction =
            swipe_direction_from_string(jr.at("direction").get<std::string>());
        for (const auto& jo : jr.at("ops"))
          r.ops.push_back(rule_op_from_json(jo));
        s.swipe_rules.push_back(std::move(r));
      }
    def.screens.push_back(std::move(s));
  }
  for (const auto& jt : j.at("tasks")) {
    TaskDef t;
    t.template_id = jt.at("template_id").get<std::string>();
    t.goal_template = jt.at("goal_template").get<std::string>();
    t.difficulty = difficulty_from_string(jt.at("difficulty").get<std::string>());
    for (const auto& jp : jt.at("params"))
      t.params.emplace_back(jp.at("name").get<std::string>(),
                            jp.at("gen").get<std::string>());
    for (const auto& jc : jt.at("success")) {
      SuccessClause c;
      c.kind = success_clause_kind_from_string(jc.at("kind").get<std::string>());
      if (jc.contains("list")) c.list = jc["list"].get<std::string>();
      if (jc.contains("screen")) c.screen = jc["screen"].get<std::string>();
      if (jc.contains("element")) c.element = jc["element"].get<std::string>();
      if (jc.contains("key")) c.key = jc["key"].get<std::string>();
      c.value = jc.at("value").get<std::string>();
      t.success.push_back(std::move(c));
    }
    if (jt.contains("initial"))
      for (const auto& jo : jt["initial"]) {
        InitialOverride o;
        o.screen = jo.at("screen").get<std::string>();
        if (jo.contains("element")) {
          o.element = jo["element"].get<std::string>();
          o.key = jo.at("key").get<std::string>();
          o.value = jo.at("value").get<std::string>();
        }
        if (jo.contains("list")) {
          o.list = jo["list"].get<std::string>();
          o.items = jo.at("items").get<std::vector<std::string>>();
        }
        t.initial.push_back(std::move(o));
      }
    def.tasks.push_back(std::move(t));
  }
  if (j.contains("fault_drop_kinds"))
    for (const auto& jk : j["fault_drop_kinds"])
      def.fault_drop_kinds.push_back(
          action_kind_from_string(jk.get<std::string>()));
  return def;
}

// Static consistency checks on a definition: referenced screens, lists and
// elements must exist, and every screen's static geometry must be valid.
inline void validate_definition(const EnvDefinition& def) {
  auto require = [](bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
  };
  require(def.find_screen(def.home_screen) != nullptr,
          "home screen missing: " + def.home_screen);

  auto check_ops = [&](const std::vector<RuleOp>& ops,
                       const std::string& where) {
    for (const auto& op : ops) {
      switch (op.kind) {
        case RuleOp::Kind::kGoto:
          require(def.find_screen(op.target) != nullptr,
                  where + ": goto target missing: " + op.target);
          break;
        case RuleOp::Kind::kFocus:
        case RuleOp::Kind::kClearText:
        case RuleOp::Kind::kToggle:
        case RuleOp::Kind::kCopySelected:
        case RuleOp::Kind::kSetState:
          require(def.screen_of_element(op.target) != nullptr,
                  where + ": op target missing: " + op.target);
          break;
        case RuleOp::Kind::kAppendFrom:
        case RuleOp::Kind::kAppendJoin:
        case RuleOp::Kind::kRemoveSelected:
        case RuleOp::Kind::kScroll:
          require(def.screen_of_list(op.list) != nullptr,
                  where + ": unknown list " + op.list);
          break;
        case RuleOp::Kind::kSelectSelf:
          break;
      }
    }
  };

  for (const auto& s : def.screens) {
    Screen probe;
    probe.screen_id = s.screen_id;
    probe.width = def.width;
    probe.height = def.height;
    for (const auto& e : s.elements) {
      UiElement u;
      u.element_id = e.element_id;
      u.kind = e.kind;
      u.label = e.label;
      u.bbox = e.bbox;
      if (e.kind == ElementKind::kTextField) u.state["text"] = "";
      probe.elements.push_back(u);
    }
    try {
      validate_screen(probe);
    } catch (const ValidationError& err) {
      throw ConfigError(std::string("invalid screen geometry: ") + err.what());
    }
    if (!s.back_target.empty())
      require(def.find_screen(s.back_target) != nullptr,
              s.screen_id + ": back target missing: " + s.back_target);
    for (const auto& e : s.elements) {
      check_ops(e.on_click, s.screen_id + "/" + e.element_id);
      check_ops(e.on_long_press, s.screen_id + "/" + e.element_id);
      if (!e.bound_list.empty())
        require(def.screen_of_list(e.bound_list) == &s,
                s.screen_id + "/" + e.element_id + ": bound to foreign list");
    }
    for (const auto& r : s.swipe_rules) check_ops(r.ops, s.screen_id);
  }
  for (const auto& t : def.tasks) {
    for (const auto& c : t.success) {
      if (!c.screen.empty())
        require(def.find_screen(c.screen) != nullptr,
                t.template_id + ": success clause screen missing");
      if (!c.list.empty())
        require(def.screen_of_list(c.list) != nullptr,
                t.template_id + ": success clause list missing");
    }
  }
}

}  // namespace minidroid
