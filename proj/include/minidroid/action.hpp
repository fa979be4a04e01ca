#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "minidroid/errors.hpp"

namespace minidroid {

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

enum class ActionKind {
  kClick,
  kLongPress,
  kSwipe,
  kType,
  kSystemButton,
  kTerminate,
  kAnswer,
};

inline constexpr int kNumActionKinds = 7;

enum class SystemButton { kBack, kHome };
enum class TerminateStatus { kSuccess, kFailure };

inline const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::kClick: return "click";
    case ActionKind::kLongPress: return "long_press";
    case ActionKind::kSwipe: return "swipe";
    case ActionKind::kType: return "type";
    case ActionKind::kSystemButton: return "system_button";
    case ActionKind::kTerminate: return "terminate";
    case ActionKind::kAnswer: return "answer";
  }
  return "?";
}

inline ActionKind action_kind_from_string(const std::string& s) {
  if (s == "click") return ActionKind::kClick;
  if (s == "long_press") return ActionKind::kLongPress;
  if (s == "swipe") return ActionKind::kSwipe;
  if (s == "type") return ActionKind::kType;
  if (s == "system_button") return ActionKind::kSystemButton;
  if (s == "terminate") return ActionKind::kTerminate;
  if (s == "answer") return ActionKind::kAnswer;
  throw ValidationError("unknown action kind: " + s);
}

inline const char* to_string(SystemButton b) {
  return b == SystemButton::kBack ? "back" : "home";
}

inline const char* to_string(TerminateStatus s) {
  return s == TerminateStatus::kSuccess ? "success" : "failure";
}

// One primitive UI operation. Which optional fields must be present depends
// on `kind`; validate_action enforces the exact argument set.
struct Action {
  ActionKind kind = ActionKind::kClick;
  std::optional<Point> coordinate;
  std::optional<Point> coordinate2;
  std::optional<std::string> text;
  std::optional<SystemButton> button;
  std::optional<TerminateStatus> status;

  friend bool operator==(const Action&, const Action&) = default;

  static Action click(Point p) {
    Action a;
    a.kind = ActionKind::kClick;
    a.coordinate = p;
    return a;
  }
  static Action long_press(Point p) {
    Action a;
    a.kind = ActionKind::kLongPress;
    a.coordinate = p;
    return a;
  }
  static Action swipe(Point from, Point to) {
    Action a;
    a.kind = ActionKind::kSwipe;
    a.coordinate = from;
    a.coordinate2 = to;
    return a;
  }
  static Action type_text(std::string t) {
    Action a;
    a.kind = ActionKind::kType;
    a.text = std::move(t);
    return a;
  }
  static Action system_button(SystemButton b) {
    Action a;
    a.kind = ActionKind::kSystemButton;
    a.button = b;
    return a;
  }
  static Action terminate(TerminateStatus s) {
    Action a;
    a.kind = ActionKind::kTerminate;
    a.status = s;
    return a;
  }
  static Action answer(std::string t) {
    Action a;
    a.kind = ActionKind::kAnswer;
    a.text = std::move(t);
    return a;
  }
};

// Checks the per-kind argument sets and coordinate bounds. Throws
// ValidationError on the first violation.
inline void validate_action(const Action& a, int width, int height) {
  const bool has_c = a.coordinate.has_value();
  const bool has_c2 = a.coordinate2.has_value();
  const bool has_text = a.text.has_value();
  const bool has_btn = a.button.has_value();
  const bool has_status = a.status.has_value();

  auto require = [&](bool cond, const char* what) {
    if (!cond) {
      throw ValidationError(std::string("action ") + to_string(a.kind) + ": " +
                            what);
    }
  };

  switch (a.kind) {
    case ActionKind::kClick:
    case ActionKind::kLongPress:
      require(has_c && !has_c2 && !has_text && !has_btn && !has_status,
              "expects exactly a coordinate");
      break;
    case ActionKind::kSwipe:
      require(has_c && has_c2 && !has_text && !has_btn && !has_status,
              "expects exactly two coordinates");
      break;
    case ActionKind::kType:
      require(!has_c && !has_c2 && has_text && !has_btn && !has_status,
              "expects exactly a text");
      break;
    case ActionKind::kSystemButton:
      require(!has_c && !has_c2 && !has_text && has_btn && !has_status,
              "expects exactly a button");
      break;
    case ActionKind::kTerminate:
      require(!has_c && !has_c2 && !has_text && !has_btn && has_status,
              "expects exactly a status");
      break;
    case ActionKind::kAnswer:
      require(!has_c && !has_c2 && has_text && !has_btn && !has_status,
              "expects exactly a text");
      break;
  }

  auto in_bounds = [&](const Point& p) {
    return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
  };
  if (has_c && !in_bounds(*a.coordinate))
    throw ValidationError("coordinate out of screen bounds");
  if (has_c2 && !in_bounds(*a.coordinate2))
    throw ValidationError("coordinate2 out of screen bounds");
}

inline bool is_well_formed(const Action& a, int width, int height) {
  try {
    validate_action(a, width, height);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace minidroid
