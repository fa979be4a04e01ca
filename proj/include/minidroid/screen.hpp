#pragma once

#include <map>
#include <string>
#include <vector>

#include "minidroid/action.hpp"
#include "minidroid/errors.hpp"

namespace minidroid {

inline constexpr int kScreenWidth = 1080;
inline constexpr int kScreenHeight = 2400;

// Reserved element id carrying episode status on terminal observations.
inline constexpr const char* kSessionStatusId = "session_status";

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const Rect&, const Rect&) = default;

  bool contains(const Point& p) const {
    return p.x >= x && p.x < x + w && p.y >= y && p.y < y + h;
  }
  Point center() const { return Point{x + w / 2, y + h / 2}; }
  bool intersects(const Rect& o) const {
    return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
  }
};

enum class ElementKind {
  kButton,
  kIcon,
  kTextField,
  kListItem,
  kAppIcon,
  kToggle,
};

inline constexpr int kNumElementKinds = 6;

inline const char* to_string(ElementKind k) {
  switch (k) {
    case ElementKind::kButton: return "button";
    case ElementKind::kIcon: return "icon";
    case ElementKind::kTextField: return "text_field";
    case ElementKind::kListItem: return "list_item";
    case ElementKind::kAppIcon: return "app_icon";
    case ElementKind::kToggle: return "toggle";
  }
  return "?";
}

inline ElementKind element_kind_from_string(const std::string& s) {
  if (s == "button") return ElementKind::kButton;
  if (s == "icon") return ElementKind::kIcon;
  if (s == "text_field") return ElementKind::kTextField;
  if (s == "list_item") return ElementKind::kListItem;
  if (s == "app_icon") return ElementKind::kAppIcon;
  if (s == "toggle") return ElementKind::kToggle;
  throw ValidationError("unknown element kind: " + s);
}

struct UiElement {
  std::string element_id;
  ElementKind kind = ElementKind::kButton;
  std::string label;
  Rect bbox;
  std::map<std::string, std::string> state;

  friend bool operator==(const UiElement&, const UiElement&) = default;
};

// A rendered observation: the typed elements visible at one instant.
struct Screen {
  std::string screen_id;
  std::vector<UiElement> elements;
  int width = kScreenWidth;
  int height = kScreenHeight;

  friend bool operator==(const Screen&, const Screen&) = default;

  const UiElement* find(const std::string& element_id) const {
    for (const auto& e : elements)
      if (e.element_id == element_id) return &e;
    return nullptr;
  }

  // The unique element whose bbox contains p, or nullptr (a miss).
  const UiElement* element_at(const Point& p) const {
    for (const auto& e : elements)
      if (e.bbox.contains(p)) return &e;
    return nullptr;
  }
};

// Structural invariants: bboxes in bounds with positive area, unique ids,
// pairwise non-overlapping regions, text fields owning a `text` state key.
inline void validate_screen(const Screen& s) {
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    const auto& e = s.elements[i];
    if (e.bbox.w <= 0 || e.bbox.h <= 0)
      throw ValidationError(s.screen_id + "/" + e.element_id +
                            ": bbox must have positive area");
    if (e.bbox.x < 0 || e.bbox.y < 0 || e.bbox.x + e.bbox.w > s.width ||
        e.bbox.y + e.bbox.h > s.height)
      throw ValidationError(s.screen_id + "/" + e.element_id +
                            ": bbox out of screen bounds");
    if (e.kind == ElementKind::kTextField && !e.state.count("text"))
      throw ValidationError(s.screen_id + "/" + e.element_id +
                            ": text_field without a text state key");
    for (std::size_t j = i + 1; j < s.elements.size(); ++j) {
      const auto& o = s.elements[j];
      if (e.element_id == o.element_id)
        throw ValidationError(s.screen_id + ": duplicate element id " +
                              e.element_id);
      if (e.bbox.intersects(o.bbox))
        throw ValidationError(s.screen_id + ": overlapping elements " +
                              e.element_id + " and " + o.element_id);
    }
  }
}

}  // namespace minidroid
