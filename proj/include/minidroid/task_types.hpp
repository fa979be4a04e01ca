#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "minidroid/errors.hpp"

namespace minidroid {

enum class Difficulty { kEasy, kMedium, kHard };

inline const char* to_string(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
  }
  return "?";
}

inline Difficulty difficulty_from_string(const std::string& s) {
  if (s == "easy") return Difficulty::kEasy;
  if (s == "medium") return Difficulty::kMedium;
  if (s == "hard") return Difficulty::kHard;
  throw ValidationError("unknown difficulty: " + s);
}

// One goal instance: a template plus the parameter values drawn from its
// seed. goal_text carries every parameter value verbatim.
struct TaskSpec {
  std::string template_id;
  std::string goal_text;
  std::map<std::string, std::string> params;
  Difficulty difficulty = Difficulty::kEasy;
  std::uint64_t seed = 0;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

}  // namespace minidroid
