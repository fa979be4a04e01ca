#pragma once

#include <optional>

#include "minidroid/action.hpp"
#include "minidroid/policy.hpp"

namespace minidroid {

struct RewardConfig {
  double epsilon = 50.0;  // coordinate tolerance in pixels
  double lambda_fmt = 1.0;
  double lambda_content = 1.0;

  double max_total() const { return lambda_fmt + lambda_content; }
};

enum class ErrorClass { kCorrect, kTypeError, kParamError };

inline const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::kCorrect: return "correct";
    case ErrorClass::kTypeError: return "type_error";
    case ErrorClass::kParamError: return "param_error";
  }
  return "?";
}

// 1 iff the token sequence decodes to a well-formed action. Malformed input
// is the zero case, not an error.
inline double format_reward(const TokenSpace& sp,
                            const std::vector<int>& tokens) {
  try {
    Action a = decode_tokens(sp, tokens);
    validate_action(a, kScreenWidth, kScreenHeight);
    return 1.0;
  } catch (const ValidationError&) {
    return 0.0;
  }
}

namespace detail {

// Parameter agreement given equal kinds: coordinates within epsilon, text
// and discrete arguments exact.
inline bool params_match(const Action& a, const Action& expert,
                         const RewardConfig& cfg) {
  switch (expert.kind) {
    case ActionKind::kClick:
    case ActionKind::kLongPress:
      return distance(*a.coordinate, *expert.coordinate) < cfg.epsilon;
    case ActionKind::kSwipe:
      return distance(*a.coordinate, *expert.coordinate) < cfg.epsilon &&
             distance(*a.coordinate2, *expert.coordinate2) < cfg.epsilon;
    case ActionKind::kType:
    case ActionKind::kAnswer:
      return *a.text == *expert.text;
    case ActionKind::kSystemButton:
      return *a.button == *expert.button;
    case ActionKind::kTerminate:
      return *a.status == *expert.status;
  }
  return false;
}

}  // namespace detail

// Binary action-match reward: right primitive kind and parameters inside
// the tolerance.
inline double content_reward(const Action& a, const Action& expert,
                             const RewardConfig& cfg) {
  if (a.kind != expert.kind) return 0.0;
  return detail::params_match(a, expert, cfg) ? 1.0 : 0.0;
}

// Weighted combination; a malformed output earns no content reward.
inline double total_reward(const TokenSpace& sp, const std::vector<int>& tokens,
                           const Action& expert, const RewardConfig& cfg) {
  const double fmt = format_reward(sp, tokens);
  if (fmt == 0.0) return 0.0;
  const Action a = decode_tokens(sp, tokens);
  return cfg.lambda_fmt * fmt + cfg.lambda_content * content_reward(a, expert, cfg);
}

inline double total_reward(const Action& a, const Action& expert,
                           const RewardConfig& cfg) {
  return cfg.lambda_fmt + cfg.lambda_content * content_reward(a, expert, cfg);
}

// Exhaustive three-way partition of a (candidate, expert) pair.
inline ErrorClass classify(const Action& a, const Action& expert,
                           const RewardConfig& cfg) {
  if (a.kind != expert.kind) return ErrorClass::kTypeError;
  return detail::params_match(a, expert, cfg) ? ErrorClass::kCorrect
                                              : ErrorClass::kParamError;
}

}  // namespace minidroid
