#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minidroid/reward.hpp"
#include "minidroid/tasks.hpp"

using namespace minidroid;

namespace {

Context probe_context() {
  Context ctx;
  ctx.observation.screen_id = "probe";
  UiElement save;
  save.element_id = "save";
  save.kind = ElementKind::kButton;
  save.label = "Save";
  save.bbox = Rect{center_of_cell(cell_index(8, 21)).x - 75,
                   center_of_cell(cell_index(8, 21)).y - 40, 150, 80};
  ctx.observation.elements = {save};
  ctx.sub_goal = "Type \"hello\" into the field.";
  ctx.task_goal = "Probe goal \"hello\".";
  return ctx;
}

// Random well-formed action generator covering all seven kinds.
Action random_action(Rng& rng) {
  switch (rng.uniform_int(7)) {
    case 0: return Action::click(Point{static_cast<int>(rng.uniform_int(1080)),
                                       static_cast<int>(rng.uniform_int(2400))});
    case 1:
      return Action::long_press(Point{static_cast<int>(rng.uniform_int(1080)),
                                      static_cast<int>(rng.uniform_int(2400))});
    case 2:
      return Action::swipe(Point{static_cast<int>(rng.uniform_int(1080)),
                                 static_cast<int>(rng.uniform_int(2400))},
                           Point{static_cast<int>(rng.uniform_int(1080)),
                                 static_cast<int>(rng.uniform_int(2400))});
    case 3: {
      std::string t(1 + rng.uniform_int(8), 'a');
      for (auto& c : t) c = static_cast<char>('a' + rng.uniform_int(26));
      return Action::type_text(t);
    }
    case 4:
      return Action::system_button(rng.uniform_int(2) ? SystemButton::kBack
                                                      : SystemButton::kHome);
    case 5:
      return Action::terminate(rng.uniform_int(2) ? TerminateStatus::kSuccess
                                                  : TerminateStatus::kFailure);
    default: {
      std::string t(1 + rng.uniform_int(8), 'a');
      for (auto& c : t) c = static_cast<char>('a' + rng.uniform_int(26));
      return Action::answer(t);
    }
  }
}

}  // namespace

TEST_CASE("format reward accepts decodable and rejects malformed tokens") {
  Context ctx = probe_context();
  TokenSpace sp = TokenSpace::build(ctx);
  const int cell = sp.cell_support[0];

  CHECK(format_reward(sp, {static_cast<int>(ActionKind::kClick), cell}) == 1.0);
  // Missing coordinate token.
  CHECK(format_reward(sp, {static_cast<int>(ActionKind::kClick)}) == 0.0);
  // Swipe with a single coordinate token.
  CHECK(format_reward(sp, {static_cast<int>(ActionKind::kSwipe), cell}) == 0.0);
  // Garbage kind.
  CHECK(format_reward(sp, {42}) == 0.0);
}

TEST_CASE("content reward on coordinates uses the epsilon ball") {
  RewardConfig cfg;
  cfg.epsilon = 50.0;
  Action expert = Action::click(Point{103, 104});
  CHECK(content_reward(Action::click(Point{100, 100}), expert, cfg) == 1.0);
  CHECK(content_reward(Action::click(Point{103, 104 + 49}), expert, cfg) == 1.0);
  CHECK(content_reward(Action::click(Point{103, 104 + 50}), expert, cfg) == 0.0);
  CHECK(content_reward(Action::swipe(Point{100, 100}, Point{100, 500}), expert,
                       cfg) == 0.0);
}

TEST_CASE("content reward on text is an exact string match") {
  RewardConfig cfg;
  Action expert = Action::type_text("presentation_fGwr.m4a");
  CHECK(content_reward(Action::type_text("presentation_fGwr.m4a"), expert,
                       cfg) == 1.0);
  CHECK(content_reward(Action::type_text("presentation_fGwr.m4b"), expert,
                       cfg) == 0.0);
  CHECK(content_reward(Action::type_text("Presentation_fGwr.m4a"), expert,
                       cfg) == 0.0);
  Action ans = Action::answer("42");
  CHECK(content_reward(Action::answer("42"), ans, cfg) == 1.0);
  CHECK(content_reward(Action::answer("42 "), ans, cfg) == 0.0);
}

TEST_CASE("swipe needs both endpoints inside the tolerance") {
  RewardConfig cfg;
  cfg.epsilon = 50.0;
  Action expert = Action::swipe(Point{405, 2050}, Point{405, 1650});
  CHECK(content_reward(Action::swipe(Point{405, 2050}, Point{405, 1650}),
                       expert, cfg) == 1.0);
  CHECK(content_reward(Action::swipe(Point{405, 2050}, Point{405, 1590}),
                       expert, cfg) == 0.0);
  CHECK(content_reward(Action::swipe(Point{405, 1990}, Point{405, 1650}),
                       expert, cfg) == 0.0);
}

TEST_CASE("total reward composes format and content") {
  Context ctx = probe_context();
  TokenSpace sp = TokenSpace::build(ctx);
  RewardConfig cfg;  // weights {1, 1}
  const int cell = sp.cell_support[0];
  Action expert = Action::click(center_of_cell(cell));

  CHECK(total_reward(sp, {static_cast<int>(ActionKind::kClick), cell}, expert,
                     cfg) == 2.0);
  // Well-formed but wrong kind: format only.
  CHECK(total_reward(sp, {static_cast<int>(ActionKind::kTerminate), 2}, expert,
                     cfg) == 1.0);
  // Malformed: nothing.
  CHECK(total_reward(sp, {static_cast<int>(ActionKind::kClick)}, expert, cfg) ==
        0.0);
}

TEST_CASE("classify is the three-way partition") {
  RewardConfig cfg;
  cfg.epsilon = 50.0;
  Action expert = Action::click(Point{500, 500});
  CHECK(classify(Action::swipe(Point{1, 1}, Point{2, 2}), expert, cfg) ==
        ErrorClass::kTypeError);
  CHECK(classify(Action::click(Point{700, 500}), expert, cfg) ==
        ErrorClass::kParamError);
  CHECK(classify(Action::click(Point{505, 500}), expert, cfg) ==
        ErrorClass::kCorrect);
}

TEST_CASE("exactly one error class holds for random pairs") {
  Rng rng(12345);
  const int N = 100000;
  long correct = 0, type_err = 0, param_err = 0;
  RewardConfig cfg;
  for (int i = 0; i < N; ++i) {
    Action a = random_action(rng);
    Action b = random_action(rng);
    switch (classify(a, b, cfg)) {
      case ErrorClass::kCorrect: ++correct; break;
      case ErrorClass::kTypeError: ++type_err; break;
      case ErrorClass::kParamError: ++param_err; break;
    }
    // Consistency: content reward is 1 exactly on the correct class.
    CHECK((content_reward(a, b, cfg) == 1.0) ==
          (classify(a, b, cfg) == ErrorClass::kCorrect));
  }
  CHECK(correct + type_err + param_err == N);
  CHECK(correct > 0);
  CHECK(type_err > 0);
  CHECK(param_err > 0);
}

TEST_CASE("content reward is monotone in epsilon") {
  Rng rng(777);
  for (int i = 0; i < 2000; ++i) {
    Action a = random_action(rng);
    Action b = random_action(rng);
    double prev = 0.0;
    for (double eps : {5.0, 25.0, 50.0, 200.0, 3000.0}) {
      RewardConfig cfg;
      cfg.epsilon = eps;
      const double r = content_reward(a, b, cfg);
      CHECK(r >= prev);
      prev = r;
    }
  }
}
