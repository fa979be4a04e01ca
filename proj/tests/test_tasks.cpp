#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "minidroid/tasks.hpp"

using namespace minidroid;

namespace {

const TaskSuite& suite() {
  static TaskSuite s = builtin_suite();
  return s;
}

const Env& env() {
  static Env e(suite().device);
  return e;
}

}  // namespace

TEST_CASE("suite size and app coverage") {
  CHECK(suite().device.tasks.size() >= 20);
  std::set<std::string> apps;
  for (const auto& t : suite().device.tasks)
    apps.insert(t.template_id.substr(0, t.template_id.find('_')));
  CHECK(apps.size() >= 5);
  int easy = 0, medium = 0, hard = 0;
  for (const auto& t : suite().device.tasks) {
    if (t.difficulty == Difficulty::kEasy) ++easy;
    if (t.difficulty == Difficulty::kMedium) ++medium;
    if (t.difficulty == Difficulty::kHard) ++hard;
  }
  CHECK(easy > 0);
  CHECK(medium > 0);
  CHECK(hard > 0);
}

TEST_CASE("instantiate_task is deterministic and seed-sensitive") {
  TaskSpec a = instantiate_task(suite().device, "recorder_save_named", 1);
  TaskSpec b = instantiate_task(suite().device, "recorder_save_named", 1);
  CHECK(a == b);
  TaskSpec c = instantiate_task(suite().device, "recorder_save_named", 2);
  CHECK(a.params.at("filename") != c.params.at("filename"));
}

TEST_CASE("goal text inlines every parameter verbatim") {
  for (const auto& td : suite().device.tasks)
    for (std::uint64_t seed : {1ull, 5ull, 99ull}) {
      TaskSpec t = instantiate_task(suite().device, td.template_id, seed);
      for (const auto& [k, v] : t.params)
        CHECK_MESSAGE(t.goal_text.find(v) != std::string::npos,
                      td.template_id, " goal missing param ", k);
    }
}

TEST_CASE("every template's demonstration replays to success") {
  for (const auto& td : suite().device.tasks)
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      TaskSpec t = instantiate_task(suite().device, td.template_id, seed);
      Demonstration demo;
      REQUIRE_NOTHROW(demo = record_demonstration(suite(), env(), t));
      REQUIRE_FALSE(demo.steps.empty());

      // Independent replay through the environment.
      EnvState st = env().reset(t, t.seed);
      for (const auto& step : demo.steps) {
        CHECK(env().render(st) == step.pre_obs);
        auto [next, out] = env().step(st, step.action);
        CHECK(out.observation == step.post_obs);
        st = std::move(next);
      }
      CHECK(st.done);
      CHECK(env().check_success(st, t));
    }
}

TEST_CASE("recorder demonstration ends by saving then terminating") {
  TaskSpec t = instantiate_task(suite().device, "recorder_save_named", 1);
  Demonstration demo = record_demonstration(suite(), env(), t);
  const DemoStep& save = demo.steps[demo.steps.size() - 2];
  CHECK(save.action.kind == ActionKind::kClick);
  const UiElement* hit = save.pre_obs.element_at(*save.action.coordinate);
  REQUIRE(hit != nullptr);
  CHECK(hit->label == "Save");
}

TEST_CASE("contacts-style demonstration starts with a swipe") {
  TaskSpec t = instantiate_task(suite().device, "contact_add", 1);
  Demonstration demo = record_demonstration(suite(), env(), t);
  CHECK(demo.steps[0].action.kind == ActionKind::kSwipe);
}

TEST_CASE("decompose keeps every effective step") {
  TaskSpec t = instantiate_task(suite().device, "recorder_save_named", 1);
  Demonstration demo = record_demonstration(suite(), env(), t);
  auto samples = decompose_demo(demo);
  CHECK(samples.size() == demo.steps.size());  // scripts contain no no-ops
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(samples[i].observation == demo.steps[i].pre_obs);
    CHECK(samples[i].expert_action == demo.steps[i].action);
  }
}

TEST_CASE("decompose drops steps without observable change") {
  TaskSpec t = instantiate_task(suite().device, "wifi_enable", 1);
  Demonstration demo = record_demonstration(suite(), env(), t);
  // Splice in a miss-click step by hand.
  EnvState st = env().reset(t, t.seed);
  Screen pre = env().render(st);
  auto [st2, out] = env().step(st, Action::click(Point{5, 1200}));
  DemoStep noop;
  noop.pre_obs = pre;
  noop.post_obs = out.observation;
  noop.instruction = "Tap a blank part of the screen.";
  noop.action = Action::click(Point{5, 1200});
  Demonstration spliced = demo;
  spliced.steps.insert(spliced.steps.begin(), noop);

  auto samples = decompose_demo(spliced);
  CHECK(samples.size() == demo.steps.size());
  for (const auto& s : samples) CHECK(s.instruction != noop.instruction);
}

TEST_CASE("sample ids follow the exported format") {
  TaskSpec t = instantiate_task(suite().device, "recorder_save_named", 1);
  Demonstration demo = record_demonstration(suite(), env(), t);
  auto samples = decompose_demo(demo);
  CHECK(samples[0].sample_id.rfind("action_RecorderSaveNamed_step_0_", 0) == 0);
  // Deterministic: re-deriving gives the same ids.
  auto again = decompose_demo(demo);
  for (std::size_t i = 0; i < samples.size(); ++i)
    CHECK(samples[i].sample_id == again[i].sample_id);
}

TEST_CASE("full dataset is several hundred samples with click dominant") {
  Dataset ds = build_dataset(suite(), env(), {1, 2, 3});
  CHECK(ds.samples.size() >= 200);
  std::map<ActionKind, int> freq;
  for (const auto& s : ds.samples) freq[s.expert_action.kind]++;
  for (const auto& [kind, n] : freq)
    CHECK(freq[ActionKind::kClick] >= n);
  CHECK(freq[ActionKind::kSwipe] > 0);
  CHECK(freq[ActionKind::kLongPress] > 0);
  CHECK(freq[ActionKind::kType] > 0);
  CHECK(freq[ActionKind::kAnswer] > 0);
  CHECK(freq[ActionKind::kSystemButton] > 0);
  CHECK(freq[ActionKind::kTerminate] > 0);
}

TEST_CASE("demonstration decomposition reproduces the demo effect") {
  TaskSpec t = instantiate_task(suite().device, "note_rename", 4);
  Demonstration demo = record_demonstration(suite(), env(), t);
  auto samples = decompose_demo(demo);
  EnvState st = env().reset(t, t.seed);
  for (const auto& s : samples)
    std::tie(st, std::ignore) = env().step(st, s.expert_action);
  CHECK(st.done);
  CHECK(env().check_success(st, t));
}

TEST_CASE("missing expert script is a config error") {
  TaskSpec t = instantiate_task(suite().device, "wifi_enable", 1);
  t.template_id = "wifi_enable";
  TaskSuite broken;
  broken.device = suite().device;
  CHECK_THROWS_AS(record_demonstration(broken, env(), t), ConfigError);
}
