#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "minidroid/device.hpp"
#include "minidroid/env.hpp"

namespace minidroid {

// One expert step: the screens around an action plus the verbalized intent.
struct DemoStep {
  Screen pre_obs;
  Screen post_obs;
  std::string instruction;
  Action action;

  friend bool operator==(const DemoStep&, const DemoStep&) = default;
};

struct Demonstration {
  TaskSpec task;
  std::vector<DemoStep> steps;

  friend bool operator==(const Demonstration&, const Demonstration&) = default;

  std::string id() const {
    return task.template_id + "#" + std::to_string(task.seed);
  }
};

// A single-step supervised example carved out of a demonstration.
struct TrainingSample {
  std::string sample_id;
  std::string task_goal;
  std::string instruction;
  Screen observation;
  Action expert_action;
  std::string demo_id;
  int step_index = 0;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

inline std::string camel_case(const std::string& snake) {
  std::string out;
  bool up = true;
  for (char ch : snake) {
    if (ch == '_') {
      up = true;
      continue;
    }
    out += up ? static_cast<char>(std::toupper(ch)) : ch;
    up = false;
  }
  return out;
}

// Deterministic timestamp-shaped suffix for sample ids. Real wall time would
// break reproducibility, so the digits derive from the demo identity.
inline std::string pseudo_timestamp(const std::string& template_id,
                                    std::uint64_t seed, int step) {
  std::uint64_t h = derive_seed(seed, {std::hash<std::string>{}(template_id),
                                       static_cast<std::uint64_t>(step)});
  char buf[32];
  std::snprintf(buf, sizeof(buf), "20250825_%02d%02d%02d",
                static_cast<int>(h % 24), static_cast<int>((h / 24) % 60),
                static_cast<int>((h / 1440) % 60));
  return buf;
}

// Draws the template's parameters from (template_id, seed) and renders the
// goal text. Pure; two calls with equal arguments agree bit for bit.
inline TaskSpec instantiate_task(const EnvDefinition& def,
                                 const std::string& template_id,
                                 std::uint64_t seed) {
  const TaskDef* td = def.find_task(template_id);
  if (!td) throw ConfigError("unknown task template: " + template_id);

  TaskSpec task;
  task.template_id = template_id;
  task.difficulty = td->difficulty;
  task.seed = seed;
  Rng rng(derive_seed(seed, {std::hash<std::string>{}(template_id)}));
  for (const auto& [name, gen] : td->params)
    task.params[name] = generate_value(gen, rng);
  task.goal_text = resolve_slots(td->goal_template, task.params, seed);
  return task;
}

// Replays the template's scripted expert and records one step per action.
// The demonstration ends in a successful terminal state by construction; a
// script that fails its own task is a template bug.
inline Demonstration record_demonstration(const TaskSuite& suite,
                                          const Env& env,
                                          const TaskSpec& task) {
  auto it = suite.experts.find(task.template_id);
  if (it == suite.experts.end())
    throw ConfigError("no expert script for template: " + task.template_id);

  Demonstration demo;
  demo.task = task;
  EnvState st = env.reset(task, task.seed);

  for (std::size_t i = 0; i < it->second.size(); ++i) {
    const ScriptStep& s = it->second[i];
    const Screen pre = env.render(st);

    Action a;
    switch (s.op) {
      case ScriptStep::Op::kClickElem:
      case ScriptStep::Op::kLongPressElem: {
        const UiElement* e = pre.find(s.elem);
        if (!e)
          throw InternalError("expert step " + std::to_string(i) + " of " +
                              task.template_id + ": element " + s.elem +
                              " not on screen " + pre.screen_id);
        a = s.op == ScriptStep::Op::kClickElem
                ? Action::click(e->bbox.center())
                : Action::long_press(e->bbox.center());
        break;
      }
      case ScriptStep::Op::kSwipeCells:
        a = Action::swipe(cell_center(s.c1, s.r1), cell_center(s.c2, s.r2));
        break;
      case ScriptStep::Op::kTypeParam:
        a = Action::type_text(task.params.at(s.param));
        break;
      case ScriptStep::Op::kSystemButton:
        a = Action::system_button(s.button);
        break;
      case ScriptStep::Op::kAnswerParam:
        a = Action::answer(task.params.at(s.param));
        break;
      case ScriptStep::Op::kTerminate:
        a = Action::terminate(TerminateStatus::kSuccess);
        break;
    }

    auto [next, out] = env.step(st, a);
    DemoStep step;
    step.pre_obs = pre;
    step.post_obs = out.observation;
    step.instruction = resolve_slots(s.instruction, task.params, st.seed);
    step.action = a;
    demo.steps.push_back(std::move(step));
    st = std::move(next);
  }

  if (!st.done || !env.check_success(st, task))
    throw InternalError("expert script for " + task.template_id +
                        " did not reach success (failing at step " +
                        std::to_string(it->second.size() - 1) + ")");
  return demo;
}

// Splits a demonstration into per-step samples, dropping steps whose action
// left the observation unchanged.
inline std::vector<TrainingSample> decompose_demo(const Demonstration& demo) {
  std::vector<TrainingSample> out;
  for (std::size_t i = 0; i < demo.steps.size(); ++i) {
    const DemoStep& s = demo.steps[i];
    if (s.pre_obs == s.post_obs) continue;
    TrainingSample ts;
    ts.sample_id = "action_" + camel_case(demo.task.template_id) + "_step_" +
                   std::to_string(i) + "_" +
                   pseudo_timestamp(demo.task.template_id, demo.task.seed,
                                    static_cast<int>(i));
    ts.task_goal = demo.task.goal_text;
    ts.instruction = s.instruction;
    ts.observation = s.pre_obs;
    ts.expert_action = s.action;
    ts.demo_id = demo.id();
    ts.step_index = static_cast<int>(i);
    out.push_back(std::move(ts));
  }
  return out;
}

// Demonstrations plus their decomposed samples; the training corpus.
struct Dataset {
  std::vector<Demonstration> demos;
  std::vector<TrainingSample> samples;
  std::vector<int> sample_demo;  // sample index -> demo index

  const Demonstration& demo_of(int sample_idx) const {
    return demos[sample_demo[sample_idx]];
  }
};

inline Dataset build_dataset(const TaskSuite& suite, const Env& env,
                             const std::vector<std::uint64_t>& demo_seeds) {
  Dataset ds;
  for (const auto& td : suite.device.tasks) {
    for (std::uint64_t seed : demo_seeds) {
      TaskSpec task = instantiate_task(suite.device, td.template_id, seed);
      Demonstration demo = record_demonstration(suite, env, task);
      auto samples = decompose_demo(demo);
      int demo_idx = static_cast<int>(ds.demos.size());
      ds.demos.push_back(std::move(demo));
      for (auto& s : samples) {
        ds.samples.push_back(std::move(s));
        ds.sample_demo.push_back(demo_idx);
      }
    }
  }
  return ds;
}

}  // namespace minidroid
