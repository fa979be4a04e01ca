#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "minidroid/curriculum.hpp"

using namespace minidroid;

namespace {

std::pair<int, ErrorRates> entry(int idx) { return {idx, ErrorRates{}}; }

ReplayPools pools_with(std::size_t con, std::size_t type_n,
                       std::size_t param_n) {
  ReplayPools p;
  int idx = 0;
  for (std::size_t i = 0; i < con; ++i) p.con.push_back(entry(idx++));
  for (std::size_t i = 0; i < type_n; ++i) p.type_pool.push_back(entry(idx++));
  for (std::size_t i = 0; i < param_n; ++i)
    p.param_pool.push_back(entry(idx++));
  return p;
}

// Evaluates l = L * sigma(k) * tanh(d/T) in long double with an
// independently coded formula, the oracle for the double implementation.
long double injection_oracle(int L, int k, long double d, int k_max,
                             long double T) {
  long double sigma = 1.0L - static_cast<long double>(k) / k_max;
  if (sigma < 0.0L) sigma = 0.0L;
  const long double x = d / T;
  // tanh via expm1 for small-argument accuracy.
  const long double e = std::expm1(-2.0L * x);
  const long double gate = -e / (e + 2.0L);
  return L * sigma * gate;
}

}  // namespace

TEST_CASE("error rates count the candidate partition") {
  RewardConfig cfg;
  Action expert = Action::click(Point{500, 500});
  std::vector<Action> cands = {
      Action::swipe(Point{1, 1}, Point{2, 2}),     // type error
      Action::swipe(Point{1, 1}, Point{2, 2}),     // type error
      Action::click(Point{900, 900}),              // param error
      Action::click(Point{900, 900}),              // param error
      Action::click(Point{901, 900}),              // param error
      Action::click(Point{505, 505}),              // correct
      Action::click(Point{500, 500}),              // correct
      Action::click(Point{499, 500}),              // correct
  };
  ErrorRates r = estimate_error_rates(cands, expert, cfg);
  CHECK(r.eta_type == doctest::Approx(0.25));
  CHECK(r.eta_param == doctest::Approx(0.375));
  CHECK(r.difficulty() == doctest::Approx(0.625));

  std::vector<Action> all_correct(8, expert);
  ErrorRates rc = estimate_error_rates(all_correct, expert, cfg);
  CHECK(rc.eta_type == 0.0);
  CHECK(rc.eta_param == 0.0);

  std::vector<Action> all_type(8, Action::terminate(TerminateStatus::kSuccess));
  ErrorRates rt = estimate_error_rates(all_type, expert, cfg);
  CHECK(rt.eta_type == 1.0);
  CHECK(rt.eta_param == 0.0);

  CHECK_THROWS_AS(estimate_error_rates({}, expert, cfg), UsageError);
}

TEST_CASE("pool assignment thresholds and tie-breaks") {
  CHECK(assign_pool(ErrorRates{0.5, 0.25}, 0.25) == PoolId::kType);
  CHECK(assign_pool(ErrorRates{0.0, 0.0}, 0.25) == PoolId::kCon);
  CHECK(assign_pool(ErrorRates{0.2, 0.2}, 0.25) == PoolId::kCon);
  CHECK(assign_pool(ErrorRates{0.25, 0.5}, 0.25) == PoolId::kParam);
  // Equal rates at the threshold go to the type pool.
  CHECK(assign_pool(ErrorRates{0.25, 0.25}, 0.25) == PoolId::kType);

  // Exhaustive rule-table oracle over a grid.
  const double tau = 0.25;
  for (int t8 = 0; t8 <= 8; ++t8)
    for (int p8 = 0; t8 + p8 <= 8; ++p8) {
      ErrorRates r{t8 / 8.0, p8 / 8.0};
      PoolId expected;
      if (r.eta_type >= tau && r.eta_type >= r.eta_param)
        expected = PoolId::kType;
      else if (r.eta_param >= tau && r.eta_param > r.eta_type)
        expected = PoolId::kParam;
      else
        expected = PoolId::kCon;
      CHECK(assign_pool(r, tau) == expected);
    }
}

TEST_CASE("batch composition is exactly (4,2,2) for size 8") {
  ReplayPools p = pools_with(10, 10, 10);
  auto quota = batch_quotas(p, 8);
  CHECK(quota[0] == 4);
  CHECK(quota[1] == 2);
  CHECK(quota[2] == 2);
}

TEST_CASE("an empty pool donates its quota to con") {
  ReplayPools p = pools_with(10, 0, 10);
  auto quota = batch_quotas(p, 8);
  CHECK(quota[0] == 6);
  CHECK(quota[1] == 0);
  CHECK(quota[2] == 2);
}

TEST_CASE("an empty con pool spreads over the live pools") {
  ReplayPools p = pools_with(0, 10, 10);
  auto quota = batch_quotas(p, 8);
  CHECK(quota[0] == 0);
  CHECK(quota[1] + quota[2] == 8);
  CHECK(quota[1] == 4);
  CHECK(quota[2] == 4);
}

TEST_CASE("sample_batch is deterministic in the seed and errors when empty") {
  ReplayPools p = pools_with(5, 5, 5);
  auto a = sample_batch(p, 8, 42);
  auto b = sample_batch(p, 8, 42);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].first == b[i].first);
  auto c = sample_batch(p, 8, 43);
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != c[i].first) same = false;
  CHECK_FALSE(same);

  ReplayPools empty;
  CHECK_THROWS_AS(sample_batch(empty, 8, 1), UsageError);
}

TEST_CASE("empirical pool frequencies stay within one percent") {
  ReplayPools p = pools_with(40, 40, 40);
  const int batches = 10000;
  std::array<long, 3> seen{};
  for (int b = 0; b < batches; ++b) {
    auto batch = sample_batch(p, 8, 5000 + b);
    for (const auto& [idx, rates] : batch) {
      if (idx < 40)
        seen[0]++;
      else if (idx < 80)
        seen[1]++;
      else
        seen[2]++;
    }
  }
  const double total = 8.0 * batches;
  CHECK(std::abs(seen[0] / total - 0.50) < 0.01);
  CHECK(std::abs(seen[1] / total - 0.25) < 0.01);
  CHECK(std::abs(seen[2] / total - 0.25) < 0.01);
}

TEST_CASE("injection length formula boundary cases") {
  ScheduleConfig sched;  // k_max 1000, T 0.5
  auto [l0, p0] = injection_length(10, 0, 0.0, sched);
  CHECK(l0 == 0.0);
  CHECK(p0 == 0);
  auto [l1, p1] = injection_length(10, 1000, 1.0, sched);
  CHECK(l1 == 0.0);
  CHECK(p1 == 0);
  auto [l2, p2] = injection_length(10, 2000, 1.0, sched);
  CHECK(l2 == 0.0);
  CHECK(p2 == 0);

  auto [l3, p3] = injection_length(10, 0, 1.0, sched);
  CHECK(l3 == doctest::Approx(10.0 * std::tanh(2.0)).epsilon(1e-12));
  CHECK(l3 == doctest::Approx(9.64027580075817).epsilon(1e-9));
  CHECK(p3 == 9);

  auto [l4, p4] = injection_length(10, 500, 1.0, sched);
  CHECK(l4 == doctest::Approx(5.0 * std::tanh(2.0)).epsilon(1e-12));
  CHECK(p4 == 4);
}

TEST_CASE("injection length matches the high-precision oracle") {
  double worst = 0.0;
  Rng rng(31415);
  for (int i = 0; i < 1000; ++i) {
    const int L = static_cast<int>(rng.uniform_int(15));
    const int k = static_cast<int>(rng.uniform_int(2500));
    const double d = rng.uniform_real();
    ScheduleConfig sched;
    sched.k_max = 500 + static_cast<int>(rng.uniform_int(1500));
    sched.temperature = 0.05 + 5.0 * rng.uniform_real();
    auto [l, steps] = injection_length(L, k, d, sched);
    const long double want =
        injection_oracle(L, k, d, sched.k_max, sched.temperature);
    const double denom = std::max(1e-30L, std::abs(want)) == 0.0L
                             ? 1.0
                             : static_cast<double>(std::max(
                                   static_cast<long double>(std::abs(l)),
                                   std::abs(want)));
    const double rel =
        want == 0.0L ? std::abs(l)
                     : static_cast<double>(std::abs(l - want)) / denom;
    worst = std::max(worst, rel);
    CHECK(rel < 1e-12);
    CHECK(steps == static_cast<int>(std::floor(l)));
  }
  MESSAGE("worst relative error: ", worst);
}

TEST_CASE("annealing and difficulty monotonicity") {
  ScheduleConfig sched;
  for (double d : {0.1, 0.5, 1.0}) {
    double prev = 1e18;
    for (int k = 0; k <= sched.k_max; k += 50) {
      auto [l, steps] = injection_length(10, k, d, sched);
      CHECK(l <= prev + 1e-15);
      CHECK(l <= 10.0);
      CHECK(steps <= 10);
      prev = l;
    }
    auto [l_end, p_end] = injection_length(10, sched.k_max, d, sched);
    CHECK(l_end == 0.0);
    CHECK(p_end == 0);
  }
  for (int k : {0, 100, 900}) {
    double prev = -1.0;
    for (double d = 0.0; d <= 1.0; d += 0.05) {
      auto [l, steps] = injection_length(10, k, d, sched);
      CHECK(l >= prev - 1e-15);
      prev = l;
    }
  }
}

TEST_CASE("large temperature collapses the curriculum") {
  // The infinite-temperature limit: the gate vanishes for every difficulty.
  ScheduleConfig flat;
  flat.temperature = 1000.0;
  for (double d = 0.0; d <= 1.0; d += 0.1) {
    auto [l, steps] = injection_length(10, 0, d, flat);
    CHECK(l < 0.1);
    CHECK(steps == 0);
  }
  // At T = 5 the gate is tanh(d/5) <= 0.198: prefixes of at most one step.
  ScheduleConfig t5;
  t5.temperature = 5.0;
  for (double d = 0.0; d <= 1.0; d += 0.1) {
    auto [l, steps] = injection_length(10, 0, d, t5);
    CHECK(l <= 10.0 * std::tanh(1.0 / 5.0) + 1e-12);
    CHECK(steps <= 1);
  }
}

TEST_CASE("build_context slices the demonstration prefix") {
  Demonstration demo;
  demo.task.template_id = "probe";
  for (int i = 0; i < 6; ++i) {
    DemoStep s;
    s.instruction = "step " + std::to_string(i);
    s.action = Action::terminate(TerminateStatus::kSuccess);
    demo.steps.push_back(s);
  }
  TrainingSample sample;
  sample.step_index = 5;
  sample.instruction = "the goal of step five";
  sample.task_goal = "goal";

  Context c0 = build_context(sample, 0, demo);
  CHECK(c0.injected_prefix.empty());
  Context c3 = build_context(sample, 3, demo);
  REQUIRE(c3.injected_prefix.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(c3.injected_prefix[i].first == "step " + std::to_string(i));

  Context again = build_context(sample, 3, demo);
  CHECK(again == c3);

  CHECK_THROWS_AS(build_context(sample, 6, demo), UsageError);
}
