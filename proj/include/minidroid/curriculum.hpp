#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "minidroid/reward.hpp"
#include "minidroid/tasks.hpp"

namespace minidroid {

// Group error statistics for one training input.
struct ErrorRates {
  double eta_type = 0.0;
  double eta_param = 0.0;

  double difficulty() const { return eta_type + eta_param; }

  friend bool operator==(const ErrorRates&, const ErrorRates&) = default;
};

enum class PoolId { kCon, kType, kParam };

inline const char* to_string(PoolId p) {
  switch (p) {
    case PoolId::kCon: return "con";
    case PoolId::kType: return "type";
    case PoolId::kParam: return "param";
  }
  return "?";
}

// Replay buffers plus their sampling ratios. Entries reference samples of a
// Dataset by index; the rates ride along for difficulty gating.
struct ReplayPools {
  std::vector<std::pair<int, ErrorRates>> con;
  std::vector<std::pair<int, ErrorRates>> type_pool;
  std::vector<std::pair<int, ErrorRates>> param_pool;
  double beta_con = 0.5;
  double beta_type = 0.25;
  double beta_param = 0.25;

  std::size_t total() const {
    return con.size() + type_pool.size() + param_pool.size();
  }
};

struct ScheduleConfig {
  int k_max = 1000;
  double temperature = 0.5;
};

// Fraction of candidates with the wrong primitive kind, and with the right
// kind but failing parameters.
inline ErrorRates estimate_error_rates(const std::vector<Action>& candidates,
                                       const Action& expert,
                                       const RewardConfig& cfg) {
  if (candidates.empty())
    throw UsageError("estimate_error_rates: empty candidate list");
  int type_err = 0, param_err = 0;
  for (const auto& a : candidates) {
    switch (classify(a, expert, cfg)) {
      case ErrorClass::kTypeError: ++type_err; break;
      case ErrorClass::kParamError: ++param_err; break;
      case ErrorClass::kCorrect: break;
    }
  }
  const double g = static_cast<double>(candidates.size());
  return ErrorRates{type_err / g, param_err / g};
}

// Threshold routing with ties favoring the type pool.
inline PoolId assign_pool(const ErrorRates& rates, double tau) {
  if (rates.eta_type >= tau && rates.eta_type >= rates.eta_param)
    return PoolId::kType;
  if (rates.eta_param >= tau && rates.eta_param > rates.eta_type)
    return PoolId::kParam;
  return PoolId::kCon;
}

// Deterministic per-batch quotas: largest-remainder rounding of
// ratio * batch_size, with empty pools donating their quota to the
// conventional pool (or, failing that, to the remaining non-empty pools).
inline std::array<int, 3> batch_quotas(const ReplayPools& pools,
                                       int batch_size) {
  const std::array<const std::vector<std::pair<int, ErrorRates>>*, 3> pv = {
      &pools.con, &pools.type_pool, &pools.param_pool};
  std::array<double, 3> ratio = {pools.beta_con, pools.beta_type,
                                 pools.beta_param};

  // Fold the weight of empty pools into con; if con is itself empty, spread
  // it over the non-empty pools proportionally.
  double orphaned = 0.0;
  for (int i = 0; i < 3; ++i)
    if (pv[i]->empty()) {
      orphaned += ratio[i];
      ratio[i] = 0.0;
    }
  if (orphaned > 0.0) {
    if (!pools.con.empty()) {
      ratio[0] += orphaned;
    } else {
      double live = ratio[0] + ratio[1] + ratio[2];
      if (live <= 0.0) throw UsageError("sample_batch: all pools empty");
      for (int i = 0; i < 3; ++i) ratio[i] *= (orphaned + live) / live;
    }
  }

  std::array<int, 3> quota{};
  std::array<double, 3> frac{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double x = ratio[i] * batch_size;
    quota[i] = static_cast<int>(std::floor(x + 1e-9));
    frac[i] = x - quota[i];
    assigned += quota[i];
  }
  while (assigned < batch_size) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (frac[i] > frac[best] + 1e-12 ||
          (std::abs(frac[i] - frac[best]) <= 1e-12 && quota[i] < quota[best]))
        best = i;
    quota[best] += 1;
    frac[best] = -1.0;
    ++assigned;
  }
  return quota;
}

// Draws a balanced batch: per-pool counts from batch_quotas, uniform with
// replacement inside each pool, all driven by the seed.
inline std::vector<std::pair<int, ErrorRates>> sample_batch(
    const ReplayPools& pools, int batch_size, std::uint64_t seed) {
  if (batch_size < 1) throw UsageError("sample_batch: batch_size must be >= 1");
  if (pools.total() == 0) throw UsageError("sample_batch: all pools empty");

  const std::array<const std::vector<std::pair<int, ErrorRates>>*, 3> pv = {
      &pools.con, &pools.type_pool, &pools.param_pool};
  const auto quota = batch_quotas(pools, batch_size);

  std::vector<std::pair<int, ErrorRates>> out;
  out.reserve(batch_size);
  Rng rng(derive_seed(seed, {0x62617463ULL}));
  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < quota[p]; ++i)
      out.push_back((*pv[p])[rng.uniform_int(pv[p]->size())]);
  return out;
}

// Annealed, difficulty-gated prefix length:
//   l = L * max(0, 1 - k/k_max) * tanh(d / T),   prefix = floor(l).
inline std::pair<double, int> injection_length(int L, int k, double d,
                                               const ScheduleConfig& sched) {
  const double sigma =
      std::max(0.0, 1.0 - static_cast<double>(k) / sched.k_max);
  const double gate = std::tanh(d / sched.temperature);
  const double l = L * sigma * gate;
  return {l, static_cast<int>(std::floor(l))};
}

// Builds the executor context for a sample, prepending the first
// `prefix_steps` (instruction, action) pairs of its demonstration.
inline Context build_context(const TrainingSample& sample, int prefix_steps,
                             const Demonstration& demo) {
  if (prefix_steps > sample.step_index)
    throw UsageError("build_context: prefix exceeds the steps preceding the "
                     "sample");
  Context ctx;
  ctx.observation = sample.observation;
  ctx.task_goal = sample.task_goal;
  ctx.sub_goal = sample.instruction;
  for (int i = 0; i < prefix_steps; ++i)
    ctx.injected_prefix.emplace_back(demo.steps[i].instruction,
                                     demo.steps[i].action);
  return ctx;
}

}  // namespace minidroid
