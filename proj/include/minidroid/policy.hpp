#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "minidroid/features.hpp"
#include "minidroid/rng.hpp"

namespace minidroid {

// Factored policy head layout inside the flat parameter vector:
// kind head (F x 7), cell head (F x 288), text head (F x 11).
inline constexpr int kKindCols = kNumActionKinds;
inline constexpr int kCellCols = kNumCells;
inline constexpr int kTextCols = kVocabSize;

inline constexpr std::size_t kKindHeadOffset = 0;
inline constexpr std::size_t kCellHeadOffset =
    static_cast<std::size_t>(kFeatureDim) * kKindCols;
inline constexpr std::size_t kTextHeadOffset =
    kCellHeadOffset + static_cast<std::size_t>(kFeatureDim) * kCellCols;
inline constexpr std::size_t kThetaSize =
    kTextHeadOffset + static_cast<std::size_t>(kFeatureDim) * kTextCols;

enum class Head { kKind = 0, kCell = 1, kText = 2 };

inline std::size_t head_offset(Head h) {
  switch (h) {
    case Head::kKind: return kKindHeadOffset;
    case Head::kCell: return kCellHeadOffset;
    case Head::kText: return kTextHeadOffset;
  }
  return 0;
}

inline int head_cols(Head h) {
  switch (h) {
    case Head::kKind: return kKindCols;
    case Head::kCell: return kCellCols;
    case Head::kText: return kTextCols;
  }
  return 0;
}

inline std::size_t theta_index(Head h, int feature, int col) {
  return head_offset(h) + static_cast<std::size_t>(feature) * head_cols(h) +
         col;
}

struct PolicyParams {
  std::vector<double> theta;
  int version = 0;

  static PolicyParams zeros() {
    PolicyParams p;
    p.theta.assign(kThetaSize, 0.0);
    return p;
  }
};

// Token sequence of one action with its sampling-time log probabilities.
struct ActionTokens {
  std::vector<int> tokens;
  std::vector<double> per_token_logprobs;

  friend bool operator==(const ActionTokens& a, const ActionTokens& b) {
    return a.tokens == b.tokens;
  }
};

// Sparse gradient with respect to theta.
using SparseGrad = std::vector<std::pair<std::size_t, double>>;

inline void axpy_into(std::vector<double>& dense, const SparseGrad& g,
                      double scale) {
  for (const auto& [i, v] : g) dense[i] += scale * v;
}

// --- token space -------------------------------------------------------------

// The per-context supports of every head. The coordinate head proposes the
// grid cells holding element centers; swipe destinations are the four cells
// one canonical gesture away from the start.
struct TokenSpace {
  std::vector<int> cell_support;
  std::vector<int> text_slots;  // non-empty dynamic slots
  CandidateTable table;

  static TokenSpace build(const Context& ctx) {
    TokenSpace sp;
    sp.table = CandidateTable::build(ctx);
    std::set<int> cells;
    for (const auto& e : ctx.observation.elements) {
      if (e.element_id == kSessionStatusId) continue;
      cells.insert(cell_of_point(e.bbox.center()));
    }
    sp.cell_support.assign(cells.begin(), cells.end());
    for (int s = kFixedSlots; s < kNumSlots; ++s)
      if (!sp.table.slots[s].empty()) sp.text_slots.push_back(s);
    return sp;
  }

  static std::vector<int> swipe_targets(int from_cell) {
    const int col = from_cell % kGridCols;
    const int row = from_cell / kGridCols;
    std::vector<int> out;
    if (row - kSwipeRows >= 0) out.push_back(cell_index(col, row - kSwipeRows));
    if (row + kSwipeRows < kGridRows)
      out.push_back(cell_index(col, row + kSwipeRows));
    if (col - kSwipeCols >= 0) out.push_back(cell_index(col - kSwipeCols, row));
    if (col + kSwipeCols < kGridCols)
      out.push_back(cell_index(col + kSwipeCols, row));
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Support of the token after `prefix`; empty means the sequence is complete.
inline std::vector<int> next_support(const TokenSpace& sp,
                                     const std::vector<int>& prefix,
                                     Head* head_out) {
  if (prefix.empty()) {
    if (head_out) *head_out = Head::kKind;
    std::vector<int> kinds(kNumActionKinds);
    for (int i = 0; i < kNumActionKinds; ++i) kinds[i] = i;
    return kinds;
  }
  const auto kind = static_cast<ActionKind>(prefix[0]);
  const std::size_t n = prefix.size();
  switch (kind) {
    case ActionKind::kClick:
    case ActionKind::kLongPress:
      if (n == 1) {
        if (head_out) *head_out = Head::kCell;
        return sp.cell_support;
      }
      return {};
    case ActionKind::kSwipe:
      if (n == 1) {
        if (head_out) *head_out = Head::kCell;
        return sp.cell_support;
      }
      if (n == 2) {
        if (head_out) *head_out = Head::kCell;
        return TokenSpace::swipe_targets(prefix[1]);
      }
      return {};
    case ActionKind::kSystemButton:
      if (n == 1) {
        if (head_out) *head_out = Head::kText;
        return {0, 1};
      }
      return {};
    case ActionKind::kTerminate:
      if (n == 1) {
        if (head_out) *head_out = Head::kText;
        return {2, 3};
      }
      return {};
    case ActionKind::kType:
    case ActionKind::kAnswer: {
      if (prefix.back() == kEndToken && n > 1) return {};
      if (head_out) *head_out = Head::kText;
      const int text_len = static_cast<int>(n) - 1;
      if (sp.text_slots.empty() || text_len >= kMaxTextTokens)
        return {kEndToken};
      std::vector<int> out = sp.text_slots;
      if (text_len >= 1) out.push_back(kEndToken);
      return out;
    }
  }
  return {};
}

// --- encode / decode ----------------------------------------------------------

inline Action decode_tokens(const TokenSpace& sp,
                            const std::vector<int>& tokens) {
  auto fail = [](const std::string& msg) -> Action {
    throw ValidationError("undecodable tokens: " + msg);
  };
  std::vector<int> prefix;
  for (int t : tokens) {
    auto support = next_support(sp, prefix, nullptr);
    if (support.empty()) return fail("trailing tokens");
    if (std::find(support.begin(), support.end(), t) == support.end())
      return fail("token outside its head support");
    prefix.push_back(t);
  }
  if (!next_support(sp, prefix, nullptr).empty())
    return fail("sequence incomplete");

  const auto kind = static_cast<ActionKind>(tokens[0]);
  switch (kind) {
    case ActionKind::kClick:
      return Action::click(center_of_cell(tokens[1]));
    case ActionKind::kLongPress:
      return Action::long_press(center_of_cell(tokens[1]));
    case ActionKind::kSwipe:
      return Action::swipe(center_of_cell(tokens[1]),
                           center_of_cell(tokens[2]));
    case ActionKind::kSystemButton:
      return Action::system_button(tokens[1] == 0 ? SystemButton::kBack
                                                  : SystemButton::kHome);
    case ActionKind::kTerminate:
      return Action::terminate(tokens[1] == 2 ? TerminateStatus::kSuccess
                                              : TerminateStatus::kFailure);
    case ActionKind::kType:
    case ActionKind::kAnswer: {
      std::string text;
      for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
        if (!text.empty()) text += " ";
        text += sp.table.slots[tokens[i]];
      }
      return kind == ActionKind::kType ? Action::type_text(text)
                                       : Action::answer(text);
    }
  }
  return fail("unknown kind token");
}

// Inverse of decode_tokens on representable actions: coordinates on cell
// centers inside the support, text equal to a single table slot.
inline std::vector<int> encode_action(const TokenSpace& sp, const Action& a) {
  std::vector<int> tokens{static_cast<int>(a.kind)};
  auto in = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  switch (a.kind) {
    case ActionKind::kClick:
    case ActionKind::kLongPress: {
      int cell = cell_of_point(*a.coordinate);
      if (center_of_cell(cell) != *a.coordinate || !in(sp.cell_support, cell))
        throw ValidationError("coordinate not representable");
      tokens.push_back(cell);
      break;
    }
    case ActionKind::kSwipe: {
      int c1 = cell_of_point(*a.coordinate);
      int c2 = cell_of_point(*a.coordinate2);
      if (center_of_cell(c1) != *a.coordinate ||
          center_of_cell(c2) != *a.coordinate2 || !in(sp.cell_support, c1) ||
          !in(TokenSpace::swipe_targets(c1), c2))
        throw ValidationError("swipe not representable");
      tokens.push_back(c1);
      tokens.push_back(c2);
      break;
    }
    case ActionKind::kSystemButton:
      tokens.push_back(*a.button == SystemButton::kBack ? 0 : 1);
      break;
    case ActionKind::kTerminate:
      tokens.push_back(*a.status == TerminateStatus::kSuccess ? 2 : 3);
      break;
    case ActionKind::kType:
    case ActionKind::kAnswer: {
      if (a.text->empty()) {
        if (!sp.text_slots.empty())
          throw ValidationError("empty text not representable here");
      } else {
        int slot = sp.table.find(*a.text);
        if (slot < kFixedSlots)
          throw ValidationError("text not in candidate table: " + *a.text);
        tokens.push_back(slot);
      }
      tokens.push_back(kEndToken);
      break;
    }
  }
  return tokens;
}

// --- head evaluation -----------------------------------------------------------

namespace detail {

// Log-softmax of one head restricted to `support`.
inline std::vector<double> head_logprobs(const PolicyParams& p,
                                         const FeatureVector& phi, Head head,
                                         const std::vector<int>& support) {
  std::vector<double> logits(support.size(), 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    double z = 0.0;
    for (const auto& [f, v] : phi.entries)
      z += p.theta[theta_index(head, f, support[i])] * v;
    logits[i] = z;
  }
  double mx = logits[0];
  for (double z : logits) mx = std::max(mx, z);
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - mx);
  const double log_z = mx + std::log(sum);
  for (double& z : logits) z -= log_z;
  return logits;
}

}  // namespace detail

// --- policy operations -----------------------------------------------------------

// Draws G token sequences from the factored distribution. A pure function of
// (params, ctx, G, seed); each sequence carries its sampling log probs.
inline std::vector<ActionTokens> sample_group(const PolicyParams& params,
                                              const Context& ctx, int G,
                                              std::uint64_t seed) {
  if (G < 1) throw UsageError("sample_group: G must be at least 1");
  const FeatureVector phi = featurize(ctx);
  const TokenSpace sp = TokenSpace::build(ctx);

  std::vector<ActionTokens> out;
  out.reserve(G);
  for (int g = 0; g < G; ++g) {
    Rng rng(derive_seed(seed, {0x73616d70ULL, static_cast<std::uint64_t>(g)}));
    ActionTokens at;
    while (true) {
      Head head;
      auto support = next_support(sp, at.tokens, &head);
      if (support.empty()) break;
      auto lps = detail::head_logprobs(params, phi, head, support);
      const double u = rng.uniform_real();
      double acc = 0.0;
      std::size_t pick = support.size() - 1;
      for (std::size_t i = 0; i < support.size(); ++i) {
        acc += std::exp(lps[i]);
        if (u < acc) {
          pick = i;
          break;
        }
      }
      at.tokens.push_back(support[pick]);
      at.per_token_logprobs.push_back(lps[pick]);
    }
    out.push_back(std::move(at));
  }
  return out;
}

// Log probability of a token sequence under `params`.
inline std::pair<double, std::vector<double>> logprob(
    const PolicyParams& params, const Context& ctx,
    const std::vector<int>& tokens) {
  const FeatureVector phi = featurize(ctx);
  const TokenSpace sp = TokenSpace::build(ctx);

  std::vector<double> per_token;
  std::vector<int> prefix;
  for (int t : tokens) {
    Head head;
    auto support = next_support(sp, prefix, &head);
    auto it = std::find(support.begin(), support.end(), t);
    if (it == support.end())
      throw ValidationError("logprob: token outside its head support");
    auto lps = detail::head_logprobs(params, phi, head, support);
    per_token.push_back(lps[it - support.begin()]);
    prefix.push_back(t);
  }
  double total = 0.0;
  for (double lp : per_token) total += lp;
  return {total, std::move(per_token)};
}

// Exact gradient of logprob(...).first with respect to theta.
inline SparseGrad logprob_grad(const PolicyParams& params, const Context& ctx,
                               const std::vector<int>& tokens) {
  const FeatureVector phi = featurize(ctx);
  const TokenSpace sp = TokenSpace::build(ctx);

  std::map<std::size_t, double> acc;
  std::vector<int> prefix;
  for (int t : tokens) {
    Head head;
    auto support = next_support(sp, prefix, &head);
    auto it = std::find(support.begin(), support.end(), t);
    if (it == support.end())
      throw ValidationError("logprob_grad: token outside its head support");
    auto lps = detail::head_logprobs(params, phi, head, support);
    for (const auto& [f, v] : phi.entries) {
      acc[theta_index(head, f, t)] += v;
      for (std::size_t i = 0; i < support.size(); ++i)
        acc[theta_index(head, f, support[i])] -= v * std::exp(lps[i]);
    }
    prefix.push_back(t);
  }
  SparseGrad g(acc.begin(), acc.end());
  return g;
}

// Uniform reference policy (parameters at the start of training are all
// zero): log probability is -log|support| per token.
inline std::pair<double, std::vector<double>> logprob_uniform(
    const Context& ctx, const std::vector<int>& tokens) {
  const TokenSpace sp = TokenSpace::build(ctx);
  std::vector<double> per_token;
  std::vector<int> prefix;
  for (int t : tokens) {
    auto support = next_support(sp, prefix, nullptr);
    if (std::find(support.begin(), support.end(), t) == support.end())
      throw ValidationError("logprob_uniform: token outside support");
    per_token.push_back(-std::log(static_cast<double>(support.size())));
    prefix.push_back(t);
  }
  double total = 0.0;
  for (double lp : per_token) total += lp;
  return {total, std::move(per_token)};
}

// Argmax decode at every head; ties break to the lowest token id.
inline ActionTokens greedy_decode(const PolicyParams& params,
                                  const Context& ctx) {
  const FeatureVector phi = featurize(ctx);
  const TokenSpace sp = TokenSpace::build(ctx);
  ActionTokens at;
  while (true) {
    Head head;
    auto support = next_support(sp, at.tokens, &head);
    if (support.empty()) break;
    auto lps = detail::head_logprobs(params, phi, head, support);
    std::size_t best = 0;
    for (std::size_t i = 1; i < support.size(); ++i)
      if (lps[i] > lps[best]) best = i;
    at.tokens.push_back(support[best]);
    at.per_token_logprobs.push_back(lps[best]);
  }
  return at;
}

// --- checkpoint io ---------------------------------------------------------------

inline constexpr char kCheckpointMagic[8] = {'M', 'D', 'P', 'O',
                                             'L', 'I', 'C', 'Y'};

// Flat little-endian binary: magic, dims header, then theta.
inline void save_policy(const std::string& path, const PolicyParams& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write checkpoint: " + path);
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  auto put_u32 = [&](std::uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                 static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
    out.write(b, 4);
  };
  put_u32(kFeatureDim);
  put_u32(kCellCols);
  put_u32(kTextCols);
  put_u32(static_cast<std::uint32_t>(p.version));
  put_u32(static_cast<std::uint32_t>(p.theta.size() & 0xffffffffu));
  put_u32(static_cast<std::uint32_t>(p.theta.size() >> 32));
  out.write(reinterpret_cast<const char*>(p.theta.data()),
            static_cast<std::streamsize>(p.theta.size() * sizeof(double)));
}

inline PolicyParams load_policy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read checkpoint: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw ParseError("bad checkpoint magic", 0);
  auto get_u32 = [&]() -> std::uint32_t {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  };
  const std::uint32_t f = get_u32(), c = get_u32(), v = get_u32();
  if (f != kFeatureDim || c != kCellCols || v != kTextCols)
    throw ParseError("checkpoint dims mismatch", 8);
  PolicyParams p;
  p.version = static_cast<int>(get_u32());
  const std::uint64_t lo = get_u32(), hi = get_u32();
  const std::uint64_t n = lo | (hi << 32);
  if (n != kThetaSize) throw ParseError("checkpoint size mismatch", 24);
  p.theta.resize(n);
  in.read(reinterpret_cast<char*>(p.theta.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw ParseError("truncated checkpoint", 32);
  return p;
}

}  // namespace minidroid
