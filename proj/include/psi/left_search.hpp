#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "psi/alphabet_text.hpp"
#include "psi/block_trie.hpp"
#include "psi/rank_interval.hpp"

namespace psi {

struct LeftSearchCounters {
  std::uint64_t descent_nodes = 0;    // explicit nodes entered along P[k]..P[1]
  std::uint64_t traverse_visits = 0;  // start node plus every child interval computed
  std::uint64_t emitted = 0;
};

/// The interval update used by both phases; a template parameter so tests
/// can substitute a deliberately broken one.
struct IntervalStep {
  RankInterval operator()(const PackedLetters& letters, Code a, const RankInterval& iv) const {
    return interval_step(letters, a, iv);
  }
};

/// Emits the ordinals at positions `iv` of Ord_v for every leaf below v,
/// pruning subtrees whose interval becomes empty.
template <class Step = IntervalStep>
void traverse(const BlockTrie& trie, NodeId v, const RankInterval& iv, std::vector<std::uint32_t>& out,
              LeftSearchCounters* counters = nullptr, const Step& step = {}) {
  if (iv.empty()) return;
  if (trie.is_leaf(v)) {
    auto ords = trie.leaf_ordinals(v);
    for (std::uint64_t i = iv.lo; i <= iv.hi; ++i) out.push_back(ords[i - 1]);
    if (counters) counters->emitted += iv.size();
    return;
  }
  const PackedLetters letters = trie.letters(v);
  for (const TreeChild& c : trie.children(v)) {
    const RankInterval sub = step(letters, c.letter, iv);
    if (counters) ++counters->traverse_visits;
    if (sub.empty()) continue;
    traverse(trie, c.node, sub, out, counters, step);
  }
}

/// Ordinals j such that P[k+1..] starts at boundary j (its rank lies in
/// `iv`) and P[1..k] ends there. Walks P[k], P[k-1], ..., P[1] down the
/// trie, updating the interval once per explicit node on the first edge
/// letter and checking the rest of each edge label directly, then hands the
/// closest explicit node to `traverse`.
template <class Step = IntervalStep>
std::vector<std::uint32_t> left_search(const BlockTrie& trie, const PackedPattern& pattern, std::uint32_t k,
                                       RankInterval iv, LeftSearchCounters* counters = nullptr,
                                       const Step& step = {}) {
  std::vector<std::uint32_t> out;
  if (iv.empty() || k == 0) return out;
  NodeId v = kRoot;
  if (counters) ++counters->descent_nodes;
  std::uint64_t next = k;  // next pattern position to match, moving left
  while (next >= 1) {
    if (trie.is_leaf(v)) return out;  // blocks are only r long
    const Code a = pattern.at(next);
    const NodeId u = trie.child_by_letter(v, a);
    if (u == kNoNode) return out;
    iv = step(trie.letters(v), a, iv);
    if (iv.empty()) return out;
    auto label = trie.label(u);
    const std::uint64_t checked = std::min<std::uint64_t>(label.size(), next);
    for (std::uint64_t t = 1; t < checked; ++t)
      if (label[t] != pattern.at(next - t)) return out;
    next -= checked;
    v = u;
    if (counters) ++counters->descent_nodes;
  }
  if (counters) ++counters->traverse_visits;
  traverse(trie, v, iv, out, counters, step);
  return out;
}

}  // namespace psi
