#pragma once

#include <cstdint>
#include <vector>

#include "psi/alphabet_text.hpp"
#include "psi/rank_interval.hpp"
#include "psi/sparse_suffix_tree.hpp"

namespace psi {

/// P[k+1..m] occurs at the block boundaries whose ranks form `interval`.
struct SuffixHit {
  std::uint32_t k = 0;
  RankInterval interval;
  friend bool operator==(const SuffixHit&, const SuffixHit&) = default;
};

struct SearchCounters {
  std::uint64_t word_comparisons = 0;
  std::uint64_t char_comparisons = 0;
  std::uint64_t link_follows = 0;

  std::uint64_t total() const { return word_comparisons + char_comparisons + link_follows; }
};

struct RightSearchResult {
  std::vector<SuffixHit> hits;
  SearchCounters counters;
};

inline RankInterval rank_interval(const SparseSuffixTree& tree, NodeId v) {
  return RankInterval{tree.node(v).min_rank, tree.node(v).max_rank};
}

/// One traversal of the sparse suffix tree that finds, for every
/// k in [0, r-1], the rank interval of P[k+1..m] among boundary suffixes.
///
/// The cursor keeps p = k + 1 + depth(locus), p being the next pattern
/// position to compare. When the current suffix mismatches or runs out at
/// locus (v, l), the walk jumps to s(v) and advances k by the link type,
/// which rewinds p by l; the root has no link and advances k by one.
inline RightSearchResult right_search(const SparseSuffixTree& tree, const PackedText& text,
                                      const PackedPattern& pattern) {
  const std::size_t r = tree.block_size();
  const std::uint64_t m = pattern.size();
  if (m < r)
    fail(ErrorKind::PatternTooShort,
         "pattern length " + std::to_string(m) + " below block size " + std::to_string(r));
  for (Code c : pattern.codes())
    if (c < 1 || c > text.alphabet().size())
      fail(ErrorKind::InvalidCode, "pattern code " + std::to_string(c));

  RightSearchResult out;
  DescendCounters descent;
  std::uint64_t k = 0;
  Locus locus{};
  while (k < r) {
    const auto step = descend(tree, text, pattern.sequence(), k + 1, m, locus, r, &descent);
    locus = step.locus;
    if (step.exhausted)
      out.hits.push_back(SuffixHit{static_cast<std::uint32_t>(k),
                                   rank_interval(tree, tree.closest_explicit_descendant(locus))});
    ++out.counters.link_follows;
    if (locus.anchor == kRoot) {
      k += 1;
      locus = Locus{};
    } else {
      const SuffixLink& link = tree.link(locus.anchor);
      k += link.type;
      locus = link.target;
    }
  }
  out.counters.word_comparisons = descent.word_comparisons;
  out.counters.char_comparisons = descent.char_comparisons;
  return out;
}

}  // namespace psi
