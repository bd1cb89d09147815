#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "psi/alphabet_text.hpp"
#include "psi/block_trie.hpp"
#include "psi/left_search.hpp"
#include "psi/right_search.hpp"
#include "psi/sparse_suffix_tree.hpp"

namespace psi {

inline constexpr std::uint32_t kFormatVersion = 1;

struct BuildConfig {
  std::size_t block_size = 2;
  AlphabetMode alphabet = AlphabetMode::automatic;
  std::size_t word_capacity = 0;  // 0: floor(64 / bits_per_char)
  std::uint64_t table_budget = kDefaultTableBudget;
  bool retain_trie_orders = false;
};

/// 1-based start in the raw text, plus the offset k of the first block
/// boundary at or after it.
struct Occurrence {
  std::uint64_t pos = 0;
  std::uint32_t k = 0;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence& a, const Occurrence& b) { return a.pos <=> b.pos; }
};

struct LeftCall {
  std::uint32_t k = 0;
  LeftSearchCounters counters;
};

struct QueryStats {
  SearchCounters right;
  LeftSearchCounters left;
  std::uint64_t left_calls = 0;
  std::vector<LeftCall> left_per_call;
  std::uint64_t short_scan_steps = 0;
  std::vector<SuffixHit> hits;
  std::vector<std::uint64_t> occ_by_k;  // occurrences per k

  /// Instrumented work of the right/left search path.
  std::uint64_t total_work() const {
    return right.total() + left.descent_nodes + left.traverse_visits + left.emitted +
           (occ_by_k.empty() ? 0 : occ_by_k[0]);
  }
};

struct IndexStats {
  std::uint64_t n_raw = 0, n = 0, r = 0, sigma = 0, word_capacity = 0, half_block = 0;
  std::uint64_t blocks = 0;             // n / r
  std::uint64_t text_words = 0;
  std::uint64_t sa_words = 0;           // SA_r plus inverse
  std::uint64_t tree_nodes = 0;
  std::uint64_t tree_internal_nodes = 0;
  std::uint64_t tree_words = 0;
  std::uint64_t trie_nodes = 0;
  std::uint64_t trie_leaves = 0;
  std::uint64_t trie_words = 0;
  std::uint64_t rho_letters = 0;
  std::uint64_t rho_entries = 0;
  std::uint64_t c_entries = 0;
  std::uint64_t ord_entries = 0;
  bool table_enabled = false;
  std::uint64_t table_entries = 0;
  bool rho_within_bound = false;        // rho_letters <= n + n/r
};

class Index {
 public:
  Index() = default;
  Index(PackedText text, SparseSuffixTree tree, BlockTrie trie, BuildConfig config)
      : text_(std::move(text)), tree_(std::move(tree)), trie_(std::move(trie)), config_(config) {}

  static Index build(std::string_view raw, const BuildConfig& config) {
    PackedText text = encode_text(raw, config.block_size, config.alphabet, config.word_capacity);
    SparseSuffixTree tree = build_sparse_suffix_tree(text);
    auto table = std::make_shared<const FourRussiansTable>(
        build_count_table(text.base(), text.half_block(), config.table_budget));
    BlockTrie trie = build_annotated_trie(text, tree.suffix_array(), std::move(table),
                                          AnnotateOptions{config.retain_trie_orders});
    BuildConfig resolved = config;
    resolved.word_capacity = text.word_capacity();
    return Index(std::move(text), std::move(tree), std::move(trie), resolved);
  }

  const PackedText& text() const { return text_; }
  const SparseSuffixTree& tree() const { return tree_; }
  const BlockTrie& trie() const { return trie_; }
  const BuildConfig& config() const { return config_; }
  std::size_t block_size() const { return text_.block_size(); }

  IndexStats stats() const {
    IndexStats s;
    s.n_raw = text_.raw_size();
    s.n = text_.size();
    s.r = text_.block_size();
    s.sigma = text_.alphabet().size();
    s.word_capacity = text_.word_capacity();
    s.half_block = text_.half_block();
    s.blocks = text_.block_count();
    s.text_words = text_.sequence().words().size();
    s.sa_words = 2 * tree_.suffix_array().size();
    s.tree_nodes = tree_.node_count();
    for (NodeId v = 0; v < tree_.node_count(); ++v) s.tree_internal_nodes += tree_.is_leaf(v) ? 0 : 1;
    // parent, depth, edge start, ranks, child range, ordinal; child entry;
    // link as anchor, child, offset, type.
    s.tree_words = tree_.node_count() * 8 + (tree_.node_count() - 1) * 2 + tree_.node_count() * 4;
    const auto& tp = trie_.parts();
    s.trie_nodes = tp.nodes.size();
    for (NodeId v = 0; v < trie_.node_count(); ++v) s.trie_leaves += trie_.is_leaf(v) ? 1 : 0;
    s.rho_letters = trie_.rho_letters();
    s.rho_entries = tp.rho.size();
    s.c_entries = tp.counts.size();
    s.ord_entries = tp.ords.size();
    s.trie_words = tp.nodes.size() * 10 + tp.children.size() * 2 + tp.labels.size() + s.rho_entries +
                   s.c_entries + s.ord_entries;
    s.table_enabled = trie_.table().enabled();
    s.table_entries = trie_.table().entry_count();
    s.rho_within_bound = s.rho_letters <= s.n + s.blocks;
    return s;
  }

 private:
  PackedText text_;
  SparseSuffixTree tree_;
  BlockTrie trie_;
  BuildConfig config_;
};

inline std::uint32_t offset_of(std::uint64_t pos, std::size_t r) {
  return static_cast<std::uint32_t>((r - (pos - 1) % r) % r);
}

/// All occurrences of a pattern shorter than a block, by a packed scan over
/// every text position.
inline std::vector<Occurrence> find_short(const Index& index, const PackedPattern& pattern,
                                          QueryStats* stats = nullptr) {
  const PackedText& t = index.text();
  const std::uint64_t m = pattern.size();
  std::vector<Occurrence> out;
  if (m == 0 || m > t.raw_size()) return out;
  for (std::uint64_t pos = 1; pos + m - 1 <= t.raw_size(); ++pos) {
    if (compare_span(t, pos, pattern, 1, static_cast<std::size_t>(m)) == m)
      out.push_back(Occurrence{pos, offset_of(pos, t.block_size())});
  }
  if (stats) stats->short_scan_steps += t.raw_size() - m + 1;
  return out;
}

/// All occurrences, sorted by position. Patterns of at least r letters go
/// through the right/left search; shorter ones through `find_short`.
template <class Step = IntervalStep>
std::vector<Occurrence> find_all_with(const Index& index, const PackedPattern& pattern, QueryStats* stats = nullptr,
                                      const Step& step = {}) {
  const std::size_t r = index.block_size();
  const std::uint64_t m = pattern.size();
  if (m == 0) fail(ErrorKind::EmptyPattern, "pattern is empty");
  for (Code c : pattern.codes())
    if (c < 1 || c > index.text().alphabet().size())
      fail(ErrorKind::InvalidCode, "pattern code " + std::to_string(c));
  if (m < r) return find_short(index, pattern, stats);

  const auto& sa = index.tree().suffix_array();
  const auto right = right_search(index.tree(), index.text(), pattern);
  std::vector<std::vector<Occurrence>> runs;
  if (stats) {
    stats->right = right.counters;
    stats->hits = right.hits;
    stats->occ_by_k.assign(r, 0);
  }
  for (const SuffixHit& hit : right.hits) {
    std::vector<Occurrence> run;
    if (hit.k == 0) {
      for (std::uint64_t i = hit.interval.lo; i <= hit.interval.hi; ++i)
        run.push_back(Occurrence{std::uint64_t{r} * sa.ordinal_at(static_cast<std::uint32_t>(i)) + 1, 0});
    } else {
      LeftSearchCounters local;
      const auto ordinals = left_search(index.trie(), pattern, hit.k, hit.interval, &local, step);
      for (std::uint32_t j : ordinals) run.push_back(Occurrence{std::uint64_t{r} * j + 1 - hit.k, hit.k});
      if (stats) {
        ++stats->left_calls;
        stats->left.descent_nodes += local.descent_nodes;
        stats->left.traverse_visits += local.traverse_visits;
        stats->left.emitted += local.emitted;
        stats->left_per_call.push_back(LeftCall{hit.k, local});
      }
    }
    std::sort(run.begin(), run.end());
    if (stats) stats->occ_by_k[hit.k] = run.size();
    runs.push_back(std::move(run));
  }
  std::vector<Occurrence> out;
  for (auto& run : runs) {
    std::vector<Occurrence> merged;
    merged.reserve(out.size() + run.size());
    std::merge(out.begin(), out.end(), run.begin(), run.end(), std::back_inserter(merged));
    out.swap(merged);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    ensure(out[i - 1].pos < out[i].pos, "position reported twice");
  for (const auto& o : out) ensure(o.pos + m - 1 <= index.text().raw_size(), "occurrence overlaps padding");
  return out;
}

inline std::vector<Occurrence> find_all(const Index& index, const PackedPattern& pattern,
                                        QueryStats* stats = nullptr) {
  return find_all_with(index, pattern, stats);
}

inline std::vector<Occurrence> find_all(const Index& index, std::string_view pattern, QueryStats* stats = nullptr) {
  if (pattern.empty()) fail(ErrorKind::EmptyPattern, "pattern is empty");
  auto packed = index.text().encode_pattern(pattern);
  if (!packed) return {};
  return find_all(index, *packed, stats);
}

}  // namespace psi
