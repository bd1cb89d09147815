#pragma once

// Compacted trie of reversed blocks. Every internal node v keeps the letters
// that follow l(v) in each of its ordinals (rho_v, packed h letters per
// entry, ordered by suffix rank) plus per-entry cumulative letter counts
// (c_v); together with the shared in-entry count table they turn an interval
// of Ord_v positions into the matching interval of a child's positions in
// constant time.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "psi/alphabet_text.hpp"
#include "psi/errors.hpp"
#include "psi/rank_interval.hpp"
#include "psi/sparse_suffix_tree.hpp"

namespace psi {

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 22;

/// Four-Russians table: C[u, b, q] = occurrences of code b among the first q
/// letters of the half-block whose packed value is u. When the table would
/// exceed its entry budget it stays disabled and counts are computed by
/// decoding the entry.
class FourRussiansTable {
 public:
  FourRussiansTable() = default;

  static FourRussiansTable build(std::uint64_t base, std::size_t h, std::uint64_t budget) {
    FourRussiansTable t;
    t.base_ = base;
    t.h_ = h;
    t.pow_.assign(h + 1, 1);
    for (std::size_t i = 1; i <= h; ++i) t.pow_[i] = t.pow_[i - 1] * base;
    const auto entries = entries_for(base, h);
    t.enabled_ = entries && *entries <= budget;
    if (!t.enabled_) return t;
    const std::uint64_t values = t.pow_[h];
    t.table_.assign(*entries, 0);
    std::vector<std::uint8_t> running(base);
    for (std::uint64_t u = 0; u < values; ++u) {
      std::fill(running.begin(), running.end(), 0);
      for (std::size_t q = 1; q <= h; ++q) {
        ++running[t.digit(u, q)];
        for (std::uint64_t b = 0; b < base; ++b) t.table_[t.slot(u, b, q)] = running[b];
      }
    }
    return t;
  }

  /// base^(h+1) * h, or nullopt on overflow.
  static std::optional<std::uint64_t> entries_for(std::uint64_t base, std::size_t h) {
    std::uint64_t e = h;
    for (std::size_t i = 0; i <= h; ++i) {
      if (e > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
      e *= base;
    }
    return e;
  }

  bool enabled() const { return enabled_; }
  std::size_t half_block() const { return h_; }
  std::uint64_t base() const { return base_; }
  std::uint64_t entry_count() const { return enabled_ ? table_.size() : 0; }
  const std::vector<std::uint8_t>& raw() const { return table_; }

  /// Letter q (1-based, most significant first) of packed value u.
  Code digit(std::uint64_t u, std::size_t q) const {
    return static_cast<Code>((u / pow_[h_ - q]) % base_);
  }

  std::uint32_t count(std::uint64_t u, Code b, std::size_t q) const {
    if (q == 0) return 0;
    if (enabled_) return table_[slot(u, b, q)];
    std::uint32_t c = 0;
    for (std::size_t i = 1; i <= q; ++i) c += digit(u, i) == b ? 1 : 0;
    return c;
  }

 private:
  std::uint64_t slot(std::uint64_t u, std::uint64_t b, std::size_t q) const {
    return (u * base_ + b) * h_ + (q - 1);
  }

  std::uint64_t base_ = 2;
  std::size_t h_ = 1;
  bool enabled_ = false;
  std::vector<std::uint64_t> pow_{1, 2};
  std::vector<std::uint8_t> table_;
};

inline FourRussiansTable build_count_table(std::uint64_t base, std::size_t h,
                                           std::uint64_t budget = kDefaultTableBudget) {
  return FourRussiansTable::build(base, h, budget);
}

/// Packs `letters` h per entry (filler-padded) and appends the entries to
/// `rho` and the cumulative counts c[b, w] (w = 1..entries, b-major) to
/// `counts`.
inline void append_packed_letters(std::span<const Code> letters, std::uint64_t base, std::size_t h,
                                  std::vector<std::uint64_t>& rho, std::vector<std::uint32_t>& counts) {
  const std::size_t entries = (letters.size() + h - 1) / h;
  const Code filler = static_cast<Code>(base - 1);
  std::vector<Code> chunk(h);
  for (std::size_t w = 0; w < entries; ++w) {
    for (std::size_t q = 0; q < h; ++q) {
      const std::size_t idx = w * h + q;
      chunk[q] = idx < letters.size() ? letters[idx] : filler;
    }
    rho.push_back(pack_letters(chunk, base));
  }
  const std::size_t count_begin = counts.size();
  counts.resize(count_begin + base * entries, 0);
  for (std::size_t w = 0; w < entries; ++w) {
    for (std::uint64_t b = 0; b < base; ++b)
      counts[count_begin + b * entries + w] = w == 0 ? 0 : counts[count_begin + b * entries + w - 1];
    for (std::size_t q = 0; q < h && w * h + q < letters.size(); ++q)
      ++counts[count_begin + letters[w * h + q] * entries + w];
  }
}

/// Read-only view of one node's packed letters and their counts.
class PackedLetters {
 public:
  PackedLetters(std::span<const std::uint64_t> rho, std::span<const std::uint32_t> counts,
                std::uint64_t size, const FourRussiansTable& table)
      : rho_(rho), counts_(counts), size_(size), table_(&table) {}

  std::uint64_t size() const { return size_; }
  std::size_t entries() const { return rho_.size(); }
  std::span<const std::uint64_t> rho() const { return rho_; }

  Code letter_at(std::uint64_t p) const {
    const std::size_t h = table_->half_block();
    return table_->digit(rho_[(p - 1) / h], (p - 1) % h + 1);
  }

  /// Occurrences of `b` among the first p letters:
  /// c[b, w-1] + C[rho[w], b, p - (w-1)h] with w = ceil(p / h).
  std::uint64_t count_prefix(Code b, std::uint64_t p) const {
    if (p > size_)
      fail(ErrorKind::OutOfRange, "prefix " + std::to_string(p) + " beyond " + std::to_string(size_));
    if (p == 0) return 0;
    const std::size_t h = table_->half_block();
    const std::uint64_t w = (p + h - 1) / h;
    const std::uint64_t within = p - (w - 1) * h;
    const std::uint64_t before = w >= 2 ? counts_[b * rho_.size() + (w - 2)] : 0;
    return before + table_->count(rho_[w - 1], b, within);
  }

 private:
  std::span<const std::uint64_t> rho_;
  std::span<const std::uint32_t> counts_;
  std::uint64_t size_;
  const FourRussiansTable* table_;
};

/// Owning letter sequence, for nodes assembled outside a trie.
class LetterSequence {
 public:
  LetterSequence(std::span<const Code> letters, std::shared_ptr<const FourRussiansTable> table)
      : size_(letters.size()), table_(std::move(table)) {
    append_packed_letters(letters, table_->base(), table_->half_block(), rho_, counts_);
  }

  PackedLetters view() const { return PackedLetters(rho_, counts_, size_, *table_); }

 private:
  std::uint64_t size_;
  std::shared_ptr<const FourRussiansTable> table_;
  std::vector<std::uint64_t> rho_;
  std::vector<std::uint32_t> counts_;
};

/// Maps the Ord_v positions [lo, hi] to the positions, in the child reached
/// by `letter`, of the members whose next letter is `letter`.
inline RankInterval interval_step(const PackedLetters& letters, Code letter, const RankInterval& iv) {
  if (iv.empty()) return iv;
  if (iv.lo < 1 || iv.hi > letters.size())
    fail(ErrorKind::OutOfRange, "interval outside [1, " + std::to_string(letters.size()) + "]");
  return RankInterval{letters.count_prefix(letter, iv.lo - 1) + 1, letters.count_prefix(letter, iv.hi)};
}

struct TrieNode {
  NodeId parent = kNoNode;
  std::uint32_t depth = 0;
  std::uint64_t label_begin = 0;
  std::uint32_t label_len = 0;
  std::uint32_t child_begin = 0;
  std::uint32_t child_end = 0;
  std::uint64_t size = 0;         // N(v) = |Ord_v|
  std::uint64_t rho_begin = 0;    // internal nodes
  std::uint64_t count_begin = 0;  // internal nodes
  std::uint64_t ord_begin = 0;    // leaves
  friend bool operator==(const TrieNode&, const TrieNode&) = default;
};

class BlockTrie {
 public:
  struct Parts {
    std::size_t block_size = 1;
    std::uint64_t base = 2;
    std::size_t half_block = 1;
    std::vector<TrieNode> nodes;
    std::vector<TreeChild> children;
    std::vector<Code> labels;
    std::vector<std::uint64_t> rho;
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> ords;
  };

  BlockTrie() = default;
  BlockTrie(Parts parts, std::shared_ptr<const FourRussiansTable> table)
      : p_(std::move(parts)), table_(std::move(table)) {}

  std::size_t node_count() const { return p_.nodes.size(); }
  const TrieNode& node(NodeId v) const { return p_.nodes[v]; }
  bool is_leaf(NodeId v) const { return p_.nodes[v].child_begin == p_.nodes[v].child_end; }
  std::uint32_t depth(NodeId v) const { return p_.nodes[v].depth; }
  const Parts& parts() const { return p_; }
  const FourRussiansTable& table() const { return *table_; }
  std::shared_ptr<const FourRussiansTable> shared_table() const { return table_; }

  std::span<const TreeChild> children(NodeId v) const {
    const auto& n = p_.nodes[v];
    return {p_.children.data() + n.child_begin, n.child_end - n.child_begin};
  }

  NodeId child_by_letter(NodeId v, Code a) const {
    auto kids = children(v);
    auto it = std::lower_bound(kids.begin(), kids.end(), a,
                               [](const TreeChild& c, Code x) { return c.letter < x; });
    return (it != kids.end() && it->letter == a) ? it->node : kNoNode;
  }

  std::span<const Code> label(NodeId v) const {
    const auto& n = p_.nodes[v];
    return {p_.labels.data() + n.label_begin, n.label_len};
  }

  std::span<const std::uint32_t> leaf_ordinals(NodeId v) const {
    const auto& n = p_.nodes[v];
    return {p_.ords.data() + n.ord_begin, static_cast<std::size_t>(n.size)};
  }

  PackedLetters letters(NodeId v) const {
    const auto& n = p_.nodes[v];
    const std::size_t entries = (n.size + p_.half_block - 1) / p_.half_block;
    return PackedLetters({p_.rho.data() + n.rho_begin, entries},
                         {p_.counts.data() + n.count_begin, entries * p_.base}, n.size, *table_);
  }

  /// Interval of Ord_v positions carried to the child whose edge starts
  /// with `a`.
  std::pair<NodeId, RankInterval> interval_step(NodeId v, Code a, const RankInterval& iv) const {
    const NodeId u = child_by_letter(v, a);
    if (u == kNoNode) fail(ErrorKind::NoSuchChild, "no edge for letter " + std::to_string(a));
    return {u, psi::interval_step(letters(v), a, iv)};
  }

  std::uint64_t count_prefix(NodeId v, Code b, std::uint64_t p) const {
    return letters(v).count_prefix(b, p);
  }

  /// Ord_v for every node, present only when built with retained orders.
  const std::vector<std::vector<std::uint32_t>>& retained_orders() const { return retained_; }
  void set_retained_orders(std::vector<std::vector<std::uint32_t>> ords) { retained_ = std::move(ords); }

  /// Letters stored in all rho arrays, excluding entry padding.
  std::uint64_t rho_letters() const {
    std::uint64_t total = 0;
    for (NodeId v = 0; v < node_count(); ++v)
      if (!is_leaf(v)) total += p_.nodes[v].size;
    return total;
  }

 private:
  Parts p_;
  std::shared_ptr<const FourRussiansTable> table_;
  std::vector<std::vector<std::uint32_t>> retained_;
};

/// Letter d+1 of the reversed block paired with ordinal j: ordinal j >= 1
/// pairs with the block ending at position rj, ordinal 0 with a block of
/// fillers.
inline Code reversed_block_letter(const PackedText& t, std::uint32_t j, std::size_t d) {
  if (j == 0) return t.alphabet().filler();
  return t.char_at(std::uint64_t{t.block_size()} * j - d);
}

/// Builds the trie structure over the reversed blocks of ordinals
/// 0..n/r-1; equal blocks share a leaf.
inline BlockTrie build_block_trie(const PackedText& t,
                                  std::shared_ptr<const FourRussiansTable> table = nullptr) {
  const std::size_t r = t.block_size();
  const std::uint32_t count = static_cast<std::uint32_t>(t.block_count());
  std::vector<std::vector<Code>> blocks(count, std::vector<Code>(r));
  for (std::uint32_t j = 0; j < count; ++j)
    for (std::size_t d = 0; d < r; ++d) blocks[j][d] = reversed_block_letter(t, j, d);
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());

  BlockTrie::Parts parts;
  parts.block_size = r;
  parts.base = t.base();
  parts.half_block = t.half_block();

  // Stack construction over the sorted distinct strings, as for suffix trees.
  struct Proto {
    NodeId parent = kNoNode;
    std::uint32_t depth = 0;
    std::uint32_t rep = 0;
    std::vector<NodeId> kids;
  };
  std::vector<Proto> proto(1);
  std::vector<NodeId> stack{0};
  auto attach = [&](NodeId parent, NodeId child) {
    proto[child].parent = parent;
    proto[parent].kids.push_back(child);
  };
  auto make = [&](std::uint32_t depth, std::uint32_t rep) {
    proto.push_back(Proto{kNoNode, depth, rep, {}});
    return static_cast<NodeId>(proto.size() - 1);
  };
  for (std::uint32_t i = 0; i < blocks.size(); ++i) {
    std::uint32_t l = 0;
    if (i > 0)
      while (l < r && blocks[i - 1][l] == blocks[i][l]) ++l;
    while (proto[stack.back()].depth > l) {
      const NodeId last = stack.back();
      stack.pop_back();
      if (proto[stack.back()].depth < l) {
        const NodeId mid = make(l, proto[last].rep);
        attach(mid, last);
        stack.push_back(mid);
        break;
      }
      attach(stack.back(), last);
    }
    stack.push_back(make(static_cast<std::uint32_t>(r), i));
  }
  while (stack.size() > 1) {
    const NodeId v = stack.back();
    stack.pop_back();
    attach(stack.back(), v);
  }

  // Breadth-first numbering: nodes of one depth level are processed before
  // the next when annotating.
  std::vector<NodeId> order{0};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (NodeId c : proto[order[i]].kids) order.push_back(c);
  std::vector<NodeId> id(proto.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<NodeId>(i);

  parts.nodes.resize(proto.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Proto& p = proto[order[i]];
    TrieNode& node = parts.nodes[i];
    node.parent = i == 0 ? kNoNode : id[p.parent];
    node.depth = p.depth;
    if (i != 0) {
      const std::uint32_t from = proto[p.parent].depth;
      node.label_begin = parts.labels.size();
      node.label_len = p.depth - from;
      parts.labels.insert(parts.labels.end(), blocks[p.rep].begin() + from, blocks[p.rep].begin() + p.depth);
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    TrieNode& node = parts.nodes[i];
    node.child_begin = static_cast<std::uint32_t>(parts.children.size());
    for (NodeId c : proto[order[i]].kids)
      parts.children.push_back(TreeChild{parts.labels[parts.nodes[id[c]].label_begin], id[c]});
    node.child_end = static_cast<std::uint32_t>(parts.children.size());
  }
  if (!table) table = std::make_shared<const FourRussiansTable>(build_count_table(t.base(), t.half_block()));
  return BlockTrie(std::move(parts), std::move(table));
}

struct AnnotateOptions {
  bool retain_orders = false;
};

/// Fills Ord/rho/c level by level: Ord_root is SA_r order, and each node
/// distributes its ordinals to the child whose edge starts with the
/// ordinal's rho letter, preserving order. Internal Ord sequences are
/// dropped once their children are filled.
inline void annotate(BlockTrie& trie, const PackedText& t, const SparseSuffixArray& sa,
                     AnnotateOptions options = {}) {
  BlockTrie::Parts parts = trie.parts();
  parts.rho.clear();
  parts.counts.clear();
  parts.ords.clear();
  const std::size_t nodes = parts.nodes.size();
  std::vector<std::vector<std::uint32_t>> pending(nodes);
  std::vector<std::vector<std::uint32_t>> retained;
  if (options.retain_orders) retained.resize(nodes);
  pending[0] = sa.by_rank();

  std::vector<Code> letters;
  // Breadth-first ids: every parent precedes its children.
  for (NodeId v = 0; v < nodes; ++v) {
    TrieNode& node = parts.nodes[v];
    std::vector<std::uint32_t> ord = std::move(pending[v]);
    pending[v].clear();
    pending[v].shrink_to_fit();
    node.size = ord.size();
    if (node.child_begin == node.child_end) {
      node.ord_begin = parts.ords.size();
      parts.ords.insert(parts.ords.end(), ord.begin(), ord.end());
    } else {
      letters.resize(ord.size());
      for (std::size_t k = 0; k < ord.size(); ++k) {
        letters[k] = reversed_block_letter(t, ord[k], node.depth);
        const NodeId u = trie.child_by_letter(v, letters[k]);
        if (u == kNoNode)
          fail(ErrorKind::InternalInvariantViolation,
               "ordinal " + std::to_string(ord[k]) + " has no child at trie node " + std::to_string(v));
        pending[u].push_back(ord[k]);
      }
      node.rho_begin = parts.rho.size();
      node.count_begin = parts.counts.size();
      append_packed_letters(letters, parts.base, parts.half_block, parts.rho, parts.counts);
    }
    if (options.retain_orders) retained[v] = std::move(ord);
  }
  BlockTrie out(std::move(parts), trie.shared_table());
  out.set_retained_orders(std::move(retained));
  trie = std::move(out);
}

inline BlockTrie build_annotated_trie(const PackedText& t, const SparseSuffixArray& sa,
                                      std::shared_ptr<const FourRussiansTable> table = nullptr,
                                      AnnotateOptions options = {}) {
  BlockTrie trie = build_block_trie(t, std::move(table));
  annotate(trie, t, sa, options);
  return trie;
}

}  // namespace psi
