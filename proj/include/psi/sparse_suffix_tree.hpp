#pragma once

// r-spaced sparse suffix tree: the compacted trie of the suffixes starting at
// block boundaries, with rank intervals and typed suffix links.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "psi/alphabet_text.hpp"
#include "psi/errors.hpp"

namespace psi {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr NodeId kRoot = 0;

/// SA_r and its inverse. Ranks are 1-based, ordinals 0-based.
class SparseSuffixArray {
 public:
  SparseSuffixArray() = default;
  explicit SparseSuffixArray(std::vector<std::uint32_t> by_rank) : by_rank_(std::move(by_rank)) {
    by_ordinal_.assign(by_rank_.size(), 0);
    for (std::size_t i = 0; i < by_rank_.size(); ++i) by_ordinal_[by_rank_[i]] = static_cast<std::uint32_t>(i + 1);
  }

  std::size_t size() const { return by_rank_.size(); }
  std::uint32_t ordinal_at(std::uint32_t rank) const { return by_rank_[rank - 1]; }
  std::uint32_t rank_of(std::uint32_t ordinal) const { return by_ordinal_[ordinal]; }
  const std::vector<std::uint32_t>& by_rank() const { return by_rank_; }
  const std::vector<std::uint32_t>& by_ordinal() const { return by_ordinal_; }

 private:
  std::vector<std::uint32_t> by_rank_;
  std::vector<std::uint32_t> by_ordinal_;
};

/// A (possibly implicit) position in the tree: `offset` characters below the
/// explicit `anchor` along the edge into `child`. offset == 0 means the
/// locus is the anchor itself and `child` is kNoNode.
struct Locus {
  NodeId anchor = kRoot;
  NodeId child = kNoNode;
  std::uint64_t offset = 0;

  bool is_explicit() const { return offset == 0; }
  friend bool operator==(const Locus&, const Locus&) = default;
};

struct SuffixLink {
  Locus target;
  std::uint32_t type = 0;  // 0 only at the root, which carries no link
  friend bool operator==(const SuffixLink&, const SuffixLink&) = default;
};

struct TreeNode {
  NodeId parent = kNoNode;
  std::uint64_t depth = 0;
  std::uint64_t edge_start = 0;  // text position of the first edge letter
  std::uint32_t min_rank = 0;
  std::uint32_t max_rank = 0;
  std::uint32_t child_begin = 0;
  std::uint32_t child_end = 0;
  std::uint32_t ordinal = kNoNode;  // leaves only
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeChild {
  Code letter = 0;
  NodeId node = kNoNode;
  friend bool operator==(const TreeChild&, const TreeChild&) = default;
};

class SparseSuffixTree {
 public:
  struct Parts {
    std::uint64_t text_size = 0;
    std::size_t block_size = 1;
    std::vector<TreeNode> nodes;
    std::vector<TreeChild> children;  // grouped by parent, sorted by letter
    std::vector<SuffixLink> links;    // per node; empty until typed links are set
    SparseSuffixArray sa;
    std::vector<NodeId> leaf_of_ordinal;
  };

  SparseSuffixTree() = default;
  explicit SparseSuffixTree(Parts parts) : p_(std::move(parts)) {}

  std::size_t node_count() const { return p_.nodes.size(); }
  std::size_t block_size() const { return p_.block_size; }
  std::uint64_t text_size() const { return p_.text_size; }
  const TreeNode& node(NodeId v) const { return p_.nodes[v]; }
  std::uint64_t depth(NodeId v) const { return p_.nodes[v].depth; }
  bool is_leaf(NodeId v) const { return p_.nodes[v].ordinal != kNoNode; }
  NodeId parent(NodeId v) const { return p_.nodes[v].parent; }
  const SparseSuffixArray& suffix_array() const { return p_.sa; }
  NodeId leaf_of_ordinal(std::uint32_t j) const { return p_.leaf_of_ordinal[j]; }
  const Parts& parts() const { return p_; }
  bool has_links() const { return !p_.links.empty(); }

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

  std::uint64_t edge_length(NodeId v) const { return depth(v) - depth(parent(v)); }

  std::uint64_t depth(const Locus& l) const { return depth(l.anchor) + l.offset; }

  /// Closest explicit node at or below the locus.
  NodeId closest_explicit_descendant(const Locus& l) const {
    return l.is_explicit() ? l.anchor : l.child;
  }

  const SuffixLink& link(NodeId v) const { return p_.links[v]; }

  /// A text position where the string of locus `l` starts.
  std::uint64_t label_start(const Locus& l) const {
    const NodeId below = closest_explicit_descendant(l);
    return std::uint64_t{p_.block_size} * p_.sa.ordinal_at(p_.nodes[below].min_rank) + 1;
  }

  void set_links(std::vector<SuffixLink> links) { p_.links = std::move(links); }

 private:
  Parts p_;
};

// ---------------------------------------------------------------------------
// Suffix array of the boundary suffixes.

namespace detail {

/// Prefix-doubling suffix array of an integer string whose last symbol is
/// unique. Returns suffix start indices in lexicographic order.
inline std::vector<std::uint32_t> suffix_array_of(const std::vector<std::uint32_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n), rank(s.begin(), s.end()), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);
  if (n <= 1) return sa;
  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::uint32_t i) {
      return std::pair<std::uint64_t, std::uint64_t>(rank[i], i + k < n ? rank[i + k] + 1ull : 0ull);
    };
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

/// Kasai LCP over an integer string: lcp[i] = LCP(sa[i-1], sa[i]), lcp[0] = 0.
inline std::vector<std::uint32_t> kasai_lcp(const std::vector<std::uint32_t>& s,
                                            const std::vector<std::uint32_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

/// Block-rank meta string: block b of T mapped to its rank among distinct
/// blocks. Packed block values put the first letter most significant.
inline std::vector<std::uint32_t> block_meta_string(const PackedText& t) {
  const std::size_t r = t.block_size();
  const std::uint64_t blocks = t.block_count();
  const unsigned bits = t.bits_per_char();
  std::vector<std::uint64_t> keys(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::uint64_t key = 0;
    for (std::size_t c = 0; c < r; ++c) key = (key << bits) | t.char_at(b * r + c + 1);
    keys[b] = key;
  }
  std::vector<std::uint64_t> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::uint32_t> meta(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b)
    meta[b] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), keys[b]) -
                                         distinct.begin());
  return meta;
}

}  // namespace detail

/// Sorts the boundary suffixes by sorting the suffixes of the block-rank
/// meta string (block-aligned suffixes compare block by block).
inline SparseSuffixArray build_suffix_array_r(const PackedText& t) {
  return SparseSuffixArray(detail::suffix_array_of(detail::block_meta_string(t)));
}

// ---------------------------------------------------------------------------
// Tree construction from SA_r plus character-level LCP.

inline SparseSuffixTree build_tree(const PackedText& t, SparseSuffixArray sa) {
  const std::size_t r = t.block_size();
  const std::uint64_t n = t.size();
  const std::size_t count = sa.size();

  const auto meta = detail::block_meta_string(t);
  const auto block_lcp = detail::kasai_lcp(meta, sa.by_rank());
  std::vector<std::uint64_t> lcp(count, 0);
  for (std::size_t i = 1; i < count; ++i) {
    const std::uint64_t a = std::uint64_t{r} * sa.by_rank()[i - 1] + std::uint64_t{r} * block_lcp[i] + 1;
    const std::uint64_t b = std::uint64_t{r} * sa.by_rank()[i] + std::uint64_t{r} * block_lcp[i] + 1;
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>({r, n - a + 1, n - b + 1}));
    lcp[i] = std::uint64_t{r} * block_lcp[i] + compare_span(t.sequence(), a, t.sequence(), b, len);
  }

  std::vector<TreeNode> nodes(1);
  std::vector<std::vector<NodeId>> kids(1);
  std::vector<NodeId> leaf_of(count, kNoNode);
  std::vector<NodeId> stack{kRoot};

  auto attach = [&](NodeId parent, NodeId child) {
    nodes[child].parent = parent;
    kids[parent].push_back(child);
  };
  auto make = [&](std::uint64_t depth) {
    nodes.push_back(TreeNode{});
    nodes.back().depth = depth;
    kids.emplace_back();
    return static_cast<NodeId>(nodes.size() - 1);
  };

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t l = lcp[i];
    NodeId last = kNoNode;
    while (nodes[stack.back()].depth > l) {
      last = stack.back();
      stack.pop_back();
      if (nodes[stack.back()].depth < l) {
        const NodeId mid = make(l);
        attach(mid, last);
        stack.push_back(mid);
        last = kNoNode;
        break;
      }
      attach(stack.back(), last);
    }
    const std::uint32_t j = sa.by_rank()[i];
    const NodeId leaf = make(n - std::uint64_t{r} * j);
    nodes[leaf].ordinal = j;
    nodes[leaf].min_rank = nodes[leaf].max_rank = static_cast<std::uint32_t>(i + 1);
    leaf_of[j] = leaf;
    stack.push_back(leaf);
  }
  while (stack.size() > 1) {
    const NodeId v = stack.back();
    stack.pop_back();
    attach(stack.back(), v);
  }

  // Renumber in preorder so the child table is contiguous and deterministic.
  std::vector<NodeId> order;
  order.reserve(nodes.size());
  std::vector<NodeId> todo{kRoot};
  while (!todo.empty()) {
    const NodeId v = todo.back();
    todo.pop_back();
    order.push_back(v);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) todo.push_back(*it);
  }
  std::vector<NodeId> new_id(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<NodeId>(i);

  SparseSuffixTree::Parts parts;
  parts.text_size = n;
  parts.block_size = r;
  parts.nodes.resize(nodes.size());
  for (NodeId old = 0; old < nodes.size(); ++old) {
    TreeNode node = nodes[old];
    node.parent = old == kRoot ? kNoNode : new_id[node.parent];
    parts.nodes[new_id[old]] = node;
  }
  // Post-order over the preorder numbering: children have larger ids.
  for (std::size_t idx = order.size(); idx-- > 0;) {
    const NodeId old = order[idx];
    TreeNode& node = parts.nodes[idx];
    if (!kids[old].empty()) {
      node.min_rank = parts.nodes[new_id[kids[old].front()]].min_rank;
      node.max_rank = parts.nodes[new_id[kids[old].back()]].max_rank;
    }
  }
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const NodeId old = order[idx];
    TreeNode& node = parts.nodes[idx];
    node.child_begin = static_cast<std::uint32_t>(parts.children.size());
    for (NodeId c : kids[old]) {
      TreeNode& child = parts.nodes[new_id[c]];
      child.edge_start = std::uint64_t{r} * sa.by_rank()[child.min_rank - 1] + 1 + node.depth;
      parts.children.push_back(TreeChild{t.char_at(child.edge_start), new_id[c]});
    }
    node.child_end = static_cast<std::uint32_t>(parts.children.size());
  }
  parts.leaf_of_ordinal.resize(count);
  for (std::size_t j = 0; j < count; ++j) parts.leaf_of_ordinal[j] = new_id[leaf_of[j]];
  parts.sa = std::move(sa);
  return SparseSuffixTree(std::move(parts));
}

// ---------------------------------------------------------------------------
// Descending along a packed source.

struct DescendCounters {
  std::uint64_t word_comparisons = 0;
  std::uint64_t char_comparisons = 0;
};

struct DescendResult {
  Locus locus;
  bool exhausted = false;  // the source ran out before any mismatch
};

/// Follows `src[base + depth(locus) ..= limit]` down from `locus`, comparing
/// up to `chunk` characters per operation. Chunks cut short by the end of
/// the source are tallied as character comparisons, all others as one word
/// comparison.
inline DescendResult descend(const SparseSuffixTree& tree, const PackedText& text,
                             const PackedSequence& src, std::uint64_t base, std::uint64_t limit,
                             Locus locus, std::size_t chunk, DescendCounters* counters = nullptr) {
  std::uint64_t depth = tree.depth(locus);
  for (;;) {
    const std::uint64_t pos = base + depth;
    if (pos > limit) return {locus, true};
    const std::uint64_t remaining = limit - pos + 1;
    NodeId child = locus.child;
    std::uint64_t offset = locus.offset;
    if (locus.is_explicit()) {
      child = tree.child_by_letter(locus.anchor, src.at(pos));
      if (child == kNoNode) {
        if (counters) ++counters->char_comparisons;
        return {locus, false};
      }
      offset = 0;
    }
    const std::uint64_t edge = tree.edge_length(child);
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>({chunk, edge - offset, remaining}));
    const std::size_t lcp = compare_span(text.sequence(), tree.node(child).edge_start + offset, src, pos, len);
    if (counters) {
      if (len < chunk && len == remaining)
        counters->char_comparisons += len;
      else
        ++counters->word_comparisons;
    }
    offset += lcp;
    depth += lcp;
    if (offset == edge)
      locus = Locus{child, kNoNode, 0};
    else if (offset == 0)
      locus = Locus{locus.anchor, kNoNode, 0};
    else
      locus = Locus{locus.anchor, child, offset};
    if (lcp < len) return {locus, false};
  }
}

/// Descends from explicit `from` to string depth `target` along text
/// starting at `start`, trusting that the path exists (skip/count).
inline Locus skip_count(const SparseSuffixTree& tree, const PackedText& text, std::uint64_t start,
                        NodeId from, std::uint64_t target) {
  NodeId x = from;
  while (tree.depth(x) < target) {
    const NodeId c = tree.child_by_letter(x, text.char_at(start + tree.depth(x)));
    ensure(c != kNoNode, "skip/count left the tree");
    if (tree.depth(c) <= target)
      x = c;
    else
      return Locus{x, c, target - tree.depth(x)};
  }
  return Locus{x, kNoNode, 0};
}

// ---------------------------------------------------------------------------
// Batched "locus at depth D on the root path of node x" queries, answered by
// one depth-first traversal that keeps the explicit root path in a stack and
// binary-searches it by depth.

struct PathQuery {
  NodeId lower = kRoot;  // explicit node whose root path contains the answer
  std::uint64_t depth = 0;
};

inline std::vector<Locus> answer_path_queries(const SparseSuffixTree& tree,
                                              const std::vector<PathQuery>& queries) {
  std::vector<Locus> out(queries.size());
  std::vector<std::uint32_t> head(tree.node_count() + 1, 0);
  for (const auto& q : queries) ++head[q.lower + 1];
  for (std::size_t v = 0; v < tree.node_count(); ++v) head[v + 1] += head[v];
  std::vector<std::uint32_t> bucket(queries.size());
  {
    std::vector<std::uint32_t> fill(head.begin(), head.end() - 1);
    for (std::uint32_t i = 0; i < queries.size(); ++i) bucket[fill[queries[i].lower]++] = i;
  }

  std::vector<NodeId> path;  // explicit nodes root..current
  std::vector<std::pair<NodeId, std::uint32_t>> dfs{{kRoot, 0}};
  path.push_back(kRoot);
  auto answer = [&](NodeId x) {
    for (std::uint32_t k = head[x]; k < head[x + 1]; ++k) {
      const PathQuery& q = queries[bucket[k]];
      ensure(q.depth <= tree.depth(x), "path query deeper than its node");
      auto it = std::lower_bound(path.begin(), path.end(), q.depth,
                                 [&](NodeId v, std::uint64_t d) { return tree.depth(v) < d; });
      if (tree.depth(*it) == q.depth) {
        out[bucket[k]] = Locus{*it, kNoNode, 0};
      } else {
        const NodeId above = *(it - 1);
        out[bucket[k]] = Locus{above, *it, q.depth - tree.depth(above)};
      }
    }
  };
  answer(kRoot);
  while (!dfs.empty()) {
    auto& [v, next] = dfs.back();
    auto kids = tree.children(v);
    if (next < kids.size()) {
      const NodeId c = kids[next++].node;
      dfs.push_back({c, 0});
      path.push_back(c);
      answer(c);
    } else {
      dfs.pop_back();
      path.pop_back();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suffix links.

/// Leftmost boundary occurrence (smallest ordinal) of every node's string.
inline std::vector<std::uint32_t> fixed_occurrences(const SparseSuffixTree& tree) {
  std::vector<std::uint32_t> first(tree.node_count(), kNoNode);
  // Preorder ids: children always follow their parent.
  for (NodeId v = static_cast<NodeId>(tree.node_count()); v-- > 0;) {
    if (tree.is_leaf(v)) first[v] = tree.node(v).ordinal;
    if (v != kRoot) first[tree.parent(v)] = std::min(first[tree.parent(v)], first[v]);
  }
  return first;
}

/// r-suffix links: the locus of l(v)[r+1..] for d(v) > r, the root
/// otherwise. Targets of explicit nodes are explicit whenever d(v) > r.
inline std::vector<Locus> compute_r_suffix_links(const SparseSuffixTree& tree) {
  const std::size_t r = tree.block_size();
  const auto first = fixed_occurrences(tree);
  std::vector<Locus> links(tree.node_count(), Locus{});
  std::vector<PathQuery> queries;
  std::vector<NodeId> owners;
  for (NodeId v = 1; v < tree.node_count(); ++v) {
    if (tree.depth(v) <= r) continue;
    queries.push_back(PathQuery{tree.leaf_of_ordinal(first[v] + 1), tree.depth(v) - r});
    owners.push_back(v);
  }
  const auto answers = answer_path_queries(tree, queries);
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (!answers[i].is_explicit())
      fail(ErrorKind::InternalInvariantViolation,
           "r-suffix link of node " + std::to_string(owners[i]) + " lands on an implicit node");
    links[owners[i]] = answers[i];
  }
  return links;
}

/// Per-ordinal lists of non-root explicit nodes keyed by their leftmost
/// boundary occurrence, each list in increasing string depth.
inline std::vector<std::vector<NodeId>> compile_q(const SparseSuffixTree& tree) {
  const auto first = fixed_occurrences(tree);
  std::vector<std::vector<NodeId>> q(tree.suffix_array().size());
  std::vector<NodeId> level{kRoot}, next;
  while (!level.empty()) {
    next.clear();
    for (NodeId v : level) {
      if (v != kRoot) q[first[v]].push_back(v);
      for (const auto& c : tree.children(v)) next.push_back(c.node);
    }
    level.swap(next);
  }
  return q;
}

struct BetaWalkStats {
  std::uint64_t skip_steps = 0;
  DescendCounters extension;
};

/// Loci of beta[j] = the longest prefix of T[rj+i+1..] represented in the
/// tree, for every ordinal j. Each beta[j+1] starts from the r-suffix link
/// of beta[j]'s anchor, skips to depth |beta[j]| - r, then extends.
inline std::vector<Locus> locate_beta_loci(const SparseSuffixTree& tree, const PackedText& text,
                                           const std::vector<Locus>& r_links, std::size_t i,
                                           BetaWalkStats* stats = nullptr) {
  const std::size_t r = tree.block_size();
  const std::uint64_t n = text.size();
  const std::size_t count = tree.suffix_array().size();
  const std::size_t chunk = text.word_capacity();
  std::vector<Locus> beta(count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t start = std::uint64_t{r} * j + i + 1;
    Locus from{};
    if (j > 0) {
      const std::uint64_t prev = tree.depth(beta[j - 1]);
      if (prev > r) {
        const NodeId anchor = beta[j - 1].anchor;
        const NodeId shortcut = tree.depth(anchor) > r ? r_links[anchor].anchor : kRoot;
        from = skip_count(tree, text, start, shortcut, prev - r);
        if (stats) stats->skip_steps += tree.depth(from) > tree.depth(shortcut) ? 1 : 0;
      }
    }
    beta[j] = descend(tree, text, text.sequence(), start, n, from, chunk,
                      stats ? &stats->extension : nullptr)
                  .locus;
  }
  return beta;
}

/// Sets the typed suffix link of every non-root explicit node, resolving
/// links of type 1, 2, ..., r in rounds. In round i the head v of Q[j]
/// resolves when d(v) - i <= |beta[j]|; its target is the locus at depth
/// d(v) - i on the root path of beta[j].
inline void compute_typed_suffix_links(SparseSuffixTree& tree, const PackedText& text) {
  const std::size_t r = tree.block_size();
  auto q = compile_q(tree);
  const auto r_links = compute_r_suffix_links(tree);
  std::vector<std::size_t> head(q.size(), 0);
  std::vector<SuffixLink> links(tree.node_count());
  std::size_t unresolved = tree.node_count() - 1;

  for (std::size_t i = 1; i <= r && unresolved > 0; ++i) {
    const auto beta = locate_beta_loci(tree, text, r_links, i);
    std::vector<PathQuery> queries;
    std::vector<NodeId> owners;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const std::uint64_t reach = tree.depth(beta[j]);
      const NodeId lower = tree.closest_explicit_descendant(beta[j]);
      while (head[j] < q[j].size()) {
        const NodeId v = q[j][head[j]];
        if (tree.depth(v) - i > reach) break;
        queries.push_back(PathQuery{lower, tree.depth(v) - i});
        owners.push_back(v);
        ++head[j];
      }
    }
    const auto targets = answer_path_queries(tree, queries);
    for (std::size_t k = 0; k < owners.size(); ++k)
      links[owners[k]] = SuffixLink{targets[k], static_cast<std::uint32_t>(i)};
    unresolved -= owners.size();
  }
  if (unresolved != 0)
    fail(ErrorKind::InternalInvariantViolation,
         std::to_string(unresolved) + " nodes have no suffix link after round r");
  tree.set_links(std::move(links));
}

inline SparseSuffixTree build_sparse_suffix_tree(const PackedText& text) {
  SparseSuffixTree tree = build_tree(text, build_suffix_array_r(text));
  compute_typed_suffix_links(tree, text);
  return tree;
}

}  // namespace psi
