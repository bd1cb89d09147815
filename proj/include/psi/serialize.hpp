#pragma once

// Index file format. All integers are little-endian; lengths and fields are
// u64 unless noted.
//
//   "PSI1" | version:u32 | section*
//   section = tag:u32 | payload_length | payload | crc32(payload):u32
//
// Sections in order: header, alphabet, text, suffix_array, tree, trie and,
// when the header flags say so, count_table.

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <boost/crc.hpp>

#include "psi/index.hpp"

namespace psi {

inline constexpr std::array<char, 4> kMagic{'P', 'S', 'I', '1'};

enum class SectionTag : std::uint32_t {
  header = 1,
  alphabet = 2,
  text = 3,
  suffix_array = 4,
  tree = 5,
  trie = 6,
  count_table = 7,
};

inline std::string section_name(SectionTag tag) {
  switch (tag) {
    case SectionTag::header: return "header";
    case SectionTag::alphabet: return "alphabet";
    case SectionTag::text: return "text";
    case SectionTag::suffix_array: return "suffix_array";
    case SectionTag::tree: return "tree";
    case SectionTag::trie: return "trie";
    case SectionTag::count_table: return "count_table";
  }
  return "unknown";
}

namespace header_flags {
inline constexpr std::uint64_t table_enabled = 1;
inline constexpr std::uint64_t table_stored = 2;
}  // namespace header_flags

namespace detail {

inline std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

class ByteWriter {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  template <class T>
  void array(const std::vector<T>& values) {
    u64(values.size());
    for (const T& v : values) u64(static_cast<std::uint64_t>(v));
  }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> in, std::string section) : in_(in), section_(std::move(section)) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{in_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return v;
  }
  std::span<const std::uint8_t> bytes(std::size_t count) {
    need(count);
    auto s = in_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  /// Length-prefixed array of u64 values narrowed to T; the length must fit
  /// the remaining bytes.
  template <class T>
  std::vector<T> array() {
    const std::uint64_t count = u64();
    if (count > remaining() / 8) corrupt("array length " + std::to_string(count) + " exceeds section");
    std::vector<T> out(count);
    for (auto& v : out) {
      const std::uint64_t raw = u64();
      if (raw > std::numeric_limits<T>::max()) corrupt("value out of range");
      v = static_cast<T>(raw);
    }
    return out;
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  std::size_t position() const { return pos_; }
  void expect_end() {
    if (pos_ != in_.size()) corrupt(std::to_string(remaining()) + " trailing bytes");
  }
  [[noreturn]] void corrupt(const std::string& why) const { fail(ErrorKind::CorruptSection, section_ + ": " + why); }
  void check(bool ok, const std::string& why) const {
    if (!ok) corrupt(why);
  }

 private:
  void need(std::size_t count) const {
    if (count > remaining()) corrupt("truncated");
  }

  std::span<const std::uint8_t> in_;
  std::string section_;
  std::size_t pos_ = 0;
};

inline void write_section(ByteWriter& file, SectionTag tag, ByteWriter& payload) {
  auto& bytes = payload.data();
  file.u32(static_cast<std::uint32_t>(tag));
  file.u64(bytes.size());
  file.bytes(bytes);
  file.u32(crc32(bytes));
}

}  // namespace detail

/// Byte range of one framed section within a serialized index.
struct SectionSpan {
  SectionTag tag;
  std::size_t offset = 0;          // start of the tag
  std::size_t payload_offset = 0;
  std::size_t payload_length = 0;
  std::size_t total_length() const { return payload_length + 16; }
};

inline std::vector<std::uint8_t> serialize(const Index& index, bool store_table = false) {
  using detail::ByteWriter;
  const PackedText& t = index.text();
  const auto& table = index.trie().table();
  store_table = store_table && table.enabled();

  ByteWriter file;
  file.bytes(std::span(reinterpret_cast<const std::uint8_t*>(kMagic.data()), kMagic.size()));
  file.u32(kFormatVersion);

  ByteWriter header;
  header.u64(t.raw_size());
  header.u64(t.size());
  header.u64(t.block_size());
  header.u64(t.alphabet().size());
  header.u64(t.word_capacity());
  header.u64(t.half_block());
  header.u64(t.bits_per_char());
  header.u64((table.enabled() ? header_flags::table_enabled : 0) | (store_table ? header_flags::table_stored : 0));
  header.u64(index.config().table_budget);
  detail::write_section(file, SectionTag::header, header);

  ByteWriter alphabet;
  alphabet.u64(static_cast<std::uint64_t>(t.alphabet().mode()));
  alphabet.u64(t.alphabet().size());
  alphabet.bytes(t.alphabet().chars());
  detail::write_section(file, SectionTag::alphabet, alphabet);

  ByteWriter text;
  text.array(t.sequence().words());
  detail::write_section(file, SectionTag::text, text);

  const auto& sa = index.tree().suffix_array();
  ByteWriter sa_section;
  sa_section.array(sa.by_rank());
  sa_section.array(sa.by_ordinal());
  detail::write_section(file, SectionTag::suffix_array, sa_section);

  const auto& tp = index.tree().parts();
  ByteWriter tree;
  tree.u64(tp.nodes.size());
  for (const TreeNode& n : tp.nodes) {
    tree.u64(n.parent);
    tree.u64(n.depth);
    tree.u64(n.edge_start);
    tree.u64(n.min_rank);
    tree.u64(n.max_rank);
    tree.u64(n.child_begin);
    tree.u64(n.child_end);
    tree.u64(n.ordinal);
  }
  tree.u64(tp.children.size());
  for (const TreeChild& c : tp.children) {
    tree.u64(c.letter);
    tree.u64(c.node);
  }
  tree.u64(tp.links.size());
  for (const SuffixLink& l : tp.links) {
    tree.u64(l.target.anchor);
    tree.u64(l.target.child);
    tree.u64(l.target.offset);
    tree.u64(l.type);
  }
  detail::write_section(file, SectionTag::tree, tree);

  const auto& cp = index.trie().parts();
  ByteWriter trie;
  trie.u64(cp.nodes.size());
  for (const TrieNode& n : cp.nodes) {
    trie.u64(n.parent);
    trie.u64(n.depth);
    trie.u64(n.label_begin);
    trie.u64(n.label_len);
    trie.u64(n.child_begin);
    trie.u64(n.child_end);
    trie.u64(n.size);
    trie.u64(n.rho_begin);
    trie.u64(n.count_begin);
    trie.u64(n.ord_begin);
  }
  trie.u64(cp.children.size());
  for (const TreeChild& c : cp.children) {
    trie.u64(c.letter);
    trie.u64(c.node);
  }
  trie.array(cp.labels);
  trie.array(cp.rho);
  trie.array(cp.counts);
  trie.array(cp.ords);
  detail::write_section(file, SectionTag::trie, trie);

  if (store_table) {
    ByteWriter ct;
    ct.u64(table.raw().size());
    ct.bytes(table.raw());
    detail::write_section(file, SectionTag::count_table, ct);
  }
  return std::move(file.data());
}

/// Splits a serialized index into its framed sections without validating
/// payloads.
inline std::vector<SectionSpan> section_layout(std::span<const std::uint8_t> bytes) {
  std::vector<SectionSpan> out;
  std::size_t pos = 8;
  while (pos + 12 <= bytes.size()) {
    detail::ByteReader r(bytes.subspan(pos), "layout");
    SectionSpan s;
    s.tag = static_cast<SectionTag>(r.u32());
    s.offset = pos;
    s.payload_length = r.u64();
    s.payload_offset = pos + 12;
    if (s.payload_offset + s.payload_length + 4 > bytes.size()) break;
    out.push_back(s);
    pos = s.payload_offset + s.payload_length + 4;
  }
  return out;
}

namespace detail {

inline std::span<const std::uint8_t> read_section(ByteReader& file, SectionTag expected,
                                                  std::span<const std::uint8_t> all) {
  const std::string name = section_name(expected);
  if (file.remaining() < 12) fail(ErrorKind::CorruptSection, name + ": missing section");
  const std::uint32_t tag = file.u32();
  if (tag != static_cast<std::uint32_t>(expected))
    fail(ErrorKind::CorruptSection, name + ": unexpected tag " + std::to_string(tag));
  const std::uint64_t length = file.u64();
  if (length > file.remaining() || file.remaining() - length < 4)
    fail(ErrorKind::CorruptSection, name + ": truncated");
  const std::size_t start = file.position();
  file.bytes(static_cast<std::size_t>(length));
  const std::uint32_t stored = file.u32();
  auto payload = all.subspan(start, static_cast<std::size_t>(length));
  if (crc32(payload) != stored) fail(ErrorKind::CorruptSection, name + ": checksum mismatch");
  return payload;
}

}  // namespace detail

/// Parses and validates a serialized index. Throws BadMagic,
/// VersionMismatch or CorruptSection (naming the section).
inline Index deserialize(std::span<const std::uint8_t> bytes) {
  using detail::ByteReader;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
    fail(ErrorKind::BadMagic, "not an index file");
  ByteReader file(bytes.subspan(4), "header");
  if (file.remaining() < 4) fail(ErrorKind::CorruptSection, "header: truncated");
  const std::uint32_t version = file.u32();
  if (version != kFormatVersion)
    fail(ErrorKind::VersionMismatch, "file version " + std::to_string(version) + ", expected " +
                                         std::to_string(kFormatVersion));
  auto all = bytes.subspan(4);

  // header
  ByteReader h(detail::read_section(file, SectionTag::header, all), "header");
  const std::uint64_t n_raw = h.u64(), n = h.u64(), r = h.u64(), sigma = h.u64(), capacity = h.u64(),
                      half = h.u64(), bits = h.u64(), flags = h.u64(), budget = h.u64();
  h.expect_end();
  h.check(r >= 1 && r <= 64 && capacity >= r && sigma >= 1 && sigma <= 256, "bad block/alphabet parameters");
  h.check(bits == bits_for_codes(sigma + 2) && bits * capacity <= kWordBits, "bad packing parameters");
  h.check(n % r == 0 && n >= n_raw + 1 && n - n_raw <= r, "bad text length");
  h.check(half == std::max<std::uint64_t>(1, r / 2), "bad half-block size");
  h.check((flags & ~std::uint64_t{3}) == 0, "unknown flags");
  const std::uint64_t blocks = n / r;

  // alphabet
  ByteReader a(detail::read_section(file, SectionTag::alphabet, all), "alphabet");
  const std::uint64_t mode = a.u64();
  const std::uint64_t count = a.u64();
  a.check(mode <= 1 && count == sigma, "bad alphabet size or mode");
  auto chars_span = a.bytes(static_cast<std::size_t>(count));
  a.expect_end();
  std::vector<std::uint8_t> chars(chars_span.begin(), chars_span.end());
  for (std::size_t i = 1; i < chars.size(); ++i) a.check(chars[i - 1] < chars[i], "characters not sorted");
  a.check(mode == 0 || chars.size() == 256, "byte alphabet must cover 256 values");
  Alphabet alphabet = Alphabet::from_chars(static_cast<AlphabetMode>(mode), std::move(chars));

  // text
  ByteReader tx(detail::read_section(file, SectionTag::text, all), "text");
  auto words = tx.array<std::uint64_t>();
  tx.expect_end();
  tx.check(words.size() == (n + capacity - 1) / capacity, "word count mismatch");
  PackedSequence seq(std::move(words), static_cast<unsigned>(bits), capacity, n);
  for (std::uint64_t p = 1; p <= n; ++p) {
    const Code c = seq.at(p);
    if (p <= n_raw)
      tx.check(c >= 1 && c <= sigma, "invalid text code");
    else if (p < n)
      tx.check(c == sigma + 1, "invalid padding");
    else
      tx.check(c == 0, "missing sentinel");
  }
  PackedText text(std::move(alphabet), n_raw, static_cast<std::size_t>(r), std::move(seq));

  // suffix array
  ByteReader s(detail::read_section(file, SectionTag::suffix_array, all), "suffix_array");
  auto by_rank = s.array<std::uint32_t>();
  auto by_ordinal = s.array<std::uint32_t>();
  s.expect_end();
  s.check(by_rank.size() == blocks && by_ordinal.size() == blocks, "length mismatch");
  for (std::size_t i = 0; i < blocks; ++i) {
    s.check(by_rank[i] < blocks, "ordinal out of range");
    s.check(by_ordinal[by_rank[i]] == i + 1, "inverse mismatch");
  }
  SparseSuffixArray sa(std::move(by_rank));

  // tree
  ByteReader tr(detail::read_section(file, SectionTag::tree, all), "tree");
  SparseSuffixTree::Parts tp;
  tp.text_size = n;
  tp.block_size = static_cast<std::size_t>(r);
  const std::uint64_t tree_nodes = tr.u64();
  tr.check(tree_nodes >= blocks + 1 && tree_nodes <= 2 * blocks + 1 && tree_nodes <= tr.remaining() / 64,
           "node count out of range");
  tp.nodes.resize(tree_nodes);
  for (auto& node : tp.nodes) {
    node.parent = static_cast<NodeId>(tr.u64());
    node.depth = tr.u64();
    node.edge_start = tr.u64();
    node.min_rank = static_cast<std::uint32_t>(tr.u64());
    node.max_rank = static_cast<std::uint32_t>(tr.u64());
    node.child_begin = static_cast<std::uint32_t>(tr.u64());
    node.child_end = static_cast<std::uint32_t>(tr.u64());
    node.ordinal = static_cast<std::uint32_t>(tr.u64());
  }
  const std::uint64_t tree_children = tr.u64();
  tr.check(tree_children == tree_nodes - 1 && tree_children <= tr.remaining() / 16, "child count mismatch");
  tp.children.resize(tree_children);
  for (auto& c : tp.children) {
    c.letter = static_cast<Code>(tr.u64());
    c.node = static_cast<NodeId>(tr.u64());
  }
  const std::uint64_t tree_links = tr.u64();
  tr.check(tree_links == tree_nodes && tree_links <= tr.remaining() / 32, "link count mismatch");
  tp.links.resize(tree_links);
  for (auto& l : tp.links) {
    l.target.anchor = static_cast<NodeId>(tr.u64());
    l.target.child = static_cast<NodeId>(tr.u64());
    l.target.offset = tr.u64();
    l.type = static_cast<std::uint32_t>(tr.u64());
  }
  tr.expect_end();
  tp.leaf_of_ordinal.assign(blocks, kNoNode);
  for (NodeId v = 0; v < tree_nodes; ++v) {
    const TreeNode& node = tp.nodes[v];
    tr.check(v == kRoot ? node.parent == kNoNode : node.parent < v, "bad parent");
    tr.check(node.child_begin <= node.child_end && node.child_end <= tree_children, "bad child range");
    tr.check(node.min_rank >= 1 && node.min_rank <= node.max_rank && node.max_rank <= blocks, "bad ranks");
    if (v != kRoot) {
      const TreeNode& up = tp.nodes[node.parent];
      tr.check(node.depth > up.depth && node.edge_start >= 1 && node.edge_start + (node.depth - up.depth) - 1 <= n,
               "bad edge");
      const SuffixLink& l = tp.links[v];
      tr.check(l.type >= 1 && l.type <= r && l.type <= node.depth, "bad link type");
      tr.check(l.target.anchor < tree_nodes, "bad link anchor");
      if (l.target.offset != 0)
        tr.check(l.target.child < tree_nodes && tp.nodes[l.target.child].parent == l.target.anchor &&
                     l.target.offset < tp.nodes[l.target.child].depth - tp.nodes[l.target.anchor].depth,
                 "bad link locus");
      else
        tr.check(l.target.child == kNoNode, "bad link locus");
      tr.check(tp.nodes[l.target.anchor].depth + l.target.offset == node.depth - l.type, "bad link depth");
    }
    if (node.child_begin == node.child_end) {
      tr.check(node.ordinal < blocks && tp.leaf_of_ordinal[node.ordinal] == kNoNode, "bad leaf ordinal");
      tr.check(node.min_rank == node.max_rank && by_ordinal[node.ordinal] == node.min_rank, "bad leaf rank");
      tr.check(node.depth == n - r * node.ordinal, "bad leaf depth");
      tp.leaf_of_ordinal[node.ordinal] = v;
    } else {
      tr.check(node.ordinal == kNoNode, "internal node with ordinal");
    }
    for (std::uint32_t c = node.child_begin; c < node.child_end; ++c) {
      tr.check(tp.children[c].node < tree_nodes && tp.nodes[tp.children[c].node].parent == v, "bad child");
      tr.check(c == node.child_begin || tp.children[c - 1].letter < tp.children[c].letter, "children unsorted");
      tr.check(text.char_at(tp.nodes[tp.children[c].node].edge_start) == tp.children[c].letter,
               "child letter mismatch");
    }
  }
  for (NodeId leaf : tp.leaf_of_ordinal) tr.check(leaf != kNoNode, "missing leaf");
  tp.sa = std::move(sa);
  SparseSuffixTree tree(std::move(tp));

  // trie
  ByteReader ti(detail::read_section(file, SectionTag::trie, all), "trie");
  BlockTrie::Parts cp;
  cp.block_size = static_cast<std::size_t>(r);
  cp.base = sigma + 2;
  cp.half_block = static_cast<std::size_t>(half);
  const std::uint64_t trie_nodes = ti.u64();
  ti.check(trie_nodes >= 2 && trie_nodes <= 2 * blocks + 1 && trie_nodes <= ti.remaining() / 80,
           "node count out of range");
  cp.nodes.resize(trie_nodes);
  for (auto& node : cp.nodes) {
    node.parent = static_cast<NodeId>(ti.u64());
    node.depth = static_cast<std::uint32_t>(ti.u64());
    node.label_begin = ti.u64();
    node.label_len = static_cast<std::uint32_t>(ti.u64());
    node.child_begin = static_cast<std::uint32_t>(ti.u64());
    node.child_end = static_cast<std::uint32_t>(ti.u64());
    node.size = ti.u64();
    node.rho_begin = ti.u64();
    node.count_begin = ti.u64();
    node.ord_begin = ti.u64();
  }
  const std::uint64_t trie_children = ti.u64();
  ti.check(trie_children == trie_nodes - 1 && trie_children <= ti.remaining() / 16, "child count mismatch");
  cp.children.resize(trie_children);
  for (auto& c : cp.children) {
    c.letter = static_cast<Code>(ti.u64());
    c.node = static_cast<NodeId>(ti.u64());
  }
  cp.labels = ti.array<Code>();
  cp.rho = ti.array<std::uint64_t>();
  cp.counts = ti.array<std::uint32_t>();
  cp.ords = ti.array<std::uint32_t>();
  ti.expect_end();
  {
    std::vector<std::uint64_t> rho_rebuilt;
    std::vector<std::uint32_t> counts_rebuilt;
    std::vector<bool> seen(blocks, false);
    std::uint64_t leaf_total = 0;
    const FourRussiansTable decoder = build_count_table(cp.base, cp.half_block, 0);
    std::uint64_t entry_limit = 1;
    for (std::uint64_t i = 0; i < half; ++i) entry_limit *= cp.base;
    for (NodeId v = 0; v < trie_nodes; ++v) {
      const TrieNode& node = cp.nodes[v];
      ti.check(v == 0 ? node.parent == kNoNode : node.parent < v, "bad parent");
      ti.check(node.child_begin <= node.child_end && node.child_end <= trie_children, "bad child range");
      ti.check(node.label_begin + node.label_len <= cp.labels.size(), "bad label");
      ti.check(v == 0 ? node.depth == 0 && node.label_len == 0
                      : node.label_len >= 1 && node.depth == cp.nodes[node.parent].depth + node.label_len,
               "bad depth");
      ti.check(v != 0 || node.size == blocks, "root size mismatch");
      for (std::uint32_t c = node.child_begin; c < node.child_end; ++c) {
        const NodeId u = cp.children[c].node;
        ti.check(u < trie_nodes && cp.nodes[u].parent == v, "bad child");
        ti.check(c == node.child_begin || cp.children[c - 1].letter < cp.children[c].letter, "children unsorted");
        ti.check(cp.labels[cp.nodes[u].label_begin] == cp.children[c].letter, "child letter mismatch");
      }
      if (node.child_begin == node.child_end) {
        ti.check(node.depth == r && node.ord_begin + node.size <= cp.ords.size(), "bad leaf");
        for (std::uint64_t i = 0; i < node.size; ++i) {
          const std::uint32_t j = cp.ords[node.ord_begin + i];
          ti.check(j < blocks && !seen[j], "bad leaf ordinal");
          seen[j] = true;
        }
        leaf_total += node.size;
      } else {
        std::uint64_t child_total = 0;
        for (std::uint32_t c = node.child_begin; c < node.child_end; ++c) child_total += cp.nodes[cp.children[c].node].size;
        ti.check(child_total == node.size, "children do not partition the node");
        const std::uint64_t entries = (node.size + half - 1) / half;
        ti.check(node.rho_begin + entries <= cp.rho.size() && node.count_begin + entries * cp.base <= cp.counts.size(),
                 "bad letter arrays");
        std::vector<Code> letters;
        for (std::uint64_t w = 0; w < entries; ++w) {
          const std::uint64_t u = cp.rho[node.rho_begin + w];
          ti.check(u < entry_limit, "bad rho entry");
          for (std::size_t q = 1; q <= half && letters.size() < node.size; ++q) letters.push_back(decoder.digit(u, q));
        }
        for (std::uint32_t c = node.child_begin; c < node.child_end; ++c) {
          const auto hits = std::count(letters.begin(), letters.end(), cp.children[c].letter);
          ti.check(static_cast<std::uint64_t>(hits) == cp.nodes[cp.children[c].node].size, "letters disagree with children");
        }
        rho_rebuilt.clear();
        counts_rebuilt.clear();
        append_packed_letters(letters, cp.base, cp.half_block, rho_rebuilt, counts_rebuilt);
        ti.check(std::equal(rho_rebuilt.begin(), rho_rebuilt.end(), cp.rho.begin() + node.rho_begin) &&
                     std::equal(counts_rebuilt.begin(), counts_rebuilt.end(), cp.counts.begin() + node.count_begin),
                 "letter counts inconsistent");
      }
    }
    ti.check(leaf_total == blocks, "leaves do not cover all ordinals");
  }

  // count table
  auto table = std::make_shared<const FourRussiansTable>(build_count_table(sigma + 2, half, budget));
  const bool enabled = flags & header_flags::table_enabled;
  if (enabled != table->enabled()) fail(ErrorKind::CorruptSection, "header: table flag disagrees with budget");
  if (flags & header_flags::table_stored) {
    ByteReader c(detail::read_section(file, SectionTag::count_table, all), "count_table");
    const std::uint64_t size = c.u64();
    c.check(size == table->raw().size(), "size mismatch");
    auto raw = c.bytes(static_cast<std::size_t>(size));
    c.expect_end();
    c.check(std::equal(raw.begin(), raw.end(), table->raw().begin()), "table contents mismatch");
  }
  if (file.remaining() != 0) fail(ErrorKind::CorruptSection, "trailer: unexpected trailing bytes");

  BuildConfig config;
  config.block_size = static_cast<std::size_t>(r);
  config.alphabet = static_cast<AlphabetMode>(mode);
  config.word_capacity = static_cast<std::size_t>(capacity);
  config.table_budget = budget;
  return Index(std::move(text), std::move(tree), BlockTrie(std::move(cp), std::move(table)), config);
}

inline void save_index(const Index& index, const std::string& path, bool store_table = false) {
  const auto bytes = serialize(index, store_table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

inline Index load_index(const std::string& path) { return deserialize(read_file(path)); }

}  // namespace psi
