#include <gtest/gtest.h>

#include <random>
#include <set>

#include "psi/left_search.hpp"
#include "psi/oracle.hpp"

using namespace psi;

namespace {

struct Sample {
  PackedText text = encode_text("abaabaa", 2);
  SparseSuffixArray sa = build_suffix_array_r(text);
  BlockTrie trie = build_annotated_trie(text, sa, nullptr, {});
};

std::set<std::uint32_t> as_set(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(LeftSearch, SampleAba) {
  Sample d;
  LeftSearchCounters c;
  const auto out = left_search(d.trie, *d.text.encode_pattern("aba"), 1, RankInterval{4, 4}, &c);
  EXPECT_EQ(out, (std::vector<std::uint32_t>{2}));
  EXPECT_LE(c.descent_nodes, 2u);
}

TEST(LeftSearch, SampleBa) {
  Sample d;
  EXPECT_EQ(left_search(d.trie, *d.text.encode_pattern("ba"), 1, RankInterval{1, 3}),
            (std::vector<std::uint32_t>{1}));
}

TEST(LeftSearch, SampleBbIsEmpty) {
  Sample d;
  // "b" occurs at ordinal 2 but the block before it ends in 'a'.
  EXPECT_TRUE(left_search(d.trie, *d.text.encode_pattern("bb"), 1, RankInterval{4, 4}).empty());
}

TEST(Traverse, SampleLeafAndRoot) {
  Sample d;
  const NodeId na = d.trie.child_by_letter(kRoot, 1);
  const NodeId aa = d.trie.child_by_letter(na, 1);
  std::vector<std::uint32_t> out;
  traverse(d.trie, aa, RankInterval{1, 1}, out);
  EXPECT_EQ(out, (std::vector<std::uint32_t>{2}));
  out.clear();
  traverse(d.trie, kRoot, RankInterval{1, 4}, out);
  EXPECT_EQ(as_set(out), (std::set<std::uint32_t>{0, 1, 2, 3}));
  out.clear();
  traverse(d.trie, kRoot, RankInterval{}, out);
  EXPECT_TRUE(out.empty());
}

TEST(LeftSearch, MatchesBruteForcePairs) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const std::size_t r = 2 + rng() % 7;
    const std::size_t sigma = std::vector<std::size_t>{2, 4, 16}[rng() % 3];
    const std::string raw = oracle::random_string(rng, sigma, 1 + rng() % 800);
    const PackedText t = encode_text(raw, r);
    const auto sa = build_suffix_array_r(t);
    const auto trie = build_annotated_trie(t, sa, nullptr, {});
    const auto ot = oracle::make_oracle_text(raw, r);
    const auto order = oracle::boundary_order(ot);
    for (int q = 0; q < 20; ++q) {
      const std::size_t m = r + rng() % 10;
      const std::string p = (q % 2 == 0 && m <= raw.size()) ? raw.substr(rng() % (raw.size() - m + 1), m)
                                                            : oracle::random_string(rng, sigma, m);
      auto codes = ot.encode(p);
      if (!codes) continue;
      const auto packed = t.pack_pattern(*codes);
      for (std::uint32_t k = 1; k < r; ++k) {
        const std::span<const std::uint32_t> all(*codes);
        const auto iv = oracle::naive_rank_interval(ot, order, all.subspan(k));
        if (iv.empty()) continue;
        std::set<std::uint32_t> want;
        for (std::uint32_t j = 0; j < ot.blocks(); ++j) {
          if (!oracle::has_prefix(ot, std::uint64_t{r} * j + 1, all.subspan(k))) continue;
          if (std::uint64_t{r} * j < k) continue;
          if (oracle::has_prefix(ot, std::uint64_t{r} * j + 1 - k, all.subspan(0, k))) want.insert(j);
        }
        LeftSearchCounters c;
        const auto got = left_search(trie, packed, k, iv, &c);
        ASSERT_EQ(got.size(), want.size()) << raw << " / " << p << " k=" << k;
        ASSERT_EQ(as_set(got), want);
        ASSERT_LE(c.descent_nodes, k + 1);
        ASSERT_LE(c.traverse_visits, (ot.filler + 1) * r * (want.size() + 1));
      }
    }
  }
}
