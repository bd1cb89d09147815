#include <gtest/gtest.h>

#include <random>

#include "psi/block_trie.hpp"
#include "psi/oracle.hpp"
#include "support.hpp"

using namespace psi;
using psi::testing::kind_of;

namespace {

constexpr Code a = 1, b = 2, fill = 3;

struct Sample {
  PackedText text = encode_text("abaabaa", 2);
  SparseSuffixArray sa = build_suffix_array_r(text);
  BlockTrie trie = build_annotated_trie(
      text, sa, std::make_shared<const FourRussiansTable>(build_count_table(text.base(), text.half_block())),
      AnnotateOptions{true});
};

std::vector<Code> letters_of(const PackedLetters& l) {
  std::vector<Code> out;
  for (std::uint64_t p = 1; p <= l.size(); ++p) out.push_back(l.letter_at(p));
  return out;
}

}  // namespace

TEST(BlockTrie, SampleStructure) {
  Sample d;
  std::vector<Code> first;
  for (auto c : d.trie.children(kRoot)) first.push_back(c.letter);
  EXPECT_EQ(first, (std::vector<Code>{a, b, fill}));
  std::size_t leaves = 0;
  for (NodeId v = 0; v < d.trie.node_count(); ++v) leaves += d.trie.is_leaf(v) ? 1 : 0;
  EXPECT_EQ(leaves, 4u);
  const NodeId na = d.trie.child_by_letter(kRoot, a);
  const NodeId aa = d.trie.child_by_letter(na, a);
  ASSERT_NE(aa, kNoNode);
  auto ords = d.trie.leaf_ordinals(aa);
  EXPECT_EQ(std::vector<std::uint32_t>(ords.begin(), ords.end()), (std::vector<std::uint32_t>{2}));
}

TEST(BlockTrie, EqualBlocksShareALeaf) {
  const PackedText t = encode_text("abababab", 2);  // blocks ab ab ab ab, then #$
  const auto sa = build_suffix_array_r(t);
  const auto trie = build_annotated_trie(t, sa, nullptr, {});
  const NodeId ba = trie.child_by_letter(kRoot, 2);
  ASSERT_NE(ba, kNoNode);
  ASSERT_TRUE(trie.is_leaf(ba));
  auto ords = trie.leaf_ordinals(ba);
  EXPECT_EQ(std::set<std::uint32_t>(ords.begin(), ords.end()), (std::set<std::uint32_t>{1, 2, 3, 4}));
}

TEST(Annotate, SampleOrdAndRho) {
  Sample d;
  const auto& ord = d.trie.retained_orders();
  EXPECT_EQ(ord[kRoot], (std::vector<std::uint32_t>{3, 1, 0, 2}));
  EXPECT_EQ(letters_of(d.trie.letters(kRoot)), (std::vector<Code>{a, b, fill, a}));
  const NodeId na = d.trie.child_by_letter(kRoot, a);
  EXPECT_EQ(ord[na], (std::vector<std::uint32_t>{3, 2}));
  EXPECT_EQ(d.trie.count_prefix(kRoot, a, 4), 2u);
}

TEST(CountTable, IdentityAtHalfBlockOne) {
  const auto t = build_count_table(4, 1);
  ASSERT_TRUE(t.enabled());
  EXPECT_EQ(t.entry_count(), 16u);
  for (std::uint64_t u = 0; u < 4; ++u)
    for (Code c = 0; c < 4; ++c) EXPECT_EQ(t.count(u, c, 1), u == c ? 1u : 0u);
}

TEST(CountTable, EntryFormulaAndConservation) {
  for (std::uint64_t sigma : {2, 3, 4}) {
    for (std::size_t h : {1, 2, 3}) {
      const std::uint64_t base = sigma + 2;
      const auto t = build_count_table(base, h);
      std::uint64_t want = h;
      for (std::size_t i = 0; i <= h; ++i) want *= base;
      ASSERT_EQ(t.entry_count(), want);
      std::uint64_t values = 1;
      for (std::size_t i = 0; i < h; ++i) values *= base;
      for (std::uint64_t u = 0; u < values; ++u) {
        std::uint64_t total = 0;
        for (Code c = 0; c < base; ++c) total += t.count(u, c, h);
        ASSERT_EQ(total, h);
        const auto digits = unpack_letters(u, base, h);
        for (std::size_t q = 1; q <= h; ++q)
          for (Code c = 0; c < base; ++c)
            ASSERT_EQ(t.count(u, c, q), std::count(digits.begin(), digits.begin() + q, c));
      }
    }
  }
}

TEST(CountTable, DisabledOverBudget) {
  const auto t = build_count_table(257, 8, std::uint64_t{1} << 22);
  EXPECT_FALSE(t.enabled());
  EXPECT_EQ(t.entry_count(), 0u);
  // Counting still works by decoding.
  const std::vector<Code> letters{5, 7, 5, 5, 256, 0, 5, 1};
  EXPECT_EQ(t.count(pack_letters(letters, 257), 5, 8), 4u);
  EXPECT_EQ(t.count(pack_letters(letters, 257), 5, 3), 2u);
}

TEST(CountPrefix, SampleExamples) {
  Sample d;
  EXPECT_EQ(d.trie.count_prefix(kRoot, a, 4), 2u);
  EXPECT_EQ(d.trie.count_prefix(kRoot, b, 0), 0u);
  EXPECT_EQ(d.trie.count_prefix(kRoot, fill, 3), 1u);
  EXPECT_EQ(kind_of([&] { d.trie.count_prefix(kRoot, a, 5); }), ErrorKind::OutOfRange);
}

TEST(CountPrefix, MatchesDirectCountWithAndWithoutTable) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 200; ++round) {
    const std::uint64_t base = 3 + rng() % 6;
    const std::size_t h = 1 + rng() % 4;
    std::vector<Code> letters(rng() % 60);
    for (auto& c : letters) c = static_cast<Code>(rng() % base);
    for (std::uint64_t budget : {std::uint64_t{1} << 22, std::uint64_t{0}}) {
      auto table = std::make_shared<const FourRussiansTable>(build_count_table(base, h, budget));
      const LetterSequence seq(letters, table);
      const auto view = seq.view();
      for (std::uint64_t p = 0; p <= letters.size(); ++p)
        for (Code c = 0; c < base; ++c)
          ASSERT_EQ(view.count_prefix(c, p), std::count(letters.begin(), letters.begin() + p, c));
    }
  }
}

TEST(IntervalStep, WorkedExampleConfiguration) {
  // r = 4, two letters per entry; rho = a b | c b | a a | b c over {a, b, c}.
  const std::vector<Code> rho{1, 2, 3, 2, 1, 1, 2, 3};
  auto table = std::make_shared<const FourRussiansTable>(build_count_table(5, 2));
  const LetterSequence seq(rho, table);
  const RankInterval got = interval_step(seq.view(), 2, RankInterval{2, 7});
  EXPECT_EQ(got.lo, 1u);  // the only b among the first two letters is inside the interval
  EXPECT_EQ(got.hi, 3u);
}

TEST(IntervalStep, SampleExamples) {
  Sample d;
  EXPECT_EQ(d.trie.interval_step(kRoot, a, RankInterval{4, 4}).second, (RankInterval{2, 2}));
  EXPECT_TRUE(d.trie.interval_step(kRoot, b, RankInterval{1, 1}).second.empty());
  EXPECT_EQ(kind_of([&] { d.trie.interval_step(kRoot, 0, RankInterval{1, 1}); }), ErrorKind::NoSuchChild);
}

TEST(Annotate, OrdMatchesOracleAndRhoBound) {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 50; ++round) {
    const std::size_t r = 1 + rng() % 8;
    const std::size_t sigma = std::vector<std::size_t>{2, 4, 16}[rng() % 3];
    const std::string raw = oracle::random_string(rng, sigma, 1 + rng() % 1000);
    const PackedText t = encode_text(raw, r);
    const auto sa = build_suffix_array_r(t);
    const auto trie = build_annotated_trie(
        t, sa, std::make_shared<const FourRussiansTable>(build_count_table(t.base(), t.half_block())),
        AnnotateOptions{true});
    const auto ot = oracle::make_oracle_text(raw, r);
    const auto order = oracle::boundary_order(ot);
    std::uint64_t rho_letters = 0;
    for (NodeId v = 0; v < trie.node_count(); ++v) {
      const auto label = oracle::detail::trie_label(trie, v);
      const auto want = oracle::naive_ord(ot, order, label);
      ASSERT_EQ(trie.retained_orders()[v], want) << raw << " r=" << r;
      ASSERT_LE(trie.depth(v), r);
      if (trie.is_leaf(v)) continue;
      const auto view = trie.letters(v);
      rho_letters += view.size();
      std::uint64_t total = 0;
      for (Code c = 0; c < t.base(); ++c) total += view.count_prefix(c, view.size());
      ASSERT_EQ(total, view.size());
      for (std::uint64_t p = 1; p <= view.size(); ++p)
        ASSERT_EQ(view.letter_at(p), ot.tau(want[p - 1], label.size() + 1));
    }
    EXPECT_EQ(rho_letters, trie.rho_letters());
    EXPECT_LE(rho_letters, t.size() + t.block_count());
  }
}
