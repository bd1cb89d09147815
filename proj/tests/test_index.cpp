#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <random>

#include "psi/index.hpp"
#include "psi/oracle.hpp"
#include "psi/serialize.hpp"
#include "support.hpp"

using namespace psi;
using psi::testing::kind_of;

namespace {

std::vector<std::uint64_t> positions(const std::vector<Occurrence>& occ) {
  std::vector<std::uint64_t> out;
  for (const auto& o : occ) out.push_back(o.pos);
  return out;
}

Index sample() {
  BuildConfig c;
  c.block_size = 2;
  return Index::build("abaabaa", c);
}

}  // namespace

TEST(FindAll, SampleExamples) {
  const Index idx = sample();
  EXPECT_EQ(find_all(idx, "aba"), (std::vector<Occurrence>{{1, 0}, {4, 1}}));
  EXPECT_EQ(positions(find_all(idx, "ba")), (std::vector<std::uint64_t>{2, 5}));
  EXPECT_TRUE(find_all(idx, "bb").empty());
  EXPECT_TRUE(find_all(idx, "abc").empty());
}

TEST(FindAll, Errors) {
  const Index idx = sample();
  EXPECT_EQ(kind_of([&] { find_all(idx, ""); }), ErrorKind::EmptyPattern);
  EXPECT_EQ(kind_of([&] { find_all(idx, idx.text().pack_pattern({})); }), ErrorKind::EmptyPattern);
  const PackedPattern foreign({1, 7}, idx.text().bits_per_char(), idx.text().word_capacity());
  EXPECT_EQ(kind_of([&] { find_all(idx, foreign); }), ErrorKind::InvalidCode);
}

TEST(FindShort, SampleExamples) {
  const Index idx = sample();
  EXPECT_EQ(positions(find_short(idx, *idx.text().encode_pattern("a"))), (std::vector<std::uint64_t>{1, 3, 4, 6, 7}));
  EXPECT_EQ(positions(find_short(idx, *idx.text().encode_pattern("b"))), (std::vector<std::uint64_t>{2, 5}));
}

TEST(FindAll, ShortPatternsCrossBlocks) {
  BuildConfig c;
  c.block_size = 4;
  const Index idx = Index::build("abcabcabc", c);
  EXPECT_EQ(positions(find_all(idx, "ca")), (std::vector<std::uint64_t>{3, 6}));
  EXPECT_EQ(find_all(idx, "ca")[0].k, 2u);
}

TEST(BuildIndex, DegenerateAndGuards) {
  BuildConfig c;
  c.block_size = 1;
  const Index one = Index::build("abaabaa", c);
  EXPECT_EQ(one.tree().suffix_array().size(), 8u);
  for (NodeId v = 0; v < one.trie().node_count(); ++v) EXPECT_LE(one.trie().depth(v), 1u);
  EXPECT_EQ(positions(find_all(one, "aa")), (std::vector<std::uint64_t>{3, 6}));
  c.block_size = 40;
  EXPECT_EQ(kind_of([&] { Index::build("ab", c); }), ErrorKind::BlockTooLarge);
}

TEST(BuildIndex, SampleComponents) {
  const Index idx = sample();
  EXPECT_EQ(idx.tree().suffix_array().by_rank(), (std::vector<std::uint32_t>{3, 1, 0, 2}));
  const auto s = idx.stats();
  EXPECT_EQ(s.n, 8u);
  EXPECT_EQ(s.table_entries, 16u);
  EXPECT_EQ(s.rho_letters, 6u);  // root 4, node "a" 2
  EXPECT_TRUE(s.rho_within_bound);
}

TEST(FindAll, TableDisabledGivesSameAnswers) {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 20; ++round) {
    const std::string raw = oracle::random_string(rng, 4, 1 + rng() % 800);
    BuildConfig with, without;
    with.block_size = without.block_size = 2 + rng() % 7;
    without.table_budget = 0;
    const Index a = Index::build(raw, with), b = Index::build(raw, without);
    EXPECT_FALSE(b.trie().table().enabled());
    for (int q = 0; q < 20; ++q) {
      const std::string p = oracle::random_string(rng, 4, 1 + rng() % 12);
      ASSERT_EQ(find_all(a, p), find_all(b, p));
      ASSERT_EQ(positions(find_all(b, p)), oracle::naive_find_all(raw, p));
    }
  }
}

TEST(FindAll, OccurrencesCarryTheirOffset) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 30; ++round) {
    const std::string raw = oracle::random_string(rng, 2, 1 + rng() % 500);
    BuildConfig c;
    c.block_size = 1 + rng() % 8;
    const Index idx = Index::build(raw, c);
    for (int q = 0; q < 10; ++q) {
      const std::string p = oracle::random_string(rng, 2, 1 + rng() % 16);
      const auto occ = find_all(idx, p);
      ASSERT_EQ(positions(occ), oracle::naive_find_all(raw, p));
      for (const auto& o : occ) ASSERT_EQ(o.k, (c.block_size - (o.pos - 1) % c.block_size) % c.block_size);
    }
  }
}

TEST(Serialize, RoundTripIsByteExact) {
  const Index idx = sample();
  for (bool store : {false, true}) {
    const auto bytes = serialize(idx, store);
    const Index back = deserialize(bytes);
    EXPECT_EQ(serialize(back, store), bytes);
    for (const char* p : {"a", "b", "aba", "ba", "bb", "abaabaa"}) EXPECT_EQ(find_all(back, p), find_all(idx, p));
  }
}

TEST(Serialize, RejectsDamage) {
  const auto bytes = serialize(sample(), true);
  auto foreign = bytes;
  foreign[0] = 'X';
  EXPECT_EQ(kind_of([&] { deserialize(foreign); }), ErrorKind::BadMagic);
  auto version = bytes;
  version[4] = 9;
  EXPECT_EQ(kind_of([&] { deserialize(version); }), ErrorKind::VersionMismatch);
  for (std::size_t cut : {std::size_t{6}, std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_EQ(kind_of([&] { deserialize(truncated); }), ErrorKind::CorruptSection) << cut;
  }
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_EQ(kind_of([&] { deserialize(trailing); }), ErrorKind::CorruptSection);
}

TEST(Serialize, EveryByteFlipIsDetected) {
  const auto bytes = serialize(sample(), true);
  const auto layout = section_layout(bytes);
  ASSERT_EQ(layout.size(), 7u);
  for (const auto& s : layout) {
    for (std::size_t i = s.offset; i < s.offset + s.total_length(); ++i) {
      auto bad = bytes;
      bad[i] ^= 0x5a;
      try {
        deserialize(bad);
        ADD_FAILURE() << "flip at " << i << " in " << section_name(s.tag) << " accepted";
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::CorruptSection);
        // Damage inside a payload names its own section.
        if (i >= s.payload_offset && i < s.payload_offset + s.payload_length) {
          ASSERT_NE(std::string(e.what()).find(section_name(s.tag)), std::string::npos) << e.what();
        }
      }
    }
  }
}

TEST(Serialize, RecomputedChecksumStillValidatesStructure) {
  const Index idx = sample();
  auto bytes = serialize(idx);
  const auto layout = section_layout(bytes);
  const auto sa = std::find_if(layout.begin(), layout.end(), [](auto& s) { return s.tag == SectionTag::suffix_array; });
  ASSERT_NE(sa, layout.end());
  // Break the permutation: overwrite the second rank entry with the first.
  std::memcpy(bytes.data() + sa->payload_offset + 16, bytes.data() + sa->payload_offset + 8, 8);
  const auto crc = detail::crc32(std::span<const std::uint8_t>(bytes).subspan(sa->payload_offset, sa->payload_length));
  for (int b = 0; b < 4; ++b) bytes[sa->payload_offset + sa->payload_length + b] = (crc >> (8 * b)) & 0xff;
  try {
    deserialize(bytes);
    ADD_FAILURE() << "broken suffix array accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CorruptSection);
    EXPECT_NE(std::string(e.what()).find("suffix_array"), std::string::npos) << e.what();
  }
}
