#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "psi/alphabet_text.hpp"
#include "support.hpp"

using namespace psi;

using psi::testing::kind_of;

namespace {

std::vector<Code> codes_of(const PackedText& t) { return t.sequence().unpack(); }

}  // namespace

TEST(EncodeText, SamplePadsWithSentinel) {
  const PackedText t = encode_text("abaabaa", 2);
  EXPECT_EQ(t.raw_size(), 7u);
  EXPECT_EQ(t.size(), 8u);
  EXPECT_EQ(codes_of(t), (std::vector<Code>{1, 2, 1, 1, 2, 1, 1, 0}));
  EXPECT_EQ(t.alphabet().size(), 2u);
  EXPECT_EQ(t.alphabet().filler(), 3u);
  EXPECT_EQ(t.half_block(), 1u);
}

TEST(EncodeText, FillersPrecedeTheSentinel) {
  const PackedText t = encode_text("a", 4);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(codes_of(t), (std::vector<Code>{1, 2, 2, 0}));
  // The last letter is unique.
  auto codes = codes_of(t);
  EXPECT_EQ(std::count(codes.begin(), codes.end(), codes.back()), 1);
}

TEST(EncodeText, BlockSizeOne) {
  const PackedText t = encode_text("ab", 1);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.block_count(), 3u);
  EXPECT_EQ(codes_of(t), (std::vector<Code>{1, 2, 0}));
}

TEST(EncodeText, Errors) {
  EXPECT_EQ(kind_of([] { encode_text("", 2); }), ErrorKind::EmptyText);
  EXPECT_EQ(kind_of([] { encode_text("ab", 0); }), ErrorKind::BadLength);
  // sigma = 2, 2 bits per code, 32 per word.
  EXPECT_EQ(kind_of([] { encode_text("ab", 33); }), ErrorKind::BlockTooLarge);
  EXPECT_EQ(kind_of([] { encode_text("ab", 5, AlphabetMode::automatic, 4); }), ErrorKind::BlockTooLarge);
  EXPECT_EQ(kind_of([] { encode_text("ab", 2, AlphabetMode::automatic, 40); }), ErrorKind::AlphabetOverflow);
  // 256 letters plus two reserved codes need 9 bits: 7 per 64-bit word.
  EXPECT_EQ(encode_text("ab", 7, AlphabetMode::byte).word_capacity(), 7u);
  EXPECT_EQ(kind_of([] { encode_text("ab", 8, AlphabetMode::byte); }), ErrorKind::BlockTooLarge);
}

TEST(EncodeText, ByteModeKeepsByteOrder) {
  const PackedText t = encode_text("ba", 1, AlphabetMode::byte);
  EXPECT_EQ(t.alphabet().size(), 256u);
  EXPECT_EQ(t.char_at(1), Code{'b'} + 1);
  EXPECT_EQ(t.char_at(2), Code{'a'} + 1);
  EXPECT_EQ(t.decode_raw(), "ba");
}

TEST(CharAt, SampleReads) {
  const PackedText t = encode_text("abaabaa", 2);
  EXPECT_EQ(t.char_at(1), 1u);
  EXPECT_EQ(t.char_at(8), 0u);
  EXPECT_EQ(kind_of([&] { t.char_at(0); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { t.char_at(9); }), ErrorKind::OutOfRange);
}

TEST(Alphabet, CodesAreMutualInverses) {
  const Alphabet a = Alphabet::from_text("zebra", AlphabetMode::automatic);
  EXPECT_EQ(a.size(), 5u);
  for (Code c = 1; c <= a.size(); ++c) EXPECT_EQ(a.code_of(a.char_of(c)), c);
  EXPECT_FALSE(a.code_of('q').has_value());
  EXPECT_EQ(kind_of([&] { a.char_of(0); }), ErrorKind::InvalidCode);
  EXPECT_EQ(kind_of([&] { a.char_of(6); }), ErrorKind::InvalidCode);
}

TEST(CompareSpan, SampleExamples) {
  const PackedText t = encode_text("abaabaa", 2);
  const PackedPattern p = *t.encode_pattern("aba");
  EXPECT_EQ(compare_span(t, 1, p, 1, 2), 2u);
  EXPECT_EQ(compare_span(t, 5, p, 1, 2), 0u);
  EXPECT_EQ(compare_span(t, 3, p, 1, 0), 0u);
  EXPECT_EQ(kind_of([&] { compare_span(t, 1, p, 2, 3); }), ErrorKind::OutOfRange);
}

TEST(CompareSpan, MatchesCharacterLoop) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string raw(1 + rng() % 300, 'a');
    const std::size_t sigma = 1 + rng() % 6;
    for (auto& c : raw) c = static_cast<char>('a' + rng() % sigma);
    const PackedText t = encode_text(raw, 1);
    const std::size_t m = 1 + rng() % std::min<std::size_t>(raw.size(), 40);
    const std::size_t start = rng() % (raw.size() - m + 1);
    std::string pat = raw.substr(start, m);
    if (rng() % 2) pat[rng() % m] = 'a';
    const PackedPattern p = *t.encode_pattern(pat);
    const std::size_t W = t.word_capacity();
    for (std::uint64_t tp = 1; tp <= t.size(); tp += 1 + rng() % 5) {
      for (std::uint64_t pp = 1; pp <= m; ++pp) {
        const std::size_t len = std::min<std::uint64_t>({W, m - pp + 1, t.size() - tp + 1});
        std::size_t want = 0;
        while (want < len && t.char_at(tp + want) == p.at(pp + want)) ++want;
        ASSERT_EQ(compare_span(t, tp, p, pp, len), want);
      }
    }
  }
}

TEST(PackedText, RoundTripsRandomTexts) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    std::string raw(1 + rng() % 500, 'a');
    for (auto& c : raw) c = static_cast<char>(rng() % 256);
    const std::size_t r = 1 + rng() % 7;
    const PackedText t = encode_text(raw, r, round % 2 ? AlphabetMode::byte : AlphabetMode::automatic);
    ASSERT_EQ(t.decode_raw(), raw);
    ASSERT_EQ(t.size() % r, 0u);
    for (std::uint64_t p = 1; p <= raw.size(); ++p)
      ASSERT_EQ(t.char_at(p), *t.alphabet().code_of(static_cast<std::uint8_t>(raw[p - 1])));
  }
}

TEST(PackHalfblock, Examples) {
  const PackedText sample = encode_text("abaabaa", 2);
  const std::vector<Code> a{1};
  EXPECT_EQ(sample.pack_halfblock(a), 1u);
  const PackedText t = encode_text("abab", 4);  // sigma 2, h 2, base 4
  const std::vector<Code> ab{1, 2}, dd{0, 0};
  EXPECT_EQ(t.pack_halfblock(ab), 6u);
  EXPECT_EQ(t.pack_halfblock(dd), 0u);
  EXPECT_EQ(kind_of([&] { t.pack_halfblock(a); }), ErrorKind::BadLength);
}

TEST(PackHalfblock, InjectiveOnAllTuples) {
  const PackedText t = encode_text("abcab", 6);  // base 5, h 3
  std::set<std::uint64_t> seen;
  std::vector<Code> tuple(3);
  for (Code x = 0; x < 5; ++x)
    for (Code y = 0; y < 5; ++y)
      for (Code z = 0; z < 5; ++z) {
        tuple = {x, y, z};
        const auto v = t.pack_halfblock(tuple);
        EXPECT_LT(v, 125u);
        EXPECT_TRUE(seen.insert(v).second);
        EXPECT_EQ(unpack_letters(v, 5, 3), tuple);
      }
}

TEST(PackPattern, RejectsReservedCodes) {
  const PackedText t = encode_text("abaabaa", 2);
  EXPECT_EQ(kind_of([&] { t.pack_pattern({1, 0}); }), ErrorKind::InvalidCode);
  EXPECT_EQ(kind_of([&] { t.pack_pattern({3}); }), ErrorKind::InvalidCode);
  EXPECT_FALSE(t.encode_pattern("abc").has_value());
}
