#pragma once

// Packed text primitives: alphabet coding, word-packed storage with a
// sentinel-terminated layout, and word-granularity span comparison.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psi/errors.hpp"

namespace psi {

using Code = std::uint32_t;

inline constexpr unsigned kWordBits = 64;

enum class AlphabetMode : std::uint8_t { automatic = 0, byte = 1 };

/// Maps input bytes to codes 1..sigma. Code 0 is the sentinel `$` and
/// sigma+1 is the filler `#`; neither is produced by `code_of`.
class Alphabet {
 public:
  Alphabet() = default;

  static Alphabet from_text(std::string_view raw, AlphabetMode mode) {
    Alphabet a;
    a.mode_ = mode;
    if (mode == AlphabetMode::byte) {
      a.chars_.resize(256);
      for (unsigned c = 0; c < 256; ++c) a.chars_[c] = static_cast<std::uint8_t>(c);
    } else {
      std::array<bool, 256> seen{};
      for (char ch : raw) seen[static_cast<std::uint8_t>(ch)] = true;
      for (unsigned c = 0; c < 256; ++c)
        if (seen[c]) a.chars_.push_back(static_cast<std::uint8_t>(c));
    }
    a.rebuild_lookup();
    return a;
  }

  /// Rebuilds from an explicit ordered character list (deserialization).
  static Alphabet from_chars(AlphabetMode mode, std::vector<std::uint8_t> chars) {
    Alphabet a;
    a.mode_ = mode;
    a.chars_ = std::move(chars);
    a.rebuild_lookup();
    return a;
  }

  std::size_t size() const { return chars_.size(); }
  AlphabetMode mode() const { return mode_; }
  Code sentinel() const { return 0; }
  Code filler() const { return static_cast<Code>(chars_.size() + 1); }
  /// Number of distinct codes including the two reserved ones.
  std::uint64_t base() const { return chars_.size() + 2; }

  std::optional<Code> code_of(std::uint8_t ch) const {
    Code c = lookup_[ch];
    if (c == 0) return std::nullopt;
    return c;
  }

  std::uint8_t char_of(Code code) const {
    if (code < 1 || code > chars_.size())
      fail(ErrorKind::InvalidCode, "code " + std::to_string(code) + " has no character");
    return chars_[code - 1];
  }

  const std::vector<std::uint8_t>& chars() const { return chars_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.mode_ == b.mode_ && a.chars_ == b.chars_;
  }

 private:
  void rebuild_lookup() {
    lookup_.fill(0);
    for (std::size_t i = 0; i < chars_.size(); ++i) lookup_[chars_[i]] = static_cast<Code>(i + 1);
  }

  AlphabetMode mode_ = AlphabetMode::automatic;
  std::vector<std::uint8_t> chars_;
  std::array<Code, 256> lookup_{};
};

inline unsigned bits_for_codes(std::uint64_t code_count) {
  unsigned bits = 1;
  while ((std::uint64_t{1} << bits) < code_count) ++bits;
  return bits;
}

inline constexpr std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// A sequence of codes packed `capacity` per 64-bit word, slot 0 in the low
/// bits. Positions are 1-based.
class PackedSequence {
 public:
  PackedSequence() = default;

  PackedSequence(std::span<const Code> codes, unsigned bits_per_char, std::size_t capacity)
      : bits_(bits_per_char), capacity_(capacity), size_(codes.size()) {
    words_.assign((codes.size() + capacity - 1) / capacity, 0);
    for (std::size_t i = 0; i < codes.size(); ++i)
      words_[i / capacity] |= std::uint64_t{codes[i]} << ((i % capacity) * bits_);
  }

  PackedSequence(std::vector<std::uint64_t> words, unsigned bits_per_char, std::size_t capacity,
                 std::uint64_t size)
      : bits_(bits_per_char), capacity_(capacity), size_(size), words_(std::move(words)) {}

  std::uint64_t size() const { return size_; }
  unsigned bits_per_char() const { return bits_; }
  std::size_t capacity() const { return capacity_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  Code at(std::uint64_t pos) const {
    if (pos < 1 || pos > size_)
      fail(ErrorKind::OutOfRange, "position " + std::to_string(pos) + " outside [1, " +
                                      std::to_string(size_) + "]");
    return static_cast<Code>(raw_extract(pos, 1));
  }

  /// The `len` (<= capacity) codes starting at `pos` as one packed value.
  std::uint64_t extract(std::uint64_t pos, std::size_t len) const {
    if (len == 0) return 0;
    if (len > capacity_ || pos < 1 || pos + len - 1 > size_)
      fail(ErrorKind::OutOfRange, "span [" + std::to_string(pos) + ", +" + std::to_string(len) +
                                      ") outside sequence of " + std::to_string(size_));
    return raw_extract(pos, len);
  }

  std::vector<Code> unpack() const {
    std::vector<Code> out(size_);
    for (std::uint64_t p = 1; p <= size_; ++p) out[p - 1] = static_cast<Code>(raw_extract(p, 1));
    return out;
  }

 private:
  std::uint64_t raw_extract(std::uint64_t pos, std::size_t len) const {
    const std::uint64_t idx = pos - 1;
    const std::size_t word = idx / capacity_;
    const std::size_t slot = idx % capacity_;
    const std::size_t avail = capacity_ - slot;
    const std::uint64_t low = words_[word] >> (slot * bits_);
    if (len <= avail) return low & low_mask(static_cast<unsigned>(len * bits_));
    const unsigned low_bits = static_cast<unsigned>(avail * bits_);
    const std::uint64_t high =
        words_[word + 1] & low_mask(static_cast<unsigned>((len - avail) * bits_));
    return (low & low_mask(low_bits)) | (high << low_bits);
  }

  unsigned bits_ = 1;
  std::size_t capacity_ = 64;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Longest common prefix of a[apos..apos+len) and b[bpos..bpos+len), found
/// with one XOR over the packed spans. Both sequences must share a packing.
inline std::size_t compare_span(const PackedSequence& a, std::uint64_t apos, const PackedSequence& b,
                                std::uint64_t bpos, std::size_t len) {
  if (len == 0) return 0;
  const std::uint64_t diff = a.extract(apos, len) ^ b.extract(bpos, len);
  if (diff == 0) return len;
  return static_cast<std::size_t>(std::countr_zero(diff)) / a.bits_per_char();
}

/// Positional base-`base` encoding of a half-block, first letter most
/// significant.
inline std::uint64_t pack_letters(std::span<const Code> letters, std::uint64_t base) {
  std::uint64_t value = 0;
  for (Code c : letters) value = value * base + c;
  return value;
}

inline std::vector<Code> unpack_letters(std::uint64_t value, std::uint64_t base, std::size_t count) {
  std::vector<Code> out(count);
  for (std::size_t i = count; i-- > 0;) {
    out[i] = static_cast<Code>(value % base);
    value /= base;
  }
  return out;
}

class PackedPattern {
 public:
  PackedPattern() = default;
  PackedPattern(std::vector<Code> codes, unsigned bits_per_char, std::size_t capacity)
      : codes_(std::move(codes)), seq_(codes_, bits_per_char, capacity) {}

  std::uint64_t size() const { return codes_.size(); }
  std::span<const Code> codes() const { return codes_; }
  Code at(std::uint64_t pos) const { return seq_.at(pos); }
  const PackedSequence& sequence() const { return seq_; }

 private:
  std::vector<Code> codes_;
  PackedSequence seq_;
};

/// Text T[1..n]: raw codes, then fillers, then one sentinel at position n,
/// with n a multiple of the block size r.
class PackedText {
 public:
  PackedText() = default;

  PackedText(Alphabet alphabet, std::uint64_t n_raw, std::size_t r, PackedSequence seq)
      : alphabet_(std::move(alphabet)), n_raw_(n_raw), r_(r), seq_(std::move(seq)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::uint64_t raw_size() const { return n_raw_; }
  std::uint64_t size() const { return seq_.size(); }
  std::size_t block_size() const { return r_; }
  std::uint64_t block_count() const { return seq_.size() / r_; }
  std::size_t half_block() const { return std::max<std::size_t>(1, r_ / 2); }
  std::size_t word_capacity() const { return seq_.capacity(); }
  unsigned bits_per_char() const { return seq_.bits_per_char(); }
  std::uint64_t base() const { return alphabet_.base(); }
  const PackedSequence& sequence() const { return seq_; }

  Code char_at(std::uint64_t pos) const { return seq_.at(pos); }

  std::string decode_raw() const {
    std::string out(n_raw_, '\0');
    for (std::uint64_t p = 1; p <= n_raw_; ++p)
      out[p - 1] = static_cast<char>(alphabet_.char_of(seq_.at(p)));
    return out;
  }

  /// Packs pattern codes with this text's layout; every code must be in
  /// [1, sigma].
  PackedPattern pack_pattern(std::vector<Code> codes) const {
    for (Code c : codes)
      if (c < 1 || c > alphabet_.size())
        fail(ErrorKind::InvalidCode, "pattern code " + std::to_string(c) + " outside [1, " +
                                         std::to_string(alphabet_.size()) + "]");
    return PackedPattern(std::move(codes), bits_per_char(), word_capacity());
  }

  /// Encodes raw pattern bytes; nullopt when a byte is outside the alphabet
  /// (such a pattern cannot occur).
  std::optional<PackedPattern> encode_pattern(std::string_view raw) const {
    std::vector<Code> codes;
    codes.reserve(raw.size());
    for (char ch : raw) {
      auto c = alphabet_.code_of(static_cast<std::uint8_t>(ch));
      if (!c) return std::nullopt;
      codes.push_back(*c);
    }
    return pack_pattern(std::move(codes));
  }

  std::uint64_t pack_halfblock(std::span<const Code> letters) const {
    if (letters.size() != half_block())
      fail(ErrorKind::BadLength, "expected " + std::to_string(half_block()) + " letters, got " +
                                     std::to_string(letters.size()));
    for (Code c : letters)
      if (c > alphabet_.filler()) fail(ErrorKind::InvalidCode, "letter outside [0, sigma+1]");
    return pack_letters(letters, base());
  }

 private:
  Alphabet alphabet_;
  std::uint64_t n_raw_ = 0;
  std::size_t r_ = 1;
  PackedSequence seq_;
};

inline std::size_t compare_span(const PackedText& t, std::uint64_t text_pos, const PackedPattern& pat,
                                std::uint64_t pat_pos, std::size_t len) {
  return compare_span(t.sequence(), text_pos, pat.sequence(), pat_pos, len);
}

/// Resolves the word capacity for an alphabet; 0 requests the default
/// floor(kWordBits / bits_per_char).
inline std::size_t resolve_word_capacity(const Alphabet& alphabet, std::size_t requested) {
  const unsigned bits = bits_for_codes(alphabet.base());
  if (bits > kWordBits / 2)
    fail(ErrorKind::AlphabetOverflow, "alphabet needs " + std::to_string(bits) + " bits per char");
  if (requested == 0) return kWordBits / bits;
  if (requested * bits > kWordBits)
    fail(ErrorKind::AlphabetOverflow,
         std::to_string(requested) + " chars of " + std::to_string(bits) + " bits exceed a " +
             std::to_string(kWordBits) + "-bit word");
  return requested;
}

inline PackedText encode_text(std::string_view raw, std::size_t r,
                              AlphabetMode mode = AlphabetMode::automatic,
                              std::size_t word_capacity = 0) {
  if (raw.empty()) fail(ErrorKind::EmptyText, "text is empty");
  if (r < 1) fail(ErrorKind::BadLength, "block size must be at least 1");
  Alphabet alphabet = Alphabet::from_text(raw, mode);
  const std::size_t capacity = resolve_word_capacity(alphabet, word_capacity);
  if (r > capacity)
    fail(ErrorKind::BlockTooLarge,
         "block size " + std::to_string(r) + " exceeds word capacity " + std::to_string(capacity));

  const std::uint64_t n_raw = raw.size();
  const std::uint64_t n = (n_raw + 1 + r - 1) / r * r;
  std::vector<Code> codes(n, alphabet.filler());
  for (std::uint64_t i = 0; i < n_raw; ++i) codes[i] = *alphabet.code_of(static_cast<std::uint8_t>(raw[i]));
  codes[n - 1] = alphabet.sentinel();
  const unsigned bits = bits_for_codes(alphabet.base());
  PackedSequence seq(codes, bits, capacity);
  return PackedText(std::move(alphabet), n_raw, r, std::move(seq));
}

}  // namespace psi
