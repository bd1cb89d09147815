#pragma once

#include <cstdint>

namespace psi {

/// Closed interval [lo, hi] of 1-based ranks or ordered-set positions;
/// empty iff lo > hi.
struct RankInterval {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const RankInterval&, const RankInterval&) = default;
};

}  // namespace psi
