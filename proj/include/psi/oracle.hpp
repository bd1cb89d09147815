#pragma once

// Brute-force reference implementations and the differential runner.
// Nothing here reuses the index's own search, sorting or counting code;
// the index is only consulted through its public results.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "psi/index.hpp"

namespace psi::oracle {

/// The padded text as plain codes: bytes map to 1..sigma in byte order,
/// 0 is the sentinel and sigma+1 the filler.
struct OracleText {
  std::vector<std::uint32_t> codes;  // codes[p-1] = T[p]
  std::size_t r = 1;
  std::size_t n_raw = 0;
  std::uint32_t filler = 1;
  std::array<std::int32_t, 256> code_of{};

  std::size_t n() const { return codes.size(); }
  std::size_t blocks() const { return codes.size() / r; }
  std::uint32_t at(std::uint64_t p) const { return codes[p - 1]; }

  std::optional<std::vector<std::uint32_t>> encode(std::string_view s) const {
    std::vector<std::uint32_t> out;
    for (unsigned char c : s) {
      if (code_of[c] < 0) return std::nullopt;
      out.push_back(static_cast<std::uint32_t>(code_of[c]));
    }
    return out;
  }

  /// Letter d (1-based) of the reversed block paired with ordinal j.
  std::uint32_t tau(std::uint32_t j, std::size_t d) const { return j == 0 ? filler : at(r * j - d + 1); }
};

inline OracleText make_oracle_text(std::string_view raw, std::size_t r) {
  OracleText ot;
  ot.r = r;
  ot.n_raw = raw.size();
  ot.code_of.fill(-1);
  std::array<bool, 256> seen{};
  for (unsigned char c : raw) seen[c] = true;
  std::int32_t next = 1;
  for (int c = 0; c < 256; ++c)
    if (seen[c]) ot.code_of[c] = next++;
  ot.filler = static_cast<std::uint32_t>(next);
  const std::size_t n = (raw.size() + 1 + r - 1) / r * r;
  for (unsigned char c : raw) ot.codes.push_back(static_cast<std::uint32_t>(ot.code_of[c]));
  while (ot.codes.size() + 1 < n) ot.codes.push_back(ot.filler);
  ot.codes.push_back(0);
  return ot;
}

/// 1-based starts of every occurrence of `pattern` in `raw`.
inline std::vector<std::uint64_t> naive_find_all(std::string_view raw, std::string_view pattern) {
  std::vector<std::uint64_t> out;
  if (pattern.empty() || pattern.size() > raw.size()) return out;
  for (std::size_t i = 0; i + pattern.size() <= raw.size(); ++i) {
    bool match = true;
    for (std::size_t t = 0; t < pattern.size() && match; ++t) match = raw[i + t] == pattern[t];
    if (match) out.push_back(i + 1);
  }
  return out;
}

inline bool has_prefix(const OracleText& ot, std::uint64_t start, std::span<const std::uint32_t> s) {
  if (start + s.size() - 1 > ot.n()) return false;
  for (std::size_t t = 0; t < s.size(); ++t)
    if (ot.at(start + t) != s[t]) return false;
  return true;
}

/// Boundary ordinals sorted by their suffixes.
inline std::vector<std::uint32_t> boundary_order(const OracleText& ot) {
  std::vector<std::uint32_t> order(ot.blocks());
  for (std::uint32_t j = 0; j < order.size(); ++j) order[j] = j;
  auto tail = [&](std::uint32_t j) { return ot.codes.begin() + static_cast<std::ptrdiff_t>(ot.r * j); };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(tail(a), ot.codes.end(), tail(b), ot.codes.end());
  });
  return order;
}

inline RankInterval naive_rank_interval(const OracleText& ot, const std::vector<std::uint32_t>& order,
                                        std::span<const std::uint32_t> s) {
  RankInterval iv;
  bool any = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!has_prefix(ot, ot.r * order[i] + 1, s)) continue;
    if (!any) iv.lo = i + 1;
    any = true;
    iv.hi = i + 1;
  }
  return any ? iv : RankInterval{};
}

inline RankInterval naive_rank_interval(const OracleText& ot, std::string_view s) {
  auto codes = ot.encode(s);
  if (!codes) return {};
  return naive_rank_interval(ot, boundary_order(ot), *codes);
}

/// True if `s` is a prefix of some boundary suffix.
inline bool naive_represented(const OracleText& ot, std::span<const std::uint32_t> s) {
  if (s.empty()) return true;
  for (std::uint32_t j = 0; j < ot.blocks(); ++j)
    if (has_prefix(ot, ot.r * j + 1, s)) return true;
  return false;
}

/// Longest proper suffix of a represented nonempty `alpha` that is itself
/// represented, with the number of letters dropped.
inline std::pair<std::vector<std::uint32_t>, std::uint32_t> naive_suffix_link(
    const OracleText& ot, std::span<const std::uint32_t> alpha) {
  for (std::size_t i = 1; i <= alpha.size(); ++i) {
    auto rest = alpha.subspan(i);
    if (naive_represented(ot, rest))
      return {std::vector<std::uint32_t>(rest.begin(), rest.end()), static_cast<std::uint32_t>(i)};
  }
  return {{}, 0};
}

/// Ordinals whose reversed block starts with `label`, in suffix rank order.
inline std::vector<std::uint32_t> naive_ord(const OracleText& ot, const std::vector<std::uint32_t>& order,
                                            std::span<const std::uint32_t> label) {
  std::vector<std::uint32_t> out;
  if (label.size() > ot.r) return out;
  for (std::uint32_t j : order) {
    bool match = true;
    for (std::size_t d = 1; d <= label.size() && match; ++d) match = ot.tau(j, d) == label[d - 1];
    if (match) out.push_back(j);
  }
  return out;
}

/// For every text position p, the longest common prefix of T[p..] with any
/// boundary suffix, from a plain sort of all suffixes.
class RepresentedOracle {
 public:
  explicit RepresentedOracle(const OracleText& ot) : best_(ot.n(), 0) {
    const std::size_t n = ot.n();
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t p = 0; p < n; ++p) all[p] = p;
    auto from = [&](std::uint32_t p) { return ot.codes.begin() + p; };
    std::sort(all.begin(), all.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(from(a), ot.codes.end(), from(b), ot.codes.end());
    });
    std::vector<std::uint64_t> lcp(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
      std::uint64_t l = 0;
      while (all[i - 1] + l < n && all[i] + l < n && ot.codes[all[i - 1] + l] == ot.codes[all[i] + l]) ++l;
      lcp[i] = l;
    }
    // Nearest boundary suffix on each side in sorted order.
    {
      std::optional<std::uint64_t> run;
      for (std::size_t i = 0; i < n; ++i) {
        if (run && i > 0) *run = std::min(*run, lcp[i]);
        const std::uint32_t p = all[i];
        if (p % ot.r == 0) run = n - p;
        if (run) best_[p] = std::max(best_[p], *run);
      }
    }
    {
      std::optional<std::uint64_t> run;
      for (std::size_t i = n; i-- > 0;) {
        if (run && i + 1 < n) *run = std::min(*run, lcp[i + 1]);
        const std::uint32_t p = all[i];
        if (p % ot.r == 0) run = n - p;
        if (run) best_[p] = std::max(best_[p], *run);
      }
    }
  }

  /// Longest prefix of T[p..] that is represented (p is 1-based).
  std::uint64_t longest(std::uint64_t p) const { return best_[p - 1]; }

 private:
  std::vector<std::uint64_t> best_;
};

// ---------------------------------------------------------------------------
// Differential runner.

struct OracleConfig {
  std::uint64_t seed = 20240601;
  std::vector<std::size_t> sigmas{2, 4, 16};
  std::size_t n_min = 1, n_max = 4096;
  std::vector<std::size_t> block_sizes{1, 2, 4, 8};
  std::size_t m_min = 1, m_max = 32;
  std::size_t instances = 500;
  std::size_t patterns_per_instance = 24;
  std::size_t probes_per_instance = 24;
  bool exhaustive = true;        // all binary texts n <= 10, r = 2, patterns m <= 4
  bool check_structure = true;   // links, Ord, interval probes, accounting
  std::size_t minimize_limit = 4;
};

struct Failure {
  std::string check;
  std::string text;
  std::string pattern;
  std::size_t r = 0;
  std::string detail;
};

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

struct Report {
  std::uint64_t instances = 0;
  std::map<std::string, Tally> tallies;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
  std::uint64_t failure_count() const {
    std::uint64_t f = 0;
    for (const auto& [_, t] : tallies) f += t.failures;
    return f;
  }
  std::uint64_t check_count() const {
    std::uint64_t c = 0;
    for (const auto& [_, t] : tallies) c += t.checks;
    return c;
  }

  void merge(const Report& other) {
    instances += other.instances;
    for (const auto& [k, t] : other.tallies) {
      tallies[k].checks += t.checks;
      tallies[k].failures += t.failures;
    }
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }

  std::string text() const {
    std::ostringstream os;
    for (const auto& [name, t] : tallies)
      os << "check " << name << " runs=" << t.checks << " failures=" << t.failures << "\n";
    for (const auto& f : failures) {
      os << "FAIL " << f.check << " r=" << f.r << " text=" << quoted(f.text) << " pattern=" << quoted(f.pattern)
         << " : " << f.detail << "\n";
    }
    return os.str();
  }

  std::string summary() const {
    nlohmann::ordered_json j;
    j["instances"] = instances;
    j["checks"] = check_count();
    j["failures"] = failure_count();
    for (const auto& [name, t] : tallies) j["by_check"][name] = {{"checks", t.checks}, {"failures", t.failures}};
    return j.dump();
  }

 private:
  static std::string quoted(const std::string& s) {
    if (s.size() <= 80) return '"' + s + '"';
    return '"' + s.substr(0, 80) + "...\"(" + std::to_string(s.size()) + ")";
  }
};

using Finder = std::function<std::vector<Occurrence>(const Index&, std::string_view, QueryStats*)>;

inline Finder default_finder() {
  return [](const Index& index, std::string_view p, QueryStats* stats) { return find_all(index, p, stats); };
}

namespace detail {

inline std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < 12; ++i) s += (i ? "," : "") + std::to_string(v[i]);
  if (v.size() > 12) s += ",...";
  return "{" + s + "}";
}

/// Pattern-level checks against one index; returns a failure description
/// per failed check name.
inline std::vector<std::pair<std::string, std::string>> query_checks(const Index& index, const OracleText& ot,
                                                                     const std::vector<std::uint32_t>& order,
                                                                     std::string_view raw, std::string_view pattern,
                                                                     const Finder& finder,
                                                                     std::map<std::string, Tally>* tallies) {
  std::vector<std::pair<std::string, std::string>> bad;
  auto record = [&](const std::string& name, bool pass, std::string why) {
    if (tallies) {
      ++(*tallies)[name].checks;
      if (!pass) ++(*tallies)[name].failures;
    }
    if (!pass) bad.emplace_back(name, std::move(why));
  };
  const std::size_t r = ot.r;
  const std::uint64_t m = pattern.size();
  const auto expected = naive_find_all(raw, pattern);

  QueryStats stats;
  std::vector<Occurrence> got;
  try {
    got = finder(index, pattern, &stats);
  } catch (const std::exception& e) {
    record(m < r ? "find_short" : "find_all", false, std::string("threw ") + e.what());
    return bad;
  }
  std::vector<std::uint64_t> positions;
  bool k_ok = true;
  for (const auto& o : got) {
    positions.push_back(o.pos);
    k_ok = k_ok && o.k == (r - (o.pos - 1) % r) % r;
  }
  record(m < r ? "find_short" : "find_all", positions == expected && k_ok,
         "expected " + join(expected) + " got " + join(positions) + (k_ok ? "" : " (bad k)"));

  auto codes = ot.encode(pattern);
  if (!codes) return bad;
  if (m < r) {
    const auto packed = index.text().pack_pattern(*codes);
    std::vector<std::uint64_t> direct;
    for (const auto& o : find_short(index, packed)) direct.push_back(o.pos);
    record("find_short", direct == expected, "direct scan " + join(direct) + " vs " + join(expected));
    return bad;
  }

  // Right search: hit set and intervals.
  const auto packed = index.text().pack_pattern(*codes);
  const auto right = right_search(index.tree(), index.text(), packed);
  std::vector<std::optional<RankInterval>> by_k(r);
  for (const auto& h : right.hits) by_k[h.k] = h.interval;
  bool hits_ok = true;
  std::string why;
  for (std::size_t k = 0; k < r; ++k) {
    const auto want = naive_rank_interval(ot, order, std::span<const std::uint32_t>(*codes).subspan(k));
    const bool match = want.empty() ? !by_k[k].has_value() : (by_k[k] && *by_k[k] == want);
    if (!match) {
      hits_ok = false;
      why += "k=" + std::to_string(k) + " want [" + std::to_string(want.lo) + "," + std::to_string(want.hi) + "] ";
    }
  }
  record("right_search", hits_ok, why);
  const std::uint64_t right_budget = 8 * (m + r * r + r);
  record("right_cost", right.counters.total() <= right_budget,
         "cost " + std::to_string(right.counters.total()) + " > " + std::to_string(right_budget));

  // Left search and roll-up costs, using the stats of the finder run.
  const std::uint64_t sigma = index.text().alphabet().size();
  for (const auto& call : stats.left_per_call) {
    const std::uint64_t occ_k = stats.occ_by_k.size() > call.k ? stats.occ_by_k[call.k] : 0;
    const std::uint64_t budget = (sigma + 2) * r * (occ_k + 1);
    record("traverse_cost", call.counters.traverse_visits <= budget,
           "k=" + std::to_string(call.k) + " visits " + std::to_string(call.counters.traverse_visits) + " > " +
               std::to_string(budget));
    record("descent_cost", call.counters.descent_nodes <= call.k + 1,
           "k=" + std::to_string(call.k) + " descent nodes " + std::to_string(call.counters.descent_nodes));
  }
  const std::uint64_t roll_budget = 16 * (m + r * r + r * (expected.size() + 1));
  record("rollup_cost", stats.total_work() <= roll_budget,
         "work " + std::to_string(stats.total_work()) + " > " + std::to_string(roll_budget));
  return bad;
}

/// Label of a trie node as a code string.
inline std::vector<std::uint32_t> trie_label(const BlockTrie& trie, NodeId v) {
  std::vector<NodeId> path;
  for (NodeId u = v; u != kRoot; u = trie.node(u).parent) path.push_back(u);
  std::vector<std::uint32_t> out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto l = trie.label(*it);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace detail

/// Structural checks of one index against the oracle text: typed suffix
/// links, link-type monotonicity, Ord sequences, interval updates and the
/// size accounting.
inline void check_structure(const Index& index, const OracleText& ot, const std::vector<std::uint32_t>& order,
                            std::mt19937_64& rng, std::size_t probes, Report& report, std::string_view raw) {
  auto record = [&](const std::string& name, bool pass, const std::string& why) {
    ++report.tallies[name].checks;
    if (pass) return;
    ++report.tallies[name].failures;
    report.failures.push_back(Failure{name, std::string(raw), "", ot.r, why});
  };
  const auto& tree = index.tree();
  const auto& trie = index.trie();

  // Suffix array.
  record("suffix_array", tree.suffix_array().by_rank() == order, "SA_r differs from sorted boundary suffixes");

  // Typed suffix links.
  const RepresentedOracle rep(ot);
  auto locus_matches = [&](const Locus& l, std::uint64_t start, std::uint64_t len) {
    if (tree.depth(l) != len) return false;
    if (len == 0) return l.anchor == kRoot && l.is_explicit();
    const std::uint64_t at = tree.label_start(l);
    for (std::uint64_t t = 0; t < len; ++t)
      if (ot.at(at + t) != ot.at(start + t)) return false;
    return true;
  };
  for (NodeId v = 1; v < tree.node_count(); ++v) {
    const std::uint64_t a = tree.label_start(Locus{v, kNoNode, 0});
    const std::uint64_t L = tree.depth(v);
    std::uint64_t type = 1;
    while (type < L && rep.longest(a + type) < L - type) ++type;
    const SuffixLink& link = tree.link(v);
    const bool ok = link.type == type && locus_matches(link.target, a + type, L - type);
    record("suffix_link", ok,
           "node " + std::to_string(v) + " depth " + std::to_string(L) + " want type " + std::to_string(type) +
               " got " + std::to_string(link.type));
  }
  // Spot-check the fast oracle against the definitional one.
  if (tree.node_count() > 1) {
    const NodeId v = static_cast<NodeId>(1 + rng() % (tree.node_count() - 1));
    const std::uint64_t a = tree.label_start(Locus{v, kNoNode, 0});
    std::vector<std::uint32_t> alpha(ot.codes.begin() + static_cast<std::ptrdiff_t>(a - 1),
                                     ot.codes.begin() + static_cast<std::ptrdiff_t>(a - 1 + tree.depth(v)));
    const auto [rest, type] = naive_suffix_link(ot, alpha);
    record("suffix_link", tree.link(v).type == type && locus_matches(tree.link(v).target, a + type, rest.size()),
           "definitional link mismatch at node " + std::to_string(v));
  }
  // Link types never decrease going down.
  bool mono = true;
  for (NodeId v = 1; v < tree.node_count(); ++v) {
    const NodeId p = tree.parent(v);
    if (p != kRoot && tree.link(p).type > tree.link(v).type) mono = false;
  }
  record("link_monotone", mono, "a child has a smaller link type than its parent");

  // Ord sequences: leaves always, internal nodes when retained.
  const auto& retained = trie.retained_orders();
  std::vector<std::vector<std::uint32_t>> labels(trie.node_count());
  std::vector<std::vector<std::uint32_t>> ords(trie.node_count());
  for (NodeId v = 0; v < trie.node_count(); ++v) {
    labels[v] = detail::trie_label(trie, v);
    ords[v] = naive_ord(ot, order, labels[v]);
    if (trie.is_leaf(v)) {
      auto got = trie.leaf_ordinals(v);
      record("ord", std::vector<std::uint32_t>(got.begin(), got.end()) == ords[v],
             "leaf " + std::to_string(v) + " ordinals differ");
    } else if (!retained.empty()) {
      record("ord", retained[v] == ords[v], "node " + std::to_string(v) + " Ord differs");
    }
  }

  // Interval updates against filtering the materialized Ord sequences.
  std::vector<NodeId> internal;
  for (NodeId v = 0; v < trie.node_count(); ++v)
    if (!trie.is_leaf(v)) internal.push_back(v);
  for (std::size_t probe = 0; probe < probes && !internal.empty(); ++probe) {
    const NodeId v = internal[rng() % internal.size()];
    const auto& ov = ords[v];
    const std::uint64_t size = ov.size();
    std::uint64_t lo = 1 + rng() % size, hi = 1 + rng() % size;
    if (lo > hi) std::swap(lo, hi);
    if (rng() % 8 == 0) hi = lo - 1;  // empty input interval
    const auto kids = trie.children(v);
    if (rng() % 16 == 0) {
      // A letter with no child must be rejected.
      const Code missing = static_cast<Code>(ot.filler + 1);
      bool threw = false;
      try {
        trie.interval_step(v, missing, RankInterval{lo, hi});
      } catch (const Error& e) {
        threw = e.kind() == ErrorKind::NoSuchChild;
      }
      record("interval_step", threw, "missing letter accepted at node " + std::to_string(v));
      continue;
    }
    const auto& kid = kids[rng() % kids.size()];
    const std::size_t d = labels[v].size() + 1;
    std::vector<std::uint32_t> kept;
    for (std::uint64_t i = lo; i <= hi; ++i)
      if (ot.tau(ov[i - 1], d) == kid.letter) kept.push_back(ov[i - 1]);
    RankInterval want{};
    if (!kept.empty()) {
      const auto& ou = ords[kid.node];
      auto first = std::find(ou.begin(), ou.end(), kept.front());
      want.lo = static_cast<std::uint64_t>(first - ou.begin()) + 1;
      want.hi = want.lo + kept.size() - 1;
      const bool contiguous = want.hi <= ou.size() && std::equal(kept.begin(), kept.end(), first);
      record("interval_step_oracle", contiguous, "filtered ordinals not contiguous in the child");
    }
    const auto [u, got] = trie.interval_step(v, kid.letter, RankInterval{lo, hi});
    const bool ok = u == kid.node && (want.empty() ? got.empty() : got == want);
    record("interval_step", ok,
           "node " + std::to_string(v) + " letter " + std::to_string(kid.letter) + " [" + std::to_string(lo) + "," +
               std::to_string(hi) + "] -> [" + std::to_string(got.lo) + "," + std::to_string(got.hi) + "] want [" +
               std::to_string(want.lo) + "," + std::to_string(want.hi) + "]");
  }

  // Size accounting.
  const auto s = index.stats();
  std::uint64_t rho_letters = 0;
  for (NodeId v = 0; v < trie.node_count(); ++v)
    if (!trie.is_leaf(v)) rho_letters += ords[v].size();
  record("accounting", s.rho_letters == rho_letters && rho_letters <= ot.n() + ot.blocks(),
         "rho letters " + std::to_string(s.rho_letters) + " vs recount " + std::to_string(rho_letters));
  if (s.table_enabled) {
    const std::uint64_t base = s.sigma + 2, h = s.half_block;
    std::uint64_t want = h;
    for (std::uint64_t i = 0; i <= h; ++i) want *= base;
    record("accounting", s.table_entries == want,
           "C entries " + std::to_string(s.table_entries) + " want " + std::to_string(want));
  }
}

/// Shrinks a failing (text, pattern) pair by deleting single characters
/// while `fails` keeps returning true.
inline std::pair<std::string, std::string> minimize(
    std::string text, std::string pattern, const std::function<bool(const std::string&, const std::string&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < text.size() && text.size() > 1; ++i) {
      std::string t = text;
      t.erase(i, 1);
      if (fails(t, pattern)) {
        text = std::move(t);
        progress = true;
        --i;
      }
    }
    for (std::size_t i = 0; i < pattern.size() && pattern.size() > 1; ++i) {
      std::string p = pattern;
      p.erase(i, 1);
      if (fails(text, p)) {
        pattern = std::move(p);
        progress = true;
        --i;
      }
    }
  }
  return {text, pattern};
}

/// Runs every query and structure check for one text and one index built
/// from it.
inline void check_instance(const Index& index, std::string_view raw, const std::vector<std::string>& patterns,
                           const OracleConfig& config, const Finder& finder, std::mt19937_64& rng, Report& report) {
  const OracleText ot = make_oracle_text(raw, index.block_size());
  const auto order = boundary_order(ot);
  ++report.instances;
  if (config.check_structure) check_structure(index, ot, order, rng, config.probes_per_instance, report, raw);
  for (const auto& p : patterns) {
    const auto bad = detail::query_checks(index, ot, order, raw, p, finder, &report.tallies);
    for (const auto& [name, why] : bad) {
      Failure f{name, std::string(raw), p, ot.r, why};
      std::size_t minimized = 0;
      for (const auto& g : report.failures) minimized += g.check == name ? 1 : 0;
      if (minimized < config.minimize_limit) {
        const std::size_t r = ot.r;
        const BuildConfig build = index.config();
        const std::string check = name;
        auto fails = [&](const std::string& t, const std::string& q) {
          try {
            const Index idx = Index::build(t, build);
            const OracleText o = make_oracle_text(t, r);
            for (const auto& [n, _] : detail::query_checks(idx, o, boundary_order(o), t, q, finder, nullptr))
              if (n == check) return true;
          } catch (const std::exception&) {
            return false;
          }
          return false;
        };
        auto [t, q] = minimize(f.text, f.pattern, fails);
        f.detail += " | minimized text=\"" + t + "\" pattern=\"" + q + "\"";
      }
      report.failures.push_back(std::move(f));
    }
  }
}

inline std::string random_string(std::mt19937_64& rng, std::size_t sigma, std::size_t len) {
  std::string s(len, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
  return s;
}

inline std::vector<std::string> random_patterns(std::mt19937_64& rng, std::string_view raw, std::size_t sigma,
                                                const OracleConfig& config) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < config.patterns_per_instance; ++i) {
    const std::size_t m = config.m_min + rng() % (config.m_max - config.m_min + 1);
    if (i % 2 == 0 && m <= raw.size()) {
      const std::size_t start = rng() % (raw.size() - m + 1);
      out.emplace_back(raw.substr(start, m));
    } else {
      out.push_back(random_string(rng, sigma, m));
    }
  }
  return out;
}

/// Randomized instances followed by the exhaustive binary sweep.
inline Report run_differential(const OracleConfig& config, const Finder& finder = default_finder()) {
  Report report;
  std::mt19937_64 rng(config.seed);
  for (std::size_t inst = 0; inst < config.instances; ++inst) {
    const std::size_t sigma = config.sigmas[rng() % config.sigmas.size()];
    const std::size_t r = config.block_sizes[rng() % config.block_sizes.size()];
    const std::size_t n = config.n_min + rng() % (config.n_max - config.n_min + 1);
    const std::string raw = random_string(rng, sigma, n);
    BuildConfig build;
    build.block_size = r;
    build.retain_trie_orders = config.check_structure;
    try {
      const Index index = Index::build(raw, build);
      check_instance(index, raw, random_patterns(rng, raw, sigma, config), config, finder, rng, report);
    } catch (const std::exception& e) {
      ++report.tallies["build"].checks;
      ++report.tallies["build"].failures;
      report.failures.push_back(Failure{"build", raw, "", r, e.what()});
    }
  }
  if (!config.exhaustive) return report;

  std::vector<std::string> patterns;
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      std::string p(m, 'a');
      for (std::size_t i = 0; i < m; ++i) p[i] = (bits >> i) & 1 ? 'b' : 'a';
      patterns.push_back(p);
    }
  for (std::size_t n = 1; n <= 10; ++n)
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::string raw(n, 'a');
      for (std::size_t i = 0; i < n; ++i) raw[i] = (bits >> i) & 1 ? 'b' : 'a';
      BuildConfig build;
      build.block_size = 2;
      build.retain_trie_orders = config.check_structure;
      try {
        const Index index = Index::build(raw, build);
        check_instance(index, raw, patterns, config, finder, rng, report);
      } catch (const std::exception& e) {
        ++report.tallies["build"].checks;
        ++report.tallies["build"].failures;
        report.failures.push_back(Failure{"build", raw, "", 2, e.what()});
      }
    }
  return report;
}

}  // namespace psi::oracle
