// psi: build, query, verify, inspect and benchmark packed-string indexes.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "psi/index.hpp"
#include "psi/oracle.hpp"
#include "psi/serialize.hpp"

namespace {

constexpr int kOk = 0, kUsage = 1, kData = 2, kVerify = 3;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

int cmd_build(const std::string& text_path, std::size_t r, std::size_t word_capacity, const std::string& alphabet,
              const std::string& out_path) {
  psi::BuildConfig config;
  config.block_size = r;
  config.word_capacity = word_capacity;
  config.alphabet = alphabet == "byte" ? psi::AlphabetMode::byte : psi::AlphabetMode::automatic;
  const psi::Index index = psi::Index::build(read_text(text_path), config);
  const auto bytes = psi::serialize(index);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw DataError("cannot write " + out_path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write to " + out_path + " failed");

  const auto s = index.stats();
  std::cout << "n=" << s.n << " n_raw=" << s.n_raw << " r=" << s.r << " sigma=" << s.sigma;
  for (const auto& sec : psi::section_layout(bytes))
    std::cout << " " << psi::section_name(sec.tag) << "=" << sec.total_length();
  std::cout << " total=" << bytes.size() << "\n";
  return kOk;
}

int cmd_query(const std::string& index_path, const std::string& pattern, bool count) {
  const psi::Index index = psi::load_index(index_path);
  const auto occ = psi::find_all(index, pattern);
  if (count) {
    std::cout << occ.size() << "\n";
  } else {
    std::string out;
    for (const auto& o : occ) out += std::to_string(o.pos) + "\n";
    std::cout << out;
  }
  return kOk;
}

int cmd_verify(const std::string& index_path, bool random, std::uint64_t seed, std::size_t samples) {
  psi::oracle::OracleConfig config;
  config.seed = seed;
  psi::oracle::Report report;
  if (random) {
    config.instances = samples;
    config.exhaustive = false;
    report = psi::oracle::run_differential(config);
  } else {
    const psi::Index index = psi::load_index(index_path);
    const std::string raw = index.text().decode_raw();
    std::mt19937_64 rng(seed);
    config.patterns_per_instance = samples;
    config.m_max = std::max<std::size_t>(config.m_min, std::min<std::size_t>(config.m_max, raw.size()));
    std::string letters;
    for (auto c : index.text().alphabet().chars()) letters.push_back(static_cast<char>(c));
    std::vector<std::string> patterns;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t m = config.m_min + rng() % (config.m_max - config.m_min + 1);
      if (i % 2 == 0) {
        patterns.push_back(raw.substr(rng() % (raw.size() - m + 1), m));
      } else {
        std::string p(m, ' ');
        for (auto& ch : p) ch = letters[rng() % letters.size()];
        patterns.push_back(p);
      }
    }
    config.minimize_limit = 0;  // reproducers refer to the stored text
    psi::oracle::check_instance(index, raw, patterns, config, psi::oracle::default_finder(), rng, report);
  }
  std::cout << report.text() << report.summary() << "\n";
  return report.ok() ? kOk : kVerify;
}

int cmd_stats(const std::string& index_path) {
  const psi::Index index = psi::load_index(index_path);
  const auto s = index.stats();
  std::cout << "n_raw=" << s.n_raw << "\n"
            << "n=" << s.n << "\n"
            << "r=" << s.r << "\n"
            << "sigma=" << s.sigma << "\n"
            << "word_capacity=" << s.word_capacity << "\n"
            << "half_block=" << s.half_block << "\n"
            << "blocks=" << s.blocks << "\n"
            << "text_words=" << s.text_words << "\n"
            << "sa_words=" << s.sa_words << "\n"
            << "tree_nodes=" << s.tree_nodes << "\n"
            << "tree_internal_nodes=" << s.tree_internal_nodes << "\n"
            << "tree_words=" << s.tree_words << "\n"
            << "trie_nodes=" << s.trie_nodes << "\n"
            << "trie_leaves=" << s.trie_leaves << "\n"
            << "trie_words=" << s.trie_words << "\n"
            << "rho_letters=" << s.rho_letters << "\n"
            << "rho_entries=" << s.rho_entries << "\n"
            << "c_entries=" << s.c_entries << "\n"
            << "ord_entries=" << s.ord_entries << "\n"
            << "rho_letters_within_n_plus_n_over_r=" << (s.rho_within_bound ? "true" : "false") << "\n";
  if (s.table_enabled)
    std::cout << "C: enabled\nC_entries=" << s.table_entries << "\n";
  else
    std::cout << "C: disabled\nC_entries=0\n";
  std::cout << "yardstick_n_over_r=" << s.blocks << "\n";
  return kOk;
}

int cmd_bench(const std::string& index_path, const std::string& pattern_path, std::size_t repeat) {
  const psi::Index index = psi::load_index(index_path);
  const auto patterns = read_lines(pattern_path);
  const std::uint64_t r = index.block_size();
  std::cout << "pattern\tm\tocc\tword_cmp\tchar_cmp\tlink_follows\tright_total\tright_budget\ttrie_descent\t"
               "trie_visits\temitted\tshort_scan\ttotal_work\twall_ns(timing)\n";
  for (std::size_t rep = 0; rep < repeat; ++rep) {
    for (const auto& p : patterns) {
      psi::QueryStats stats;
      const auto start = std::chrono::steady_clock::now();
      const auto occ = psi::find_all(index, p, &stats);
      const auto ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
      const std::uint64_t m = p.size();
      std::cout << p << "\t" << m << "\t" << occ.size() << "\t" << stats.right.word_comparisons << "\t"
                << stats.right.char_comparisons << "\t" << stats.right.link_follows << "\t" << stats.right.total()
                << "\t" << 8 * (m + r * r + r) << "\t" << stats.left.descent_nodes << "\t"
                << stats.left.traverse_visits << "\t" << stats.left.emitted << "\t" << stats.short_scan_steps
                << "\t" << stats.total_work() << "\t" << ns << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packed-string sparse suffix index"};
  app.require_subcommand(1);

  std::string text_path, index_path, out_path, pattern, pattern_path, alphabet = "auto";
  std::size_t r = 0, word_capacity = 0, samples = 200, repeat = 1;
  std::uint64_t seed = 1;
  bool count = false, random = false;

  auto* build = app.add_subcommand("build", "Build an index from a text file");
  build->add_option("text", text_path, "Text file")->required();
  build->add_option("-r", r, "Block size")->required()->check(CLI::PositiveNumber);
  build->add_option("--word-capacity", word_capacity, "Characters per word (default: 64 / bits per char)")
      ->check(CLI::PositiveNumber);
  build->add_option("--alphabet", alphabet, "auto or byte")->check(CLI::IsMember({"auto", "byte"}));
  build->add_option("-o", out_path, "Index file")->required();

  auto* query = app.add_subcommand("query", "Print the 1-based start of every occurrence");
  query->add_option("index", index_path, "Index file")->required();
  query->add_option("pattern", pattern, "Pattern")->required();
  query->add_flag("--count", count, "Print only the number of occurrences");

  auto* verify = app.add_subcommand("verify", "Check an index, or random instances, against brute force");
  verify->add_option("index", index_path, "Index file");
  verify->add_flag("--random", random, "Check freshly built random instances instead of a file");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--samples", samples, "Random instances, or patterns per index file");

  auto* stats = app.add_subcommand("stats", "Report component sizes");
  stats->add_option("index", index_path, "Index file")->required();

  auto* bench = app.add_subcommand("bench", "Per-query counters and wall time");
  bench->add_option("index", index_path, "Index file")->required();
  bench->add_option("patterns", pattern_path, "File with one pattern per line")->required();
  bench->add_option("--repeat", repeat, "Passes over the pattern file");

  try {
    app.parse(argc, argv);
    if (verify->parsed() && random == !index_path.empty())
      throw CLI::ValidationError("verify", "give an index file or --random, not both");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed()) return cmd_build(text_path, r, word_capacity, alphabet, out_path);
    if (query->parsed()) return cmd_query(index_path, pattern, count);
    if (verify->parsed()) return cmd_verify(index_path, random, seed, samples);
    if (stats->parsed()) return cmd_stats(index_path);
    if (bench->parsed()) return cmd_bench(index_path, pattern_path, repeat);
  } catch (const psi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
