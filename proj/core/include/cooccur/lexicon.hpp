#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace cooccur {

struct LexiconEntry {
  double h;   // happiness score, 1..9, 5 neutral
  double sd;  // annotator standard deviation
};

struct LexiconLoadStats {
  std::size_t score_rows = 0;
  std::size_t alias_rows = 0;
  std::size_t rejected_rows = 0;   // h outside [1,9] or negative sd
  std::size_t duplicate_rows = 0;  // last occurrence wins
};

// Immutable word -> happiness score map with one-hop acronym aliases.
class Lexicon {
public:
  Lexicon() = default;
  Lexicon(std::map<std::string, LexiconEntry> entries, std::map<std::string, std::string> aliases)
      : entries_(std::move(entries)), aliases_(std::move(aliases)) {}

  // Direct entry first, then a single alias hop. A miss is a miss: no
  // default score is ever substituted.
  std::optional<double> score(const std::string& word) const;
  std::optional<LexiconEntry> entry(const std::string& word) const;

  const std::map<std::string, LexiconEntry>& entries() const { return entries_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }
  bool empty() const { return entries_.empty(); }

private:
  std::map<std::string, LexiconEntry> entries_;
  std::map<std::string, std::string> aliases_;
};

// Score file: TSV with header, columns word<TAB>happs<TAB>stddev.
// Alias file: TSV, columns word<TAB>expansion.
// Malformed rows throw DataError naming the line; out-of-range rows are
// counted in stats and skipped.
Lexicon load_lexicon(std::istream& scores, std::istream* aliases,
                     LexiconLoadStats* stats = nullptr);
Lexicon load_lexicon_files(const std::filesystem::path& score_file,
                           const std::optional<std::filesystem::path>& alias_file,
                           LexiconLoadStats* stats = nullptr);

// h_delta = (h - 5) * n / total_n. Throws DataError when total_n == 0.
double deviation_weight(double h, std::uint64_t n, std::uint64_t total_n);

}  // namespace cooccur
