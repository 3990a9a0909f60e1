#include "cooccur/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include "cooccur/errors.hpp"

namespace cooccur {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<double> parse_double(const std::string& field) {
  double value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::optional<double> Lexicon::score(const std::string& word) const {
  if (auto e = entry(word)) return e->h;
  return std::nullopt;
}

std::optional<LexiconEntry> Lexicon::entry(const std::string& word) const {
  if (auto it = entries_.find(word); it != entries_.end()) return it->second;
  if (auto alias = aliases_.find(word); alias != aliases_.end()) {
    if (auto it = entries_.find(alias->second); it != entries_.end()) return it->second;
  }
  return std::nullopt;
}

Lexicon load_lexicon(std::istream& scores, std::istream* aliases, LexiconLoadStats* stats) {
  LexiconLoadStats local;
  std::map<std::string, LexiconEntry> entries;
  std::map<std::string, std::string> alias_map;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(scores, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": expected 3 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    const auto h = parse_double(fields[1]);
    const auto sd = parse_double(fields[2]);
    if (!h || !sd) {
      // A header row is only tolerated as the first line.
      if (line_no == 1) continue;
      throw DataError("lexicon line " + std::to_string(line_no) + ": non-numeric score fields");
    }
    if (!(*h >= 1.0 && *h <= 9.0) || !(*sd >= 0.0)) {
      ++local.rejected_rows;
      continue;
    }
    if (!entries.emplace(fields[0], LexiconEntry{*h, *sd}).second) {
      entries[fields[0]] = LexiconEntry{*h, *sd};  // last wins
      ++local.duplicate_rows;
    }
    ++local.score_rows;
  }

  if (aliases != nullptr) {
    line_no = 0;
    while (std::getline(*aliases, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      const auto fields = split_tabs(line);
      if (fields.size() != 2) {
        throw DataError("alias line " + std::to_string(line_no) + ": expected 2 tab-separated fields, got " +
                        std::to_string(fields.size()));
      }
      if (line_no == 1 && fields[0] == "word" && fields[1] == "expansion") continue;
      if (fields[0].empty() || fields[1].empty()) {
        throw DataError("alias line " + std::to_string(line_no) + ": empty field");
      }
      if (!alias_map.emplace(fields[0], fields[1]).second) {
        alias_map[fields[0]] = fields[1];
        ++local.duplicate_rows;
      }
      ++local.alias_rows;
    }
  }

  if (stats != nullptr) *stats = local;
  return Lexicon(std::move(entries), std::move(alias_map));
}

Lexicon load_lexicon_files(const std::filesystem::path& score_file,
                           const std::optional<std::filesystem::path>& alias_file,
                           LexiconLoadStats* stats) {
  std::ifstream scores(score_file);
  if (!scores) throw DataError("cannot open lexicon file: " + score_file.string());
  if (alias_file) {
    std::ifstream aliases(*alias_file);
    if (!aliases) throw DataError("cannot open alias file: " + alias_file->string());
    return load_lexicon(scores, &aliases, stats);
  }
  return load_lexicon(scores, nullptr, stats);
}

double deviation_weight(double h, std::uint64_t n, std::uint64_t total_n) {
  if (total_n == 0) throw DataError("deviation_weight: total word count is zero");
  return (h - 5.0) * static_cast<double>(n) / static_cast<double>(total_n);
}

}  // namespace cooccur
