#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cooccur {

struct RawDocument {
  std::string id;
  std::string text;
};

struct ParsedDocument {
  std::string id;
  std::vector<std::string> tokens;         // normalized, original order
  std::vector<std::string> unique_tokens;  // sorted, deduplicated
};

// Ordered rewrite rule applied to the lowercased text before splitting.
struct ContractionRule {
  std::string pattern;
  std::string replacement;
};

struct ParserConfig {
  std::set<std::string> anchors_to_remove;
  std::set<std::string> extra_removals;
  std::vector<ContractionRule> contraction_rules = default_contraction_rules();
  bool strip_hashtag_symbol = true;

  // "n't" -> " not", "'ve" -> " have", "'ll" -> " will";
  // "'s", "'m", "'d", "'re" -> single space.
  static std::vector<ContractionRule> default_contraction_rules();
};

struct Corpus {
  std::vector<ParsedDocument> documents;
  std::map<std::string, std::uint64_t> word_counts;   // N_w, repeats included
  std::map<std::string, std::uint64_t> tweet_counts;  // number of documents containing w
  std::uint64_t total_tokens = 0;
};

// Normalize a document into tokens. Degenerate inputs yield empty token
// lists; this never throws.
//
// Processing order: NFC + lowercase, contraction rules, '#' stripping,
// whitespace split, then per-token drops (handles, digit-bearing tokens,
// URLs, non-alphanumeric codepoints, removal lists).
ParsedDocument parse_document(const RawDocument& doc, const ParserConfig& cfg);

// Parses every document and accumulates corpus-level counts. Document order
// is preserved. Throws DataError on a duplicate document id.
Corpus parse_corpus(const std::vector<RawDocument>& docs, const ParserConfig& cfg);

// Input readers. jsonl: one {"id": ..., "text": ...} object per line.
// txt: one document per line, id = 1-based line number.
std::vector<RawDocument> read_documents_jsonl(std::istream& in);
std::vector<RawDocument> read_documents_txt(std::istream& in);

}  // namespace cooccur
