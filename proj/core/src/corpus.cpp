#include "cooccur/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <nlohmann/json.hpp>

#include "cooccur/errors.hpp"

namespace cooccur {

namespace {

// NFC, then root-locale lowercasing. Invalid UTF-8 becomes U+FFFD, which the
// alphanumeric filter later removes.
std::string normalize_lower(const std::string& raw) {
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(raw);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_SUCCESS(status)) {
    icu::UnicodeString normalized = nfc->normalize(text, status);
    if (U_SUCCESS(status)) text = std::move(normalized);
  }
  text.toLower(icu::Locale::getRoot());
  std::string out;
  text.toUTF8String(out);
  return out;
}

void replace_all(std::string& text, const std::string& pattern, const std::string& replacement) {
  if (pattern.empty()) return;
  std::size_t pos = 0;
  while ((pos = text.find(pattern, pos)) != std::string::npos) {
    text.replace(pos, pattern.size(), replacement);
    pos += replacement.size();
  }
}

UChar32 decode_utf8(const std::string& s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  UChar32 cp = b0;
  if (b0 >= 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else if (b0 >= 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  }
  if (i + len > s.size()) len = 1, cp = b0;
  for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  i += len;
  return cp;
}

void append_utf8(std::string& out, UChar32 cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_url(const std::string& token) {
  return token.starts_with("http://") || token.starts_with("https://") ||
         token.starts_with("www.");
}

bool contains_ascii_digit(const std::string& token) {
  return std::any_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

// Keep only alphanumeric codepoints (letters in any script, digits).
std::string strip_non_alnum(const std::string& token) {
  std::string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    const UChar32 cp = decode_utf8(token, i);
    if (u_isalnum(cp)) append_utf8(out, cp);
  }
  return out;
}

// Removal entries go through the same normalization as tokens, so
// "#ImWithHer" matches the parsed token "imwithher".
struct CompiledConfig {
  const ParserConfig* cfg;
  std::unordered_set<std::string> removals;
};

CompiledConfig compile(const ParserConfig& cfg) {
  CompiledConfig compiled;
  compiled.cfg = &cfg;
  auto add = [&compiled](const std::set<std::string>& words) {
    for (const auto& w : words) {
      std::string norm = strip_non_alnum(normalize_lower(w));
      if (!norm.empty()) compiled.removals.insert(std::move(norm));
    }
  };
  add(cfg.anchors_to_remove);
  add(cfg.extra_removals);
  return compiled;
}

ParsedDocument parse_with(const RawDocument& doc, const CompiledConfig& compiled) {
  ParsedDocument out;
  out.id = doc.id;

  std::string text = normalize_lower(doc.text);
  for (const auto& rule : compiled.cfg->contraction_rules) {
    replace_all(text, rule.pattern, rule.replacement);
  }
  if (compiled.cfg->strip_hashtag_symbol) {
    text.erase(std::remove(text.begin(), text.end(), '#'), text.end());
  }

  std::string token;
  std::size_t i = 0;
  auto flush = [&]() {
    if (token.empty()) return;
    std::string raw;
    raw.swap(token);
    if (raw.front() == '@') return;
    if (is_url(raw)) return;
    if (contains_ascii_digit(raw)) return;
    std::string word = strip_non_alnum(raw);
    if (word.empty()) return;
    if (compiled.removals.contains(word)) return;
    out.tokens.push_back(std::move(word));
  };
  while (i < text.size()) {
    const std::size_t start = i;
    const UChar32 cp = decode_utf8(text, i);
    if (u_isUWhiteSpace(cp)) {
      flush();
    } else {
      token.append(text, start, i - start);
    }
  }
  flush();

  out.unique_tokens = out.tokens;
  std::sort(out.unique_tokens.begin(), out.unique_tokens.end());
  out.unique_tokens.erase(std::unique(out.unique_tokens.begin(), out.unique_tokens.end()),
                          out.unique_tokens.end());
  return out;
}

}  // namespace

std::vector<ContractionRule> ParserConfig::default_contraction_rules() {
  return {
      {"n't", " not"}, {"'s", " "},     {"'m", " "},   {"'d", " "},
      {"'re", " "},    {"'ve", " have"}, {"'ll", " will"},
  };
}

ParsedDocument parse_document(const RawDocument& doc, const ParserConfig& cfg) {
  return parse_with(doc, compile(cfg));
}

Corpus parse_corpus(const std::vector<RawDocument>& docs, const ParserConfig& cfg) {
  const CompiledConfig compiled = compile(cfg);
  Corpus corpus;
  corpus.documents.reserve(docs.size());
  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(docs.size());
  for (const auto& doc : docs) {
    if (!seen_ids.insert(doc.id).second) {
      throw DataError("duplicate document id: " + doc.id);
    }
    ParsedDocument parsed = parse_with(doc, compiled);
    for (const auto& token : parsed.tokens) {
      corpus.word_counts[token] += 1;
      corpus.total_tokens += 1;
    }
    for (const auto& token : parsed.unique_tokens) {
      corpus.tweet_counts[token] += 1;
    }
    corpus.documents.push_back(std::move(parsed));
  }
  return corpus;
}

std::vector<RawDocument> read_documents_jsonl(std::istream& in) {
  std::vector<RawDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["text"].is_string()) {
      throw DataError("corpus line " + std::to_string(line_no) +
                      ": expected an object with string fields \"id\" and \"text\"");
    }
    RawDocument doc;
    const auto& id = obj["id"];
    if (id.is_string()) {
      doc.id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      doc.id = std::to_string(id.get<long long>());
    } else {
      throw DataError("corpus line " + std::to_string(line_no) + ": unsupported id type");
    }
    doc.text = obj["text"].get<std::string>();
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> read_documents_txt(std::istream& in) {
  std::vector<RawDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    docs.push_back({std::to_string(line_no), line});
  }
  return docs;
}

}  // namespace cooccur
