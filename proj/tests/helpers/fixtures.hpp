#pragma once

// Shared synthetic corpora and graphs for the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cooccur/corpus.hpp"
#include "cooccur/graph.hpp"
#include "cooccur/lexicon.hpp"
#include "cooccur/rng.hpp"

namespace fixtures {

// Corpus straight from token lists, bypassing the parser.
inline cooccur::Corpus corpus_from_tokens(const std::vector<std::vector<std::string>>& docs) {
  cooccur::Corpus corpus;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    cooccur::ParsedDocument doc;
    doc.id = std::to_string(i + 1);
    doc.tokens = docs[i];
    doc.unique_tokens = docs[i];
    std::sort(doc.unique_tokens.begin(), doc.unique_tokens.end());
    doc.unique_tokens.erase(std::unique(doc.unique_tokens.begin(), doc.unique_tokens.end()),
                            doc.unique_tokens.end());
    for (const auto& token : doc.tokens) {
      corpus.word_counts[token] += 1;
      corpus.total_tokens += 1;
    }
    for (const auto& token : doc.unique_tokens) corpus.tweet_counts[token] += 1;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

// Hand-built graph: words get unit counts unless attrs are supplied.
inline cooccur::WeightedGraph make_graph(
    std::vector<std::string> words,
    const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges,
    const std::map<std::string, double>& scores = {}) {
  std::sort(words.begin(), words.end());
  std::vector<cooccur::NodeAttrs> attrs(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    attrs[i].word_count = 1;
    attrs[i].tweet_count = 1;
    if (const auto it = scores.find(words[i]); it != scores.end()) attrs[i].score = it->second;
  }
  auto id_of = [&words](const std::string& w) {
    return static_cast<cooccur::NodeId>(
        std::lower_bound(words.begin(), words.end(), w) - words.begin());
  };
  std::vector<cooccur::WeightedEdge> canonical;
  for (const auto& [u, v, w] : edges) {
    cooccur::WeightedEdge e{id_of(u), id_of(v), w};
    if (e.u > e.v) std::swap(e.u, e.v);
    canonical.push_back(e);
  }
  std::sort(canonical.begin(), canonical.end(),
            [](const cooccur::WeightedEdge& a, const cooccur::WeightedEdge& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
  return cooccur::WeightedGraph(std::move(words), std::move(attrs), std::move(canonical));
}

// Digit-free base-26 suffix, so synthetic words survive the parser.
inline std::string alpha_suffix(std::size_t index) {
  std::string word;
  std::size_t n = index + 1;
  while (n > 0) {
    n -= 1;
    word.push_back(static_cast<char>('a' + n % 26));
    n /= 26;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

inline std::string synthetic_word(std::size_t index) { return "w" + alpha_suffix(index); }

// Zipf-ranked vocabulary sampler.
class ZipfSampler {
public:
  ZipfSampler(std::size_t vocab, double exponent) : cdf_(vocab) {
    double total = 0;
    for (std::size_t r = 0; r < vocab; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cdf_[r] = total;
    }
    for (auto& c : cdf_) c /= total;
  }

  std::size_t draw(cooccur::Rng& rng) const {
    const double u = rng.uniform01();
    return static_cast<std::size_t>(
        std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

private:
  std::vector<double> cdf_;
};

// Tweet-shaped Zipf corpus: short documents, heavy-tailed word frequencies.
inline cooccur::Corpus zipf_corpus(std::size_t n_docs, std::size_t vocab, std::uint64_t seed,
                                   double exponent = 1.1, std::size_t mean_len = 10) {
  cooccur::Rng rng(seed);
  ZipfSampler sampler(vocab, exponent);
  std::vector<std::vector<std::string>> docs(n_docs);
  for (auto& doc : docs) {
    const std::size_t len = 3 + rng.uniform_below(2 * mean_len - 5);
    doc.reserve(len);
    for (std::size_t t = 0; t < len; ++t) doc.push_back(synthetic_word(sampler.draw(rng)));
  }
  return corpus_from_tokens(docs);
}

// labMT-shaped score marginal: peaked slightly above neutral, clipped tails.
inline cooccur::Lexicon labmt_like_lexicon(std::size_t vocab, std::uint64_t seed) {
  cooccur::Rng rng(seed);
  std::map<std::string, cooccur::LexiconEntry> entries;
  for (std::size_t i = 0; i < vocab; ++i) {
    // sum of uniforms approximates a normal around 5.4 with sd ~0.9
    double score = 0;
    for (int k = 0; k < 6; ++k) score += rng.uniform_real(0.0, 1.0);
    score = 5.4 + (score - 3.0) * 1.3;
    score = std::clamp(score, 1.3, 8.6);
    entries[synthetic_word(i)] = {score, 1.0};
  }
  return cooccur::Lexicon(std::move(entries), {});
}

struct PlantedFixture {
  cooccur::Corpus corpus;
  cooccur::Lexicon lexicon;
  std::set<std::string> hub_words;
};

enum class Theme { positive, negative, merged };

// Planted themes (positive vocabulary, negative vocabulary, or both) tied
// together by shared neutral hub words.
inline PlantedFixture planted_fixture(Theme theme, std::size_t docs_per_theme,
                                      std::uint64_t seed, bool include_noise = true);

inline PlantedFixture planted_theme_fixture(std::size_t docs_per_theme, std::uint64_t seed) {
  return planted_fixture(Theme::merged, docs_per_theme, seed);
}

inline PlantedFixture planted_fixture(Theme theme, std::size_t docs_per_theme,
                                      std::uint64_t seed, bool include_noise) {
  cooccur::Rng rng(seed);
  const std::size_t theme_vocab = 60;
  const std::size_t hubs = 12;
  const std::size_t noise_vocab = 80;

  std::map<std::string, cooccur::LexiconEntry> entries;
  std::vector<std::string> pos_words, neg_words, hub_words, noise_words;
  for (std::size_t i = 0; i < theme_vocab; ++i) {
    pos_words.push_back("pos" + alpha_suffix(i));
    entries[pos_words.back()] = {rng.uniform_real(6.8, 8.6), 1.0};
    neg_words.push_back("neg" + alpha_suffix(i));
    entries[neg_words.back()] = {rng.uniform_real(1.4, 3.2), 1.0};
  }
  for (std::size_t i = 0; i < hubs; ++i) {
    hub_words.push_back("hub" + alpha_suffix(i));
    entries[hub_words.back()] = {rng.uniform_real(4.8, 5.2), 1.0};
  }
  for (std::size_t i = 0; i < noise_vocab; ++i) {
    noise_words.push_back("mid" + alpha_suffix(i));
    entries[noise_words.back()] = {rng.uniform_real(4.0, 6.0), 1.0};
  }

  ZipfSampler theme_sampler(theme_vocab, 1.05);
  ZipfSampler noise_sampler(noise_vocab, 1.05);
  std::vector<std::vector<std::string>> docs;
  const std::size_t total_docs =
      theme == Theme::merged ? 2 * docs_per_theme : docs_per_theme;
  for (std::size_t d = 0; d < total_docs; ++d) {
    const bool positive = theme == Theme::positive || (theme == Theme::merged && d % 2 == 0);
    const auto& theme_words = positive ? pos_words : neg_words;
    std::vector<std::string> doc;
    const std::size_t theme_tokens = 5 + rng.uniform_below(4);
    for (std::size_t t = 0; t < theme_tokens; ++t) {
      doc.push_back(theme_words[theme_sampler.draw(rng)]);
    }
    doc.push_back(hub_words[rng.uniform_below(hub_words.size())]);
    doc.push_back(hub_words[rng.uniform_below(hub_words.size())]);
    if (include_noise && rng.uniform01() < 0.5) {
      doc.push_back(noise_words[noise_sampler.draw(rng)]);
    }
    docs.push_back(std::move(doc));
  }

  PlantedFixture fixture;
  fixture.corpus = corpus_from_tokens(docs);
  fixture.lexicon = cooccur::Lexicon(std::move(entries), {});
  fixture.hub_words = std::set<std::string>(hub_words.begin(), hub_words.end());
  return fixture;
}

// Random connected weighted graph on n nodes (n >= 2).
inline cooccur::WeightedGraph random_connected_graph(std::size_t n, std::uint64_t seed,
                                                     std::uint64_t max_weight = 5) {
  cooccur::Rng rng(seed);
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> present;
  // random spanning tree first
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = rng.uniform_below(v);
    present.insert({u, v});
  }
  const std::size_t extra = rng.uniform_below(n * (n - 1) / 2 + 1);
  for (std::size_t t = 0; t < extra; ++t) {
    std::size_t u = rng.uniform_below(n);
    std::size_t v = rng.uniform_below(n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    present.insert({u, v});
  }
  std::vector<std::string> words;
  for (std::size_t i = 0; i < n; ++i) words.push_back(fixtures::synthetic_word(i));
  for (const auto& [u, v] : present) {
    edges.push_back({words[u], words[v], 1 + rng.uniform_below(max_weight)});
  }
  return make_graph(words, edges);
}

}  // namespace fixtures
