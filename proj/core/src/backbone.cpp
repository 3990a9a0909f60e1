#include "cooccur/backbone.hpp"

#include <algorithm>
#include <cmath>

#include <unicode/uchar.h>

#include "cooccur/errors.hpp"

namespace cooccur {

std::optional<BackboneMethod> backbone_method_from_name(std::string_view name) {
  if (name == "disparity") return BackboneMethod::disparity;
  if (name == "nc") return BackboneMethod::noise_corrected;
  if (name == "none") return BackboneMethod::none;
  return std::nullopt;
}

std::string_view backbone_method_name(BackboneMethod method) {
  switch (method) {
    case BackboneMethod::disparity: return "disparity";
    case BackboneMethod::noise_corrected: return "nc";
    case BackboneMethod::none: return "none";
  }
  return "unknown";
}

namespace {

// Letters only (any script); entries with punctuation, digits or symbols are
// cleanup casualties.
bool letters_only(const std::string& word) {
  std::size_t i = 0;
  if (word.empty()) return false;
  while (i < word.size()) {
    UChar32 cp = static_cast<unsigned char>(word[i]);
    std::size_t len = 1;
    if (cp >= 0xF0) len = 4;
    else if (cp >= 0xE0) len = 3;
    else if (cp >= 0xC0) len = 2;
    if (i + len > word.size()) return false;
    if (len > 1) {
      UChar32 acc = cp & (0x7F >> len);
      for (std::size_t k = 1; k < len; ++k) acc = (acc << 6) | (static_cast<unsigned char>(word[i + k]) & 0x3F);
      cp = acc;
    }
    if (!u_isalpha(cp)) return false;
    i += len;
  }
  return true;
}

std::string ascii_fold(std::string word) {
  for (char& c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return word;
}

BackboneResult finalize_backbone(const WeightedGraph& g, BackboneMethod method, double threshold,
                                 const std::vector<bool>& keep_edge,
                                 const std::vector<double>& kept_scores_by_edge) {
  std::vector<bool> keep_node(g.node_count(), false);
  std::size_t kept_edges = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (keep_edge[i]) {
      keep_node[g.edges()[i].u] = true;
      keep_node[g.edges()[i].v] = true;
      ++kept_edges;
    }
  }

  std::vector<NodeId> remap(g.node_count(), 0);
  std::vector<std::string> words;
  std::vector<NodeAttrs> attrs;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    if (!keep_node[id]) continue;
    remap[id] = static_cast<NodeId>(words.size());
    words.push_back(g.word(id));
    attrs.push_back(g.attrs()[id]);
  }

  std::vector<WeightedEdge> edges;
  std::vector<double> scores;
  edges.reserve(kept_edges);
  scores.reserve(kept_edges);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (!keep_edge[i]) continue;
    const auto& e = g.edges()[i];
    edges.push_back({remap[e.u], remap[e.v], e.weight});
    scores.push_back(kept_scores_by_edge[i]);
  }

  BackboneResult result;
  result.method = method;
  result.threshold = threshold;
  result.removed_nodes = g.node_count() - words.size();
  result.removed_edges = g.edge_count() - edges.size();
  result.graph = WeightedGraph(std::move(words), std::move(attrs), std::move(edges));
  result.edge_scores = std::move(scores);
  return result;
}

}  // namespace

StopwordDerivation derive_stopwords(const std::vector<std::vector<std::string>>& daily_lists,
                                    const WeightedGraph& g, std::size_t top_degree) {
  StopwordDerivation out;
  if (daily_lists.empty()) return out;

  std::set<std::string> intersection(daily_lists.front().begin(), daily_lists.front().end());
  for (std::size_t i = 1; i < daily_lists.size() && !intersection.empty(); ++i) {
    std::set<std::string> day(daily_lists[i].begin(), daily_lists[i].end());
    std::set<std::string> next;
    std::set_intersection(intersection.begin(), intersection.end(), day.begin(), day.end(),
                          std::inserter(next, next.begin()));
    intersection = std::move(next);
  }

  std::set<std::string> cleaned;
  for (const auto& word : intersection) {
    if (letters_only(word)) cleaned.insert(ascii_fold(word));
  }
  out.daily_intersection.assign(cleaned.begin(), cleaned.end());

  std::vector<NodeId> by_degree(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) by_degree[id] = id;
  std::sort(by_degree.begin(), by_degree.end(), [&g](NodeId a, NodeId b) {
    if (g.degrees()[a] != g.degrees()[b]) return g.degrees()[a] > g.degrees()[b];
    return g.word(a) < g.word(b);
  });
  const std::size_t cutoff = std::min(top_degree, by_degree.size());
  std::set<std::string> top_set;
  for (std::size_t i = 0; i < cutoff; ++i) {
    out.top_degree_words.push_back(g.word(by_degree[i]));
    top_set.insert(g.word(by_degree[i]));
  }

  for (const auto& word : cleaned) {
    if (top_set.contains(word)) out.stopwords.insert(word);
  }
  return out;
}

WeightedGraph remove_hubs(const WeightedGraph& g, const std::set<std::string>& stopwords) {
  std::vector<bool> keep(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) keep[id] = !stopwords.contains(g.word(id));
  return g.induced_subgraph(keep, /*drop_isolated=*/true);
}

double disparity_pvalue(std::uint64_t w, std::uint64_t s, std::uint32_t k) {
  if (k <= 1) return 1.0;
  const double normalized = static_cast<double>(w) / static_cast<double>(s);
  return std::pow(1.0 - normalized, static_cast<double>(k - 1));
}

BackboneResult disparity_filter(const WeightedGraph& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("disparity filter: alpha must be in (0, 1]");
  }
  std::vector<bool> keep(g.edge_count(), false);
  std::vector<double> scores(g.edge_count(), 1.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    const double pu = disparity_pvalue(e.weight, g.strengths()[e.u], g.degrees()[e.u]);
    const double pv = disparity_pvalue(e.weight, g.strengths()[e.v], g.degrees()[e.v]);
    const double p = std::min(pu, pv);
    scores[i] = p;
    keep[i] = alpha == 1.0 || p < alpha;
  }
  return finalize_backbone(g, BackboneMethod::disparity, alpha, keep, scores);
}

BackboneResult noise_corrected_filter(const WeightedGraph& g, double delta) {
  if (delta < 0) throw ConfigError("noise-corrected filter: delta must be >= 0");
  const double total = static_cast<double>(g.total_weight());
  if (total <= 0) throw DataError("noise-corrected filter: graph has no edge weight");

  std::vector<bool> keep(g.edge_count(), false);
  std::vector<double> scores(g.edge_count(), 0.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    const double su = static_cast<double>(g.strengths()[e.u]);
    const double sv = static_cast<double>(g.strengths()[e.v]);
    const double p = (su / total) * (sv / total);
    const double expected = su * sv / total;
    const double variance = total * p * (1.0 - p);
    const double excess = static_cast<double>(e.weight) - expected;
    const double score = variance > 0 ? excess / std::sqrt(variance) : 0.0;
    scores[i] = score;
    keep[i] = variance > 0 ? excess > delta * std::sqrt(variance) : false;
  }
  return finalize_backbone(g, BackboneMethod::noise_corrected, delta, keep, scores);
}

BackboneResult pass_through_backbone(const WeightedGraph& g) {
  BackboneResult result;
  result.graph = g;
  result.method = BackboneMethod::none;
  result.edge_scores.assign(g.edge_count(), 0.0);
  return result;
}

ScoreHistogram score_histogram(const WeightedGraph& g, const AxisSpec& axis) {
  axis.validate();
  ScoreHistogram hist{axis, std::vector<double>(static_cast<std::size_t>(axis.bins), 0.0),
                      std::vector<double>(static_cast<std::size_t>(axis.bins), 0.0)};
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& a = g.attrs()[id];
    if (!a.score) continue;
    if (const auto bin = axis.bin_of(*a.score)) {
      hist.counts[*bin] += 1.0;
      hist.weighted_counts[*bin] += static_cast<double>(a.word_count);
    }
  }
  return hist;
}

SweepResult threshold_sweep(const WeightedGraph& g, const std::vector<double>& alphas,
                            const ProfileBins& bins) {
  if (alphas.empty()) throw ConfigError("threshold sweep: no alphas given");
  SweepResult result;
  for (const double alpha : alphas) {
    const BackboneResult bb = disparity_filter(g, alpha);
    const auto& graph = bb.graph;

    SweepRow row;
    row.alpha = alpha;
    row.nodes = graph.node_count();
    row.edges = graph.edge_count();
    row.total_weight = graph.total_weight();
    const MeanScore mean = weighted_mean_score(graph);
    row.mean_h = mean.mean;
    row.scored_fraction = mean.scored_fraction;
    const auto comps = component_sizes(graph);
    row.components = comps.size();
    row.n2_over_n = comps.size() > 1 && graph.node_count() > 0
                        ? static_cast<double>(comps[1]) / static_cast<double>(graph.node_count())
                        : 0.0;
    result.rows.push_back(row);

    SweepDetail detail{alpha,
                       score_histogram(graph, bins.score),
                       degree_distribution(graph),
                       strength_distribution(graph),
                       edge_weight_distribution(graph),
                       score_profiles(graph, bins).score_pair};
    result.details.push_back(std::move(detail));
  }
  return result;
}

}  // namespace cooccur
