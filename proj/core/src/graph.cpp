#include "cooccur/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "cooccur/errors.hpp"

namespace cooccur {

WeightedGraph::WeightedGraph(std::vector<std::string> words, std::vector<NodeAttrs> attrs,
                             std::vector<WeightedEdge> edges)
    : words_(std::move(words)), attrs_(std::move(attrs)), edges_(std::move(edges)) {
  if (attrs_.size() != words_.size()) {
    throw std::invalid_argument("WeightedGraph: words/attrs size mismatch");
  }
  if (!std::is_sorted(words_.begin(), words_.end()) ||
      std::adjacent_find(words_.begin(), words_.end()) != words_.end()) {
    throw std::invalid_argument("WeightedGraph: vocabulary must be sorted and unique");
  }
  index_.reserve(words_.size());
  for (NodeId id = 0; id < words_.size(); ++id) index_.emplace(words_[id], id);

  const std::size_t n = words_.size();
  for (const auto& e : edges_) {
    if (e.u >= e.v || e.v >= n || e.weight == 0) {
      throw std::invalid_argument("WeightedGraph: edge list is not canonical");
    }
  }
  if (!std::is_sorted(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
      })) {
    throw std::invalid_argument("WeightedGraph: edge list must be sorted by (u, v)");
  }

  degrees_.assign(n, 0);
  strengths_.assign(n, 0);
  for (const auto& e : edges_) {
    degrees_[e.u] += 1;
    degrees_[e.v] += 1;
    strengths_[e.u] += e.weight;
    strengths_[e.v] += e.weight;
    total_weight_ += e.weight;
  }

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    offsets_[e.u + 1] += 1;
    offsets_[e.v + 1] += 1;
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  // Neighbor lists come out sorted because edges are processed in (u, v) order
  // for the forward direction; the reverse direction needs a per-node sort.
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

std::optional<NodeId> WeightedGraph::id_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t WeightedGraph::weight_between(NodeId u, NodeId v) const {
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                                   [](const auto& p, NodeId id) { return p.first < id; });
  if (it != nbrs.end() && it->first == v) return it->second;
  return 0;
}

WeightedGraph WeightedGraph::with_scores(std::vector<std::optional<double>> scores) const {
  if (scores.size() != words_.size()) {
    throw std::invalid_argument("with_scores: size mismatch");
  }
  std::vector<NodeAttrs> attrs = attrs_;
  for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i].score = scores[i];
  return WeightedGraph(words_, std::move(attrs), edges_);
}

WeightedGraph WeightedGraph::induced_subgraph(const std::vector<bool>& keep,
                                              bool drop_isolated) const {
  if (keep.size() != words_.size()) {
    throw std::invalid_argument("induced_subgraph: mask size mismatch");
  }
  std::vector<bool> final_keep = keep;
  if (drop_isolated) {
    std::vector<bool> has_edge(words_.size(), false);
    for (const auto& e : edges_) {
      if (keep[e.u] && keep[e.v]) has_edge[e.u] = has_edge[e.v] = true;
    }
    for (std::size_t i = 0; i < final_keep.size(); ++i) {
      final_keep[i] = final_keep[i] && has_edge[i];
    }
  }
  std::vector<NodeId> remap(words_.size(), 0);
  std::vector<std::string> words;
  std::vector<NodeAttrs> attrs;
  for (NodeId id = 0; id < words_.size(); ++id) {
    if (!final_keep[id]) continue;
    remap[id] = static_cast<NodeId>(words.size());
    words.push_back(words_[id]);
    attrs.push_back(attrs_[id]);
  }
  std::vector<WeightedEdge> edges;
  for (const auto& e : edges_) {
    if (final_keep[e.u] && final_keep[e.v]) {
      edges.push_back({remap[e.u], remap[e.v], e.weight});
    }
  }
  return WeightedGraph(std::move(words), std::move(attrs), std::move(edges));
}

WeightedGraph build_graph(const Corpus& corpus) {
  std::vector<std::string> words;
  words.reserve(corpus.word_counts.size());
  for (const auto& [word, count] : corpus.word_counts) words.push_back(word);

  std::unordered_map<std::string, NodeId> index;
  index.reserve(words.size());
  for (NodeId id = 0; id < words.size(); ++id) index.emplace(words[id], id);

  std::unordered_map<std::uint64_t, std::uint64_t> weights;
  for (const auto& doc : corpus.documents) {
    std::vector<NodeId> ids;
    ids.reserve(doc.unique_tokens.size());
    for (const auto& token : doc.unique_tokens) ids.push_back(index.at(token));
    // unique_tokens is sorted, so ids are ascending and pairs are canonical
    for (std::size_t a = 0; a + 1 < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        const std::uint64_t key = (static_cast<std::uint64_t>(ids[a]) << 32) | ids[b];
        weights[key] += 1;
      }
    }
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xFFFFFFFFu), w});
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<NodeAttrs> attrs(words.size());
  for (NodeId id = 0; id < words.size(); ++id) {
    attrs[id].word_count = corpus.word_counts.at(words[id]);
    attrs[id].tweet_count = corpus.tweet_counts.at(words[id]);
  }
  return WeightedGraph(std::move(words), std::move(attrs), std::move(edges));
}

WeightedGraph apply_scores(const WeightedGraph& g, const Lexicon& lex) {
  std::vector<std::optional<double>> scores(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) scores[id] = lex.score(g.word(id));
  return g.with_scores(std::move(scores));
}

WeightedGraph drop_unscored(const WeightedGraph& g) {
  std::vector<bool> keep(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) keep[id] = g.attrs()[id].score.has_value();
  return g.induced_subgraph(keep, /*drop_isolated=*/false);
}

std::vector<std::size_t> component_sizes(const WeightedGraph& g) {
  std::vector<std::size_t> sizes;
  std::vector<bool> visited(g.node_count(), false);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.node_count(); ++start) {
    if (visited[start]) continue;
    std::size_t size = 0;
    stack.push_back(start);
    visited[start] = true;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (const auto& [v, w] : g.neighbors(u)) {
        if (!visited[v]) {
          visited[v] = true;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::optional<double> assortativity(const WeightedGraph& g, NodeAttribute attribute,
                                    bool weighted) {
  std::vector<std::optional<double>> values(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) {
    switch (attribute) {
      case NodeAttribute::degree:
        values[id] = static_cast<double>(g.degrees()[id]);
        break;
      case NodeAttribute::strength:
        values[id] = static_cast<double>(g.strengths()[id]);
        break;
      case NodeAttribute::score:
        values[id] = g.attrs()[id].score;
        break;
    }
  }

  double sw = 0, sx = 0, sxx = 0, sxy = 0;
  std::size_t usable = 0;
  for (const auto& e : g.edges()) {
    if (!values[e.u] || !values[e.v]) continue;
    ++usable;
    const double x = *values[e.u];
    const double y = *values[e.v];
    const double w = weighted ? static_cast<double>(e.weight) : 1.0;
    // both orientations (x,y) and (y,x)
    sw += 2 * w;
    sx += w * (x + y);
    sxx += w * (x * x + y * y);
    sxy += 2 * w * x * y;
  }
  if (usable < 2) return std::nullopt;
  const double cov = sxy - sx * sx / sw;
  const double var = sxx - sx * sx / sw;
  if (var <= 1e-12 * std::max(1.0, sxx)) return std::nullopt;
  return cov / var;
}

GraphStats graph_stats(const WeightedGraph& g) {
  GraphStats stats;
  stats.nodes = g.node_count();
  stats.edges = g.edge_count();
  stats.total_weight = g.total_weight();
  stats.component_sizes = component_sizes(g);
  stats.assort_degree = assortativity(g, NodeAttribute::degree, false);
  stats.assort_strength = assortativity(g, NodeAttribute::strength, false);
  stats.assort_score_weighted = assortativity(g, NodeAttribute::score, true);
  stats.assort_score_unweighted = assortativity(g, NodeAttribute::score, false);
  for (const auto& a : g.attrs()) {
    if (a.score) ++stats.scored_nodes;
  }
  return stats;
}

std::map<std::uint64_t, std::uint64_t> degree_distribution(const WeightedGraph& g) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (auto k : g.degrees()) dist[k] += 1;
  return dist;
}

std::map<std::uint64_t, std::uint64_t> strength_distribution(const WeightedGraph& g) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (auto s : g.strengths()) dist[s] += 1;
  return dist;
}

std::map<std::uint64_t, std::uint64_t> edge_weight_distribution(const WeightedGraph& g) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (const auto& e : g.edges()) dist[e.weight] += 1;
  return dist;
}

MeanScore weighted_mean_score(const WeightedGraph& g) {
  double sum = 0;
  std::uint64_t total = 0;
  std::size_t scored = 0;
  for (const auto& a : g.attrs()) {
    if (!a.score) continue;
    ++scored;
    sum += *a.score * static_cast<double>(a.word_count);
    total += a.word_count;
  }
  MeanScore result;
  result.scored_fraction =
      g.node_count() == 0 ? 0.0 : static_cast<double>(scored) / static_cast<double>(g.node_count());
  if (total > 0) result.mean = sum / static_cast<double>(total);
  return result;
}

}  // namespace cooccur
