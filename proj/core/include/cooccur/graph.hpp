#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cooccur/corpus.hpp"
#include "cooccur/lexicon.hpp"

namespace cooccur {

using NodeId = std::uint32_t;

struct NodeAttrs {
  std::uint64_t word_count = 0;   // N_w, repeats included
  std::uint64_t tweet_count = 0;  // documents containing the word
  std::optional<double> score;    // happiness h_w, missing when unscored
};

// Canonical edge: u < v. The edge list is kept sorted by (u, v).
struct WeightedEdge {
  NodeId u;
  NodeId v;
  std::uint64_t weight;
};

// Undirected weighted word graph. Immutable after construction; node ids are
// ranks in the sorted vocabulary, so equal corpora produce identical graphs
// regardless of document order.
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> words, std::vector<NodeAttrs> attrs,
                std::vector<WeightedEdge> edges);

  std::size_t node_count() const { return words_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t total_weight() const { return total_weight_; }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<NodeAttrs>& attrs() const { return attrs_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& degrees() const { return degrees_; }
  const std::vector<std::uint64_t>& strengths() const { return strengths_; }

  const std::string& word(NodeId id) const { return words_[id]; }
  std::optional<NodeId> id_of(std::string_view word) const;

  std::span<const std::pair<NodeId, std::uint64_t>> neighbors(NodeId id) const {
    return {adjacency_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }

  std::uint64_t weight_between(NodeId u, NodeId v) const;

  // Same structure, new score column.
  WeightedGraph with_scores(std::vector<std::optional<double>> scores) const;

  // Subgraph on the nodes with keep[id] == true. Edges with a removed
  // endpoint disappear; when drop_isolated is set, nodes left without edges
  // are removed as well.
  WeightedGraph induced_subgraph(const std::vector<bool>& keep, bool drop_isolated) const;

private:
  std::vector<std::string> words_;
  std::vector<NodeAttrs> attrs_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::uint64_t> strengths_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<NodeId, std::uint64_t>> adjacency_;
  std::unordered_map<std::string, NodeId> index_;
  std::uint64_t total_weight_ = 0;
};

// Co-occurrence network: one node per distinct token, edge weight = number
// of documents whose unique token sets contain both endpoints. Equivalent to
// the binarized document-term matrix product with a zeroed diagonal.
WeightedGraph build_graph(const Corpus& corpus);

// Copy of g with scores resolved through the lexicon (aliases included).
WeightedGraph apply_scores(const WeightedGraph& g, const Lexicon& lex);

// Restrict to scored nodes (the --require-scores mode).
WeightedGraph drop_unscored(const WeightedGraph& g);

// Connected component sizes, descending.
std::vector<std::size_t> component_sizes(const WeightedGraph& g);

enum class NodeAttribute { degree, strength, score };

// Pearson correlation of the attribute over edge endpoint pairs, both
// orientations included; the weighted variant multiplies each orientation by
// the edge weight. Edges with an unscored endpoint are skipped for
// attribute == score. Fewer than 2 usable edges or zero variance -> nullopt.
std::optional<double> assortativity(const WeightedGraph& g, NodeAttribute attribute,
                                    bool weighted);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t total_weight = 0;
  std::vector<std::size_t> component_sizes;
  std::optional<double> assort_degree;
  std::optional<double> assort_strength;
  std::optional<double> assort_score_weighted;
  std::optional<double> assort_score_unweighted;
  std::size_t scored_nodes = 0;
};

GraphStats graph_stats(const WeightedGraph& g);

// Count-weighted mean happiness over scored nodes; nullopt when none are
// scored. The second member is the scored fraction of nodes.
struct MeanScore {
  std::optional<double> mean;
  double scored_fraction = 0.0;
};
MeanScore weighted_mean_score(const WeightedGraph& g);

// value -> frequency maps backing the distribution plots
std::map<std::uint64_t, std::uint64_t> degree_distribution(const WeightedGraph& g);
std::map<std::uint64_t, std::uint64_t> strength_distribution(const WeightedGraph& g);
std::map<std::uint64_t, std::uint64_t> edge_weight_distribution(const WeightedGraph& g);

}  // namespace cooccur
