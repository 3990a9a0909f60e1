#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cooccur/graph.hpp"
#include "cooccur/profiles.hpp"

namespace cooccur {

enum class BackboneMethod { disparity, noise_corrected, none };

std::optional<BackboneMethod> backbone_method_from_name(std::string_view name);
std::string_view backbone_method_name(BackboneMethod method);

// Stop-word derivation: intersection of the daily top-word lists, cleaned up
// (entries with punctuation, digits or symbols dropped; case-folded and
// deduplicated), intersected with the top-`top_degree` words of the graph by
// degree.
struct StopwordDerivation {
  std::vector<std::string> daily_intersection;  // after cleanup, sorted
  std::vector<std::string> top_degree_words;    // by degree desc, word asc
  std::set<std::string> stopwords;
};

StopwordDerivation derive_stopwords(const std::vector<std::vector<std::string>>& daily_lists,
                                    const WeightedGraph& g, std::size_t top_degree = 200);

// Pass 1: delete the listed nodes and their edges; isolated nodes do not
// survive the pass.
WeightedGraph remove_hubs(const WeightedGraph& g, const std::set<std::string>& stopwords);

// Disparity-filter p-value for one endpoint: (1 - w/s)^(k-1); k <= 1 cannot
// reject the null and yields 1.
double disparity_pvalue(std::uint64_t w, std::uint64_t s, std::uint32_t k);

struct BackboneResult {
  WeightedGraph graph;
  BackboneMethod method = BackboneMethod::none;
  double threshold = 1.0;  // alpha (disparity) or delta (noise-corrected)
  std::uint64_t removed_nodes = 0;
  std::uint64_t removed_edges = 0;
  // Aligned with graph.edges(): min endpoint p-value (disparity) or the
  // binomial deviation score (noise-corrected).
  std::vector<double> edge_scores;
};

// Keeps an edge when it is significant from at least one endpoint
// (min p-value < alpha). alpha == 1 disables edge filtering entirely.
// Nodes isolated by the filtering are removed. alpha outside (0,1] throws
// ConfigError.
BackboneResult disparity_filter(const WeightedGraph& g, double alpha);

// Binomial null: expected weight s_u*s_v/T, variance T*p*(1-p) with
// p = (s_u/T)*(s_v/T). Keeps an edge when w - E > delta*sqrt(V). delta < 0
// throws ConfigError.
BackboneResult noise_corrected_filter(const WeightedGraph& g, double delta);

BackboneResult pass_through_backbone(const WeightedGraph& g);

struct ScoreHistogram {
  AxisSpec axis;
  std::vector<double> counts;           // one entry per scored node
  std::vector<double> weighted_counts;  // weighted by word count
};

ScoreHistogram score_histogram(const WeightedGraph& g, const AxisSpec& axis);

struct SweepRow {
  double alpha = 1.0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t total_weight = 0;
  std::optional<double> mean_h;  // count-weighted
  double scored_fraction = 0.0;
  std::size_t components = 0;
  double n2_over_n = 0.0;  // second-largest component / node count
};

struct SweepDetail {
  double alpha = 1.0;
  ScoreHistogram scores;
  std::map<std::uint64_t, std::uint64_t> degree_dist;
  std::map<std::uint64_t, std::uint64_t> strength_dist;
  std::map<std::uint64_t, std::uint64_t> weight_dist;
  HistogramGrid score_pair;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepDetail> details;
};

// Disparity sweep over the hub-removed graph, one row per alpha in input
// order; alpha = 1 reproduces the input graph.
SweepResult threshold_sweep(const WeightedGraph& g, const std::vector<double>& alphas,
                            const ProfileBins& bins);

}  // namespace cooccur
