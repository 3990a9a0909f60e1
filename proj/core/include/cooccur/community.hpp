#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cooccur/graph.hpp"

namespace cooccur {

struct Partition {
  std::vector<std::uint32_t> assignment;          // node -> community id, compacted
  std::vector<std::vector<NodeId>> communities;   // id -> member nodes
  double modularity = 0.0;
  std::vector<double> level_modularity;  // Q after each outer iteration, winning restart
  std::uint64_t seed = 0;
  double resolution = 1.0;
  std::size_t restarts = 1;
};

// Weighted Newman modularity of an assignment, strengths as expected-degree
// terms. No edges -> 0.
double modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& assignment,
                  double resolution = 1.0);

// Greedy local moving plus graph aggregation until no modularity gain, with
// node-level refinement between aggregation rounds. Node visit order and
// neighbor evaluation order are shuffled by the seed; first-best-gain tie
// breaking. Runs `restarts` deterministic streams derived from the seed and
// keeps the best-Q partition. Empty graph throws DataError; an edgeless
// graph yields singletons with Q = 0.
Partition louvain(const WeightedGraph& g, std::uint64_t seed, double resolution = 1.0,
                  std::size_t restarts = 8);

struct CommunityWord {
  std::string word;
  std::uint64_t count = 0;
  std::optional<double> h;
  std::optional<double> h_delta_comm;   // Eq-style deviation, community-normalized
  double rel_freq_backbone = 0.0;       // N_w / total backbone counts
};

struct CommunityEntry {
  std::string label;  // A, B, ... by node count descending
  std::uint32_t id = 0;
  std::size_t nodes = 0;
  std::uint64_t total_count = 0;         // all member words
  std::uint64_t scored_total_count = 0;  // normalizer for h_delta_comm
  std::optional<double> mean_h;          // count-weighted over scored members
  double scored_fraction = 0.0;
  std::vector<CommunityWord> words;  // sorted by count desc, word asc
};

struct CommunityReport {
  std::vector<CommunityEntry> communities;  // node count descending
  std::size_t min_size_floor = 15;
  std::size_t top_n = 10;
  std::uint64_t backbone_total_count = 0;
};

// Per-community aggregates and ranked word lists; top_n limits the word
// list length per community (0 = all words).
CommunityReport community_report(const Partition& partition, const WeightedGraph& g,
                                 std::size_t top_n, std::size_t min_size_floor);

struct BaselineScores {
  std::optional<double> backbone;          // count-weighted mean over backbone words
  std::optional<double> raw;               // same over the raw network
  std::optional<double> raw_excl_neutral;  // raw, scores in (4,6) excluded
};

BaselineScores baseline_scores(const WeightedGraph& raw, const WeightedGraph& backbone);

struct CommunityControlRow {
  std::string label;
  double mean = 0.0;  // mean of shuffled community means
  double sd = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
};

struct CommunityControl {
  std::vector<CommunityControlRow> rows;  // aligned with report order
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

// Holds the partition fixed, shuffles the raw network's score column, and
// recomputes count-weighted community means per replicate.
CommunityControl shuffled_community_control(const WeightedGraph& raw,
                                            const CommunityReport& report, std::uint64_t seed,
                                            std::size_t replicates);

// Spreadsheet-style label for a 0-based rank: A..Z, AA, AB, ...
std::string community_label(std::size_t rank);

}  // namespace cooccur
