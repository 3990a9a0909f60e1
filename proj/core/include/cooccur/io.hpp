#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cooccur/backbone.hpp"
#include "cooccur/community.hpp"
#include "cooccur/corpus.hpp"
#include "cooccur/graph.hpp"
#include "cooccur/histogram.hpp"

namespace cooccur {

// Shortest round-trip decimal representation; identical on every platform.
std::string format_double(double value);

// --- corpus ---------------------------------------------------------------

std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path,
                                            const std::string& format);
void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_parsed_corpus_jsonl(const std::filesystem::path& path);

// --- graphs ---------------------------------------------------------------

// u<TAB>v<TAB>weight with a header row.
void write_edges_tsv(const std::filesystem::path& path, const WeightedGraph& g);
// word<TAB>N<TAB>tweet_count<TAB>degree<TAB>strength<TAB>h (h empty when unscored).
void write_nodes_tsv(const std::filesystem::path& path, const WeightedGraph& g);
void write_graphml(const std::filesystem::path& path, const WeightedGraph& g);

// Rebuild a graph from the two tables. Degree/strength columns are
// recomputed, not trusted.
WeightedGraph read_graph_tsv(const std::filesystem::path& edges_path,
                             const std::filesystem::path& nodes_path);

// Node table alone, as an edgeless graph (word counts and scores intact).
WeightedGraph read_nodes_tsv(const std::filesystem::path& nodes_path);

// Backbone edge table with the per-edge significance score.
void write_edge_scores_tsv(const std::filesystem::path& path, const BackboneResult& result);

// --- figure data ----------------------------------------------------------

struct NamedGrid {
  std::string name;
  const HistogramGrid* grid;
};

// CSV blocks with bin-edge header rows; one block per named grid.
void write_grids_csv(const std::filesystem::path& path, const std::vector<NamedGrid>& grids);

struct NamedDistribution {
  std::string kind;
  const std::map<std::uint64_t, std::uint64_t>* values;
};

// kind,value,count rows.
void write_distributions_csv(const std::filesystem::path& path,
                             const std::vector<NamedDistribution>& distributions);

// --- backbone sweep -------------------------------------------------------

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep);
void write_sweep_score_dists_csv(const std::filesystem::path& path, const SweepResult& sweep);
void write_sweep_structure_dists_csv(const std::filesystem::path& path, const SweepResult& sweep);
void write_sweep_score_pair_csv(const std::filesystem::path& path, const SweepResult& sweep);

// --- communities ----------------------------------------------------------

void write_communities_tsv(const std::filesystem::path& path, const CommunityReport& report);
void write_wordbars_csv(const std::filesystem::path& path, const CommunityEntry& community,
                        std::size_t top_n);
void write_community_scores_csv(const std::filesystem::path& path, const CommunityReport& report,
                                const CommunityControl& control, const BaselineScores& baselines);

// --- stop words -----------------------------------------------------------

std::vector<std::string> read_word_list(const std::filesystem::path& path);
// All files in the directory, sorted by filename; one list per file.
std::vector<std::vector<std::string>> read_daily_lists(const std::filesystem::path& dir);
void write_word_list(const std::filesystem::path& path, const std::set<std::string>& words);

}  // namespace cooccur
