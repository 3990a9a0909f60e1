#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cooccur/backbone.hpp"
#include "cooccur/community.hpp"
#include "cooccur/corpus.hpp"
#include "cooccur/null_models.hpp"
#include "cooccur/profiles.hpp"

namespace cooccur {

struct PipelineConfig {
  std::filesystem::path corpus_path;
  std::string input_format = "jsonl";  // jsonl | txt
  std::filesystem::path lexicon_path;
  std::optional<std::filesystem::path> aliases_path;
  std::optional<std::filesystem::path> stopwords_path;
  std::optional<std::filesystem::path> daily_lists_dir;

  ParserConfig parser;
  bool require_scores = false;

  BackboneMethod backbone_method = BackboneMethod::disparity;
  double alpha = 0.05;
  double nc_delta = 1.64;
  std::vector<double> sweep;
  std::size_t stopword_top_degree = 200;

  std::vector<NullModelKind> null_models;
  std::uint32_t null_replicates = 1;

  std::uint64_t seed = 1;
  double resolution = 1.0;
  std::size_t louvain_restarts = 8;
  std::size_t community_floor = 15;
  std::size_t top_n = 10;
  std::size_t wordbar_communities = 9;
  std::size_t control_replicates = 200;

  ProfileBins bins;
  std::filesystem::path output_dir = "out";
  bool write_timestamp = false;

  void validate() const;  // throws ConfigError
};

// JSON config file. Relative input paths resolve against the config file's
// directory; a relative output dir resolves under $COOCCUR_OUT_ROOT when set.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct CommunitySummaryRow {
  std::string label;
  std::size_t nodes = 0;
  std::uint64_t total_count = 0;
  std::optional<double> mean_h;
  double scored_fraction = 0.0;
};

struct RunSummary {
  std::size_t documents = 0;
  std::uint64_t total_tokens = 0;

  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t total_edge_weight = 0;
  std::vector<std::size_t> component_sizes;
  std::optional<double> assort_degree;
  std::optional<double> assort_strength;
  std::optional<double> assort_score_weighted;
  std::optional<double> assort_score_unweighted;
  double scored_fraction = 0.0;
  std::optional<double> mean_h_raw;

  std::string backbone_method;
  double backbone_threshold = 0.0;
  std::size_t stopword_count = 0;
  std::size_t pass1_removed_nodes = 0;
  std::size_t backbone_nodes = 0;
  std::size_t backbone_edges = 0;
  std::uint64_t backbone_total_weight = 0;
  std::uint64_t backbone_removed_nodes = 0;
  std::uint64_t backbone_removed_edges = 0;
  std::optional<double> mean_h_backbone;
  double backbone_scored_fraction = 0.0;

  std::size_t community_count = 0;
  double modularity = 0.0;
  std::vector<CommunitySummaryRow> communities;
  BaselineScores baselines;
  bool opposing_sentiment = false;
  std::optional<double> community_mean_min;
  std::optional<double> community_mean_max;
};

// Executes ingest -> lexicon -> graph -> null models -> backbone ->
// community and emits every data product plus run_summary.json and
// manifest.json under cfg.output_dir. Deterministic for a fixed config and
// seed. Partially written outputs are removed when a stage fails.
RunSummary run_pipeline(const PipelineConfig& cfg);

// Side-by-side TSV comparison of >= 2 emitted run summaries. Histogram bin
// specs must match across runs.
std::string compare_runs(const std::vector<std::filesystem::path>& summary_paths);

}  // namespace cooccur
