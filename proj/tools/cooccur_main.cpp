// Command line front end for the co-occurrence sentiment pipeline.
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cooccur/backbone.hpp"
#include "cooccur/community.hpp"
#include "cooccur/errors.hpp"
#include "cooccur/graph.hpp"
#include "cooccur/io.hpp"
#include "cooccur/null_models.hpp"
#include "cooccur/pipeline.hpp"
#include "cooccur/rng.hpp"
#include "cooccur/version.hpp"

namespace fs = std::filesystem;
using namespace cooccur;

namespace {

fs::path resolve_out(const fs::path& dir) {
  if (const char* root = std::getenv("COOCCUR_OUT_ROOT"); root != nullptr && *root != '\0') {
    if (dir.is_relative()) return fs::path(root) / dir;
  }
  return dir;
}

fs::path out_file(const fs::path& dir, const std::string& relative) {
  const fs::path path = dir / relative;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

std::set<std::string> split_words(const std::vector<std::string>& args) {
  std::set<std::string> words;
  for (const auto& arg : args) {
    std::size_t start = 0;
    while (start <= arg.size()) {
      const std::size_t comma = arg.find(',', start);
      const std::string word =
          comma == std::string::npos ? arg.substr(start) : arg.substr(start, comma - start);
      if (!word.empty()) words.insert(word);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return words;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : "n/a";
}

struct IngestArgs {
  std::string input;
  std::string format = "jsonl";
  std::vector<std::string> anchors;
  std::vector<std::string> remove_words;
  bool keep_hashtag_symbol = false;
  std::string out = "out";
};

int run_ingest(const IngestArgs& args) {
  ParserConfig parser;
  parser.anchors_to_remove = split_words(args.anchors);
  parser.extra_removals = split_words(args.remove_words);
  parser.strip_hashtag_symbol = !args.keep_hashtag_symbol;

  const auto docs = read_raw_documents(args.input, args.format);
  const Corpus corpus = parse_corpus(docs, parser);
  const fs::path out = resolve_out(args.out);
  write_corpus_jsonl(out_file(out, "parsed.jsonl"), corpus);
  std::cout << "documents\t" << corpus.documents.size() << "\ntokens\t" << corpus.total_tokens
            << "\ndistinct_words\t" << corpus.word_counts.size() << "\nwrote\t"
            << (out / "parsed.jsonl").string() << '\n';
  return 0;
}

struct GraphArgs {
  std::string corpus;
  std::string lexicon;
  std::string aliases;
  bool require_scores = false;
  std::string out = "out";
};

int run_graph(const GraphArgs& args) {
  const Corpus corpus = read_parsed_corpus_jsonl(args.corpus);
  LexiconLoadStats lexicon_stats;
  const Lexicon lexicon = load_lexicon_files(
      args.lexicon, args.aliases.empty() ? std::nullopt : std::optional<fs::path>(args.aliases),
      &lexicon_stats);

  WeightedGraph g = apply_scores(build_graph(corpus), lexicon);
  if (args.require_scores) g = drop_unscored(g);

  const fs::path out = resolve_out(args.out);
  write_edges_tsv(out_file(out, "edges.tsv"), g);
  write_nodes_tsv(out_file(out, "nodes.tsv"), g);
  write_graphml(out_file(out, "graph.graphml"), g);

  const auto degree = degree_distribution(g);
  const auto strength = strength_distribution(g);
  const auto weight = edge_weight_distribution(g);
  std::map<std::uint64_t, std::uint64_t> word_count, tweet_count, tweet_size;
  for (const auto& a : g.attrs()) {
    word_count[a.word_count] += 1;
    tweet_count[a.tweet_count] += 1;
  }
  for (const auto& doc : corpus.documents) tweet_size[doc.unique_tokens.size()] += 1;
  write_distributions_csv(out_file(out, "distributions.csv"),
                          {{"degree", &degree},
                           {"strength", &strength},
                           {"edge_weight", &weight},
                           {"word_count", &word_count},
                           {"tweet_count", &tweet_count},
                           {"tweet_size", &tweet_size}});
  const ProfileSet profiles = score_profiles(g, ProfileBins{});
  write_grids_csv(out_file(out, "grids/count_score.csv"),
                  {{"count_score", &profiles.count_score},
                   {"count_score_deviation", &profiles.count_score_deviation}});
  write_grids_csv(out_file(out, "grids/strength_degree_score.csv"),
                  {{"strength_score", &profiles.strength_score},
                   {"degree_score", &profiles.degree_score}});
  write_grids_csv(out_file(out, "grids/score_pair.csv"), {{"score_pair", &profiles.score_pair}});

  const GraphStats stats = graph_stats(g);
  std::cout << "nodes\t" << stats.nodes << "\nedges\t" << stats.edges << "\ntotal_edge_weight\t"
            << stats.total_weight << "\nassort_degree\t" << fmt_opt(stats.assort_degree)
            << "\nassort_strength\t" << fmt_opt(stats.assort_strength)
            << "\nassort_score_weighted\t" << fmt_opt(stats.assort_score_weighted)
            << "\nassort_score_unweighted\t" << fmt_opt(stats.assort_score_unweighted) << '\n';
  return 0;
}

struct NullModelArgs {
  std::string edges;
  std::string nodes;
  std::string kind;
  std::uint64_t seed = 1;
  std::uint32_t replicates = 1;
  std::string out = "out";
};

int run_nullmodel(const NullModelArgs& args) {
  const auto kind = null_model_from_name(args.kind);
  if (!kind) throw ConfigError("unknown null model: " + args.kind);
  const WeightedGraph g = read_graph_tsv(args.edges, args.nodes);
  const fs::path out = resolve_out(args.out);

  const NullModelSpec spec{*kind, args.seed, args.replicates};
  std::string rows;
  for (std::uint32_t rep = 0; rep < args.replicates; ++rep) {
    const std::uint64_t seed = replicate_seed(spec, rep);
    ConfigModelOutcome outcome;
    const WeightedGraph model = generate_replicate(g, spec, rep, &outcome);
    std::string digits = std::to_string(rep);
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    write_edges_tsv(out_file(out, "rep_" + digits + "/edges.tsv"), model);
    write_nodes_tsv(out_file(out, "rep_" + digits + "/nodes.tsv"), model);
    rows += "  {\"replicate\": " + std::to_string(rep) + ", \"seed\": " + std::to_string(seed) +
            ", \"nodes\": " + std::to_string(model.node_count()) +
            ", \"edges\": " + std::to_string(model.edge_count()) +
            ", \"total_edge_weight\": " + std::to_string(model.total_weight()) + "}";
    rows += rep + 1 < args.replicates ? ",\n" : "\n";
  }
  std::ofstream ensemble(out_file(out, "ensemble.json"), std::ios::binary);
  ensemble << "{\n  \"kind\": \"" << args.kind << "\",\n  \"rng\": \"" << Rng::kAlgorithm
           << "\",\n  \"replicates\": " << args.replicates << ",\n  \"rows\": [\n"
           << rows << "]\n}\n";
  std::cout << "replicates\t" << args.replicates << "\nwrote\t" << out.string() << '\n';
  return 0;
}

struct BackboneArgs {
  std::string edges;
  std::string nodes;
  std::string method = "disparity";
  double alpha = 0.05;
  double delta = 1.64;
  std::vector<double> sweep;
  std::string stopwords;
  std::string daily_lists;
  std::size_t top_degree = 200;
  std::string out = "out";
};

int run_backbone(const BackboneArgs& args) {
  const auto method = backbone_method_from_name(args.method);
  if (!method) throw ConfigError("backbone method must be disparity, nc or none");
  if (!args.stopwords.empty() && !args.daily_lists.empty()) {
    throw ConfigError("give either --stopwords or --daily-lists, not both");
  }
  const WeightedGraph g = read_graph_tsv(args.edges, args.nodes);
  const fs::path out = resolve_out(args.out);

  std::set<std::string> stopwords;
  if (!args.stopwords.empty()) {
    for (const auto& word : read_word_list(args.stopwords)) stopwords.insert(word);
  } else if (!args.daily_lists.empty()) {
    stopwords = derive_stopwords(read_daily_lists(args.daily_lists), g, args.top_degree).stopwords;
  }
  write_word_list(out_file(out, "stopwords.txt"), stopwords);

  const WeightedGraph hubless = remove_hubs(g, stopwords);
  BackboneResult result;
  switch (*method) {
    case BackboneMethod::disparity: result = disparity_filter(hubless, args.alpha); break;
    case BackboneMethod::noise_corrected: result = noise_corrected_filter(hubless, args.delta); break;
    case BackboneMethod::none: result = pass_through_backbone(hubless); break;
  }
  write_edges_tsv(out_file(out, "edges.tsv"), result.graph);
  write_nodes_tsv(out_file(out, "nodes.tsv"), result.graph);
  write_edge_scores_tsv(out_file(out, "edge_scores.tsv"), result);
  {
    const ProfileSet profiles = score_profiles(result.graph, ProfileBins{});
    write_grids_csv(out_file(out, "grids/count_score.csv"),
                    {{"count_score", &profiles.count_score},
                     {"count_score_deviation", &profiles.count_score_deviation}});
  }
  if (!args.sweep.empty()) {
    const SweepResult sweep = threshold_sweep(hubless, args.sweep, ProfileBins{});
    write_sweep_csv(out_file(out, "sweep.csv"), sweep);
    write_sweep_score_dists_csv(out_file(out, "sweep_score_dists.csv"), sweep);
    write_sweep_structure_dists_csv(out_file(out, "sweep_structure_dists.csv"), sweep);
    write_sweep_score_pair_csv(out_file(out, "sweep_score_pair.csv"), sweep);
  }

  std::cout << "stopwords\t" << stopwords.size() << "\npass1_removed_nodes\t"
            << g.node_count() - hubless.node_count() << "\nbackbone_nodes\t"
            << result.graph.node_count() << "\nbackbone_edges\t" << result.graph.edge_count()
            << "\nremoved_nodes\t" << result.removed_nodes << "\nremoved_edges\t"
            << result.removed_edges << '\n';
  return 0;
}

struct CommunityArgs {
  std::string edges;
  std::string nodes;
  std::string raw_nodes;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> control_seed;
  double resolution = 1.0;
  std::size_t restarts = 8;
  std::size_t floor = 15;
  std::size_t top_n = 10;
  std::size_t wordbars = 9;
  std::size_t control_replicates = 200;
  std::string out = "out";
};

int run_community(const CommunityArgs& args) {
  const WeightedGraph backbone = read_graph_tsv(args.edges, args.nodes);
  if (backbone.node_count() == 0) throw DataError("backbone graph is empty");
  const WeightedGraph raw =
      args.raw_nodes.empty() ? backbone : read_nodes_tsv(args.raw_nodes);
  const fs::path out = resolve_out(args.out);

  const Partition partition = louvain(backbone, args.seed, args.resolution, args.restarts);
  const CommunityReport report = community_report(partition, backbone, args.top_n, args.floor);
  const BaselineScores baselines = baseline_scores(raw, backbone);
  const std::uint64_t control_seed =
      args.control_seed ? *args.control_seed : derive_seed(args.seed, "control", 0);
  const CommunityControl control =
      shuffled_community_control(raw, report, control_seed, args.control_replicates);

  write_communities_tsv(out_file(out, "communities.tsv"), report);
  write_community_scores_csv(out_file(out, "community_scores.csv"), report, control, baselines);
  const std::size_t bars = std::min(args.wordbars, report.communities.size());
  for (std::size_t i = 0; i < bars; ++i) {
    write_wordbars_csv(out_file(out, "wordbars_" + report.communities[i].label + ".csv"),
                       report.communities[i], args.top_n);
  }
  std::ofstream summary(out_file(out, "community_summary.json"), std::ios::binary);
  summary << "{\n  \"modularity\": " << format_double(partition.modularity)
          << ",\n  \"seed\": " << args.seed << ",\n  \"control_seed\": " << control_seed
          << ",\n  \"resolution\": " << format_double(args.resolution)
          << ",\n  \"restarts\": " << partition.restarts
          << ",\n  \"count\": " << report.communities.size() << "\n}\n";

  std::cout << "communities\t" << report.communities.size() << "\nmodularity\t"
            << format_double(partition.modularity) << "\nmean_h_backbone\t"
            << fmt_opt(baselines.backbone) << '\n';
  return 0;
}

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool stamp = false;
};

int run_run(const RunArgs& args) {
  PipelineConfig cfg = load_pipeline_config(args.config);
  if (!args.out.empty()) cfg.output_dir = resolve_out(args.out);
  if (args.seed) cfg.seed = *args.seed;
  cfg.write_timestamp = args.stamp;
  const RunSummary summary = run_pipeline(cfg);
  std::cout << "documents\t" << summary.documents << "\nnodes\t" << summary.nodes << "\nedges\t"
            << summary.edges << "\nbackbone_nodes\t" << summary.backbone_nodes
            << "\nbackbone_edges\t" << summary.backbone_edges << "\ncommunities\t"
            << summary.community_count << "\nmean_h_raw\t" << fmt_opt(summary.mean_h_raw)
            << "\nmean_h_backbone\t" << fmt_opt(summary.mean_h_backbone)
            << "\nopposing_sentiment\t" << (summary.opposing_sentiment ? "true" : "false")
            << "\nwrote\t" << cfg.output_dir.string() << '\n';
  return 0;
}

struct CompareArgs {
  std::vector<std::string> summaries;
  std::string out;
};

int run_compare(const CompareArgs& args) {
  std::vector<fs::path> paths(args.summaries.begin(), args.summaries.end());
  const std::string table = compare_runs(paths);
  if (args.out.empty()) {
    std::cout << table;
  } else {
    const fs::path out = resolve_out(args.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream file(out, std::ios::binary);
    if (!file) throw DataError("cannot open output file: " + out.string());
    file << table;
    std::cout << "wrote\t" << out.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word co-occurrence network sentiment analysis pipeline"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "parse raw documents into a token corpus");
  ingest->add_option("--input", ingest_args.input, "corpus file")->required();
  ingest->add_option("--input-format", ingest_args.format, "jsonl or txt")
      ->check(CLI::IsMember({"jsonl", "txt"}));
  ingest->add_option("--anchors", ingest_args.anchors,
                     "anchor words/hashtags to remove (comma separated, repeatable)");
  ingest->add_option("--remove-words", ingest_args.remove_words,
                     "extra words to remove (comma separated, repeatable)");
  ingest->add_flag("--keep-hashtag-symbol", ingest_args.keep_hashtag_symbol,
                   "keep the # character instead of stripping it");
  ingest->add_option("--out", ingest_args.out, "output directory");

  GraphArgs graph_args;
  auto* graph = app.add_subcommand("graph", "build the co-occurrence network from a parsed corpus");
  graph->add_option("--corpus", graph_args.corpus, "parsed.jsonl from ingest")->required();
  graph->add_option("--lexicon", graph_args.lexicon, "happiness score TSV")->required();
  graph->add_option("--aliases", graph_args.aliases, "acronym expansion TSV");
  graph->add_flag("--require-scores", graph_args.require_scores, "drop unscored words");
  graph->add_option("--out", graph_args.out, "output directory");

  NullModelArgs null_args;
  auto* nullmodel = app.add_subcommand("nullmodel", "generate reference-model replicates");
  nullmodel->add_option("--edges", null_args.edges, "edges.tsv")->required();
  nullmodel->add_option("--nodes", null_args.nodes, "nodes.tsv")->required();
  nullmodel->add_option("--null-model", null_args.kind, "config, er, shuffle or uniform")
      ->required()
      ->check(CLI::IsMember({"config", "er", "shuffle", "uniform"}));
  nullmodel->add_option("--seed", null_args.seed, "root seed; replicate streams derive from it");
  nullmodel->add_option("--replicates", null_args.replicates, "number of replicates")
      ->check(CLI::PositiveNumber);
  nullmodel->add_option("--out", null_args.out, "output directory");

  BackboneArgs backbone_args;
  auto* backbone = app.add_subcommand("backbone", "two-pass backbone extraction");
  backbone->add_option("--edges", backbone_args.edges, "edges.tsv")->required();
  backbone->add_option("--nodes", backbone_args.nodes, "nodes.tsv")->required();
  backbone->add_option("--backbone", backbone_args.method, "disparity, nc or none")
      ->check(CLI::IsMember({"disparity", "nc", "none"}));
  backbone->add_option("--alpha", backbone_args.alpha, "disparity significance level");
  backbone->add_option("--delta", backbone_args.delta, "noise-corrected threshold");
  backbone->add_option("--sweep", backbone_args.sweep, "alphas for a threshold sweep")
      ->delimiter(',');
  backbone->add_option("--stopwords", backbone_args.stopwords, "stop-word file, one per line");
  backbone->add_option("--daily-lists", backbone_args.daily_lists,
                       "directory of daily top-word lists");
  backbone->add_option("--top-degree", backbone_args.top_degree,
                       "degree-rank cutoff for stop-word derivation");
  backbone->add_option("--out", backbone_args.out, "output directory");

  CommunityArgs community_args;
  auto* community = app.add_subcommand("community", "Louvain communities and score attribution");
  community->add_option("--edges", community_args.edges, "backbone edges.tsv")->required();
  community->add_option("--nodes", community_args.nodes, "backbone nodes.tsv")->required();
  community->add_option("--raw-nodes", community_args.raw_nodes,
                        "raw network node table for baselines and the shuffled control");
  community->add_option("--seed", community_args.seed, "Louvain seed");
  community->add_option("--control-seed", community_args.control_seed, "shuffled-control seed");
  community->add_option("--resolution", community_args.resolution, "modularity resolution");
  community->add_option("--restarts", community_args.restarts, "seeded Louvain restarts");
  community->add_option("--floor", community_args.floor, "minimum community size for reports");
  community->add_option("--top-n", community_args.top_n, "words per word-bar");
  community->add_option("--wordbars", community_args.wordbars, "number of word-bar files");
  community->add_option("--control-replicates", community_args.control_replicates,
                        "shuffled-control replicates");
  community->add_option("--out", community_args.out, "output directory");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  run->add_option("--config", run_args.config, "JSON config file")->required();
  run->add_option("--out", run_args.out, "override the output directory");
  run->add_option("--seed", run_args.seed, "override the root seed");
  run->add_flag("--stamp", run_args.stamp, "record a wall-clock timestamp in the run summary");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "side-by-side comparison of run summaries");
  compare->add_option("summaries", compare_args.summaries, "run_summary.json paths (>= 2)")
      ->required();
  compare->add_option("--out", compare_args.out, "output TSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (graph->parsed()) return run_graph(graph_args);
    if (nullmodel->parsed()) return run_nullmodel(null_args);
    if (backbone->parsed()) return run_backbone(backbone_args);
    if (community->parsed()) return run_community(community_args);
    if (run->parsed()) return run_run(run_args);
    if (compare->parsed()) return run_compare(compare_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
