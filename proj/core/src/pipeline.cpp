#include "cooccur/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "cooccur/errors.hpp"
#include "cooccur/io.hpp"
#include "cooccur/rng.hpp"
#include "cooccur/version.hpp"

namespace cooccur {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Records everything the run creates so a failed stage leaves no partial
// output behind.
class OutputTracker {
public:
  explicit OutputTracker(fs::path root) : root_(std::move(root)) { ensure_dir(root_); }

  fs::path file(const std::string& relative) {
    fs::path path = root_ / relative;
    if (path.has_parent_path()) ensure_dir(path.parent_path());
    files_.push_back(path);
    return path;
  }

  const fs::path& root() const { return root_; }
  void commit() { committed_ = true; }

  ~OutputTracker() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) fs::remove(*it, ec);
  }

private:
  void ensure_dir(const fs::path& dir) {
    if (dir.empty() || fs::exists(dir)) return;
    ensure_dir(dir.parent_path());
    std::error_code ec;
    if (fs::create_directory(dir, ec)) dirs_.push_back(dir);
  }

  fs::path root_;
  std::vector<fs::path> files_;
  std::vector<fs::path> dirs_;
  bool committed_ = false;
};

template <class F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw DataError(std::string(name) + ": " + e.what());
  }
}

ojson json_opt(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

ojson axis_json(const AxisSpec& axis) {
  ojson out;
  out["scale"] = axis.scale == AxisSpec::Scale::linear ? "linear" : "log10";
  out["min"] = axis.min;
  out["max"] = axis.max;
  out["bins"] = axis.bins;
  return out;
}

AxisSpec axis_from_json(const ojson& obj, const AxisSpec& defaults) {
  AxisSpec axis = defaults;
  if (obj.contains("scale")) {
    const std::string scale = obj.at("scale").get<std::string>();
    if (scale == "linear") {
      axis.scale = AxisSpec::Scale::linear;
    } else if (scale == "log10") {
      axis.scale = AxisSpec::Scale::log10;
    } else {
      throw ConfigError("histogram axis scale must be linear or log10");
    }
  }
  if (obj.contains("min")) axis.min = obj.at("min").get<double>();
  if (obj.contains("max")) axis.max = obj.at("max").get<double>();
  if (obj.contains("bins")) axis.bins = obj.at("bins").get<int>();
  return axis;
}

void reject_unknown_keys(const ojson& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key \"" + key + "\" in " + where);
    }
  }
}

void write_json_file(const fs::path& path, const ojson& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path.string());
  out << value.dump(2) << '\n';
}

std::map<std::uint64_t, std::uint64_t> word_count_distribution(const WeightedGraph& g) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (const auto& a : g.attrs()) dist[a.word_count] += 1;
  return dist;
}

std::map<std::uint64_t, std::uint64_t> tweet_count_distribution(const WeightedGraph& g) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (const auto& a : g.attrs()) dist[a.tweet_count] += 1;
  return dist;
}

std::map<std::uint64_t, std::uint64_t> tweet_size_distribution(const Corpus& corpus) {
  std::map<std::uint64_t, std::uint64_t> dist;
  for (const auto& doc : corpus.documents) dist[doc.unique_tokens.size()] += 1;
  return dist;
}

void write_profile_grids(OutputTracker& out, const std::string& prefix, const ProfileSet& profiles) {
  write_grids_csv(out.file(prefix + "/count_score.csv"),
                  {{"count_score", &profiles.count_score},
                   {"count_score_deviation", &profiles.count_score_deviation}});
  write_grids_csv(out.file(prefix + "/strength_degree_score.csv"),
                  {{"strength_score", &profiles.strength_score},
                   {"degree_score", &profiles.degree_score}});
  write_grids_csv(out.file(prefix + "/score_pair.csv"), {{"score_pair", &profiles.score_pair}});
}

std::string replicate_dir(std::uint32_t replicate) {
  std::string digits = std::to_string(replicate);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return "rep_" + digits;
}

}  // namespace

void PipelineConfig::validate() const {
  if (corpus_path.empty()) throw ConfigError("corpus path is required");
  if (!fs::exists(corpus_path)) throw ConfigError("corpus file not found: " + corpus_path.string());
  if (lexicon_path.empty()) throw ConfigError("lexicon path is required");
  if (!fs::exists(lexicon_path)) {
    throw ConfigError("lexicon file not found: " + lexicon_path.string());
  }
  if (aliases_path && !fs::exists(*aliases_path)) {
    throw ConfigError("alias file not found: " + aliases_path->string());
  }
  if (stopwords_path && !fs::exists(*stopwords_path)) {
    throw ConfigError("stopword file not found: " + stopwords_path->string());
  }
  if (daily_lists_dir && !fs::is_directory(*daily_lists_dir)) {
    throw ConfigError("daily-lists directory not found: " + daily_lists_dir->string());
  }
  if (stopwords_path && daily_lists_dir) {
    throw ConfigError("give either a stopword file or a daily-lists directory, not both");
  }
  if (input_format != "jsonl" && input_format != "txt") {
    throw ConfigError("input format must be jsonl or txt");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in (0, 1]");
  if (nc_delta < 0) throw ConfigError("delta must be >= 0");
  for (const double a : sweep) {
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("sweep alphas must be in (0, 1]");
  }
  if (!null_models.empty() && null_replicates == 0) {
    throw ConfigError("null model replicates must be >= 1");
  }
  if (!(resolution > 0)) throw ConfigError("resolution must be > 0");
  if (output_dir.empty()) throw ConfigError("output directory is required");
  bins.score.validate();
  bins.count.validate();
  bins.strength.validate();
  bins.degree.validate();
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  ojson cfg_json;
  try {
    cfg_json = ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }

  reject_unknown_keys(cfg_json,
                      {"input", "parser", "scores", "backbone", "null_models", "community",
                       "stopword_top_degree", "seed", "histograms", "output"},
                      "config root");

  PipelineConfig cfg;
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  auto resolve = [&base](const std::string& p) {
    const fs::path rel(p);
    return rel.is_absolute() ? rel : base / rel;
  };

  if (!cfg_json.contains("input") || !cfg_json["input"].is_object()) {
    throw ConfigError("config requires an \"input\" section");
  }
  const auto& input = cfg_json["input"];
  reject_unknown_keys(input, {"corpus", "format", "lexicon", "aliases", "stopwords", "daily_lists"},
                      "input");
  if (!input.contains("corpus") || !input.contains("lexicon")) {
    throw ConfigError("input.corpus and input.lexicon are required");
  }
  cfg.corpus_path = resolve(input["corpus"].get<std::string>());
  cfg.lexicon_path = resolve(input["lexicon"].get<std::string>());
  if (input.contains("format")) cfg.input_format = input["format"].get<std::string>();
  if (input.contains("aliases") && !input["aliases"].is_null()) {
    cfg.aliases_path = resolve(input["aliases"].get<std::string>());
  }
  if (input.contains("stopwords") && !input["stopwords"].is_null()) {
    cfg.stopwords_path = resolve(input["stopwords"].get<std::string>());
  }
  if (input.contains("daily_lists") && !input["daily_lists"].is_null()) {
    cfg.daily_lists_dir = resolve(input["daily_lists"].get<std::string>());
  }

  if (cfg_json.contains("parser")) {
    const auto& parser = cfg_json["parser"];
    reject_unknown_keys(parser, {"anchors", "remove_words", "strip_hashtag_symbol"}, "parser");
    if (parser.contains("anchors")) {
      for (const auto& a : parser["anchors"]) {
        cfg.parser.anchors_to_remove.insert(a.get<std::string>());
      }
    }
    if (parser.contains("remove_words")) {
      for (const auto& w : parser["remove_words"]) {
        cfg.parser.extra_removals.insert(w.get<std::string>());
      }
    }
    if (parser.contains("strip_hashtag_symbol")) {
      cfg.parser.strip_hashtag_symbol = parser["strip_hashtag_symbol"].get<bool>();
    }
  }

  if (cfg_json.contains("scores")) {
    reject_unknown_keys(cfg_json["scores"], {"require_scores"}, "scores");
    if (cfg_json["scores"].contains("require_scores")) {
      cfg.require_scores = cfg_json["scores"]["require_scores"].get<bool>();
    }
  }

  if (cfg_json.contains("backbone")) {
    const auto& backbone = cfg_json["backbone"];
    reject_unknown_keys(backbone, {"method", "alpha", "delta", "sweep"}, "backbone");
    if (backbone.contains("method")) {
      const auto method = backbone_method_from_name(backbone["method"].get<std::string>());
      if (!method) throw ConfigError("backbone method must be disparity, nc or none");
      cfg.backbone_method = *method;
    }
    if (backbone.contains("alpha")) cfg.alpha = backbone["alpha"].get<double>();
    if (backbone.contains("delta")) cfg.nc_delta = backbone["delta"].get<double>();
    if (backbone.contains("sweep")) {
      for (const auto& a : backbone["sweep"]) cfg.sweep.push_back(a.get<double>());
    }
  }

  if (cfg_json.contains("null_models")) {
    const auto& nulls = cfg_json["null_models"];
    reject_unknown_keys(nulls, {"kinds", "replicates"}, "null_models");
    if (nulls.contains("kinds")) {
      for (const auto& kind : nulls["kinds"]) {
        const auto parsed = null_model_from_name(kind.get<std::string>());
        if (!parsed) throw ConfigError("unknown null model: " + kind.get<std::string>());
        cfg.null_models.push_back(*parsed);
      }
    }
    if (nulls.contains("replicates")) cfg.null_replicates = nulls["replicates"].get<std::uint32_t>();
  }

  if (cfg_json.contains("community")) {
    const auto& community = cfg_json["community"];
    reject_unknown_keys(community,
                        {"resolution", "restarts", "floor", "top_n", "wordbar_communities",
                         "control_replicates"},
                        "community");
    if (community.contains("resolution")) cfg.resolution = community["resolution"].get<double>();
    if (community.contains("restarts")) {
      cfg.louvain_restarts = community["restarts"].get<std::size_t>();
    }
    if (community.contains("floor")) cfg.community_floor = community["floor"].get<std::size_t>();
    if (community.contains("top_n")) cfg.top_n = community["top_n"].get<std::size_t>();
    if (community.contains("wordbar_communities")) {
      cfg.wordbar_communities = community["wordbar_communities"].get<std::size_t>();
    }
    if (community.contains("control_replicates")) {
      cfg.control_replicates = community["control_replicates"].get<std::size_t>();
    }
  }

  if (cfg_json.contains("stopword_top_degree")) {
    cfg.stopword_top_degree = cfg_json["stopword_top_degree"].get<std::size_t>();
  }
  if (cfg_json.contains("seed")) cfg.seed = cfg_json["seed"].get<std::uint64_t>();

  if (cfg_json.contains("histograms")) {
    const auto& hist = cfg_json["histograms"];
    reject_unknown_keys(hist, {"score", "count", "strength", "degree"}, "histograms");
    if (hist.contains("score")) cfg.bins.score = axis_from_json(hist["score"], cfg.bins.score);
    if (hist.contains("count")) cfg.bins.count = axis_from_json(hist["count"], cfg.bins.count);
    if (hist.contains("strength")) {
      cfg.bins.strength = axis_from_json(hist["strength"], cfg.bins.strength);
    }
    if (hist.contains("degree")) cfg.bins.degree = axis_from_json(hist["degree"], cfg.bins.degree);
  }

  if (cfg_json.contains("output")) cfg.output_dir = cfg_json["output"].get<std::string>();
  if (const char* root = std::getenv("COOCCUR_OUT_ROOT"); root != nullptr && *root != '\0') {
    if (cfg.output_dir.is_relative()) cfg.output_dir = fs::path(root) / cfg.output_dir;
  }
  return cfg;
}

RunSummary run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  OutputTracker out(cfg.output_dir);
  RunSummary summary;
  ojson manifest;

  // --- ingest ---------------------------------------------------------
  const Corpus corpus = stage("ingest", [&] {
    const auto docs = read_raw_documents(cfg.corpus_path, cfg.input_format);
    Corpus parsed = parse_corpus(docs, cfg.parser);
    write_corpus_jsonl(out.file("corpus/parsed.jsonl"), parsed);
    return parsed;
  });
  summary.documents = corpus.documents.size();
  summary.total_tokens = corpus.total_tokens;

  // --- lexicon --------------------------------------------------------
  LexiconLoadStats lexicon_stats;
  const Lexicon lexicon = stage("lexicon", [&] {
    return load_lexicon_files(cfg.lexicon_path, cfg.aliases_path, &lexicon_stats);
  });

  // --- graph ----------------------------------------------------------
  const WeightedGraph raw = stage("graph", [&] {
    WeightedGraph g = apply_scores(build_graph(corpus), lexicon);
    if (cfg.require_scores) g = drop_unscored(g);
    write_edges_tsv(out.file("graph/edges.tsv"), g);
    write_nodes_tsv(out.file("graph/nodes.tsv"), g);
    write_graphml(out.file("graph/graph.graphml"), g);

    const auto degree = degree_distribution(g);
    const auto strength = strength_distribution(g);
    const auto weight = edge_weight_distribution(g);
    const auto word_count = word_count_distribution(g);
    const auto tweet_count = tweet_count_distribution(g);
    const auto tweet_size = tweet_size_distribution(corpus);
    write_distributions_csv(out.file("graph/distributions.csv"),
                            {{"degree", &degree},
                             {"strength", &strength},
                             {"edge_weight", &weight},
                             {"word_count", &word_count},
                             {"tweet_count", &tweet_count},
                             {"tweet_size", &tweet_size}});
    write_profile_grids(out, "graph/grids", score_profiles(g, cfg.bins));
    return g;
  });
  {
    const GraphStats stats = graph_stats(raw);
    summary.nodes = stats.nodes;
    summary.edges = stats.edges;
    summary.total_edge_weight = stats.total_weight;
    summary.component_sizes = stats.component_sizes;
    summary.assort_degree = stats.assort_degree;
    summary.assort_strength = stats.assort_strength;
    summary.assort_score_weighted = stats.assort_score_weighted;
    summary.assort_score_unweighted = stats.assort_score_unweighted;
    const MeanScore mean = weighted_mean_score(raw);
    summary.mean_h_raw = mean.mean;
    summary.scored_fraction = mean.scored_fraction;
  }
  manifest["fig1"] = "graph/distributions.csv";
  manifest["fig2"] = "graph/grids/count_score.csv";
  manifest["fig3"] = "graph/grids/strength_degree_score.csv";
  manifest["fig4"] = "graph/grids/score_pair.csv";

  // --- null models ------------------------------------------------------
  ojson null_seeds = ojson::object();
  stage("nullmodel", [&] {
    for (const NullModelKind kind : cfg.null_models) {
      const std::string name(null_model_name(kind));
      const NullModelSpec spec{kind, cfg.seed, cfg.null_replicates};
      ojson rows = ojson::array();
      for (std::uint32_t rep = 0; rep < cfg.null_replicates; ++rep) {
        const std::uint64_t seed = replicate_seed(spec, rep);
        ConfigModelOutcome outcome;
        const WeightedGraph model = generate_replicate(raw, spec, rep, &outcome);
        const std::string rep_dir = "nullmodels/" + name + "/" + replicate_dir(rep);
        write_edges_tsv(out.file(rep_dir + "/edges.tsv"), model);
        write_nodes_tsv(out.file(rep_dir + "/nodes.tsv"), model);
        if (rep == 0) {
          write_profile_grids(out, "nullmodels/" + name + "/grids", score_profiles(model, cfg.bins));
        }
        ojson row;
        row["replicate"] = rep;
        row["seed"] = seed;
        row["nodes"] = model.node_count();
        row["edges"] = model.edge_count();
        row["total_edge_weight"] = model.total_weight();
        if (outcome.dropped_stub_word) row["dropped_stub_word"] = *outcome.dropped_stub_word;
        if (kind == NullModelKind::configuration) {
          row["discarded_self_loop_weight"] = outcome.discarded_self_loop_weight;
        }
        rows.push_back(std::move(row));
      }
      ojson ensemble;
      ensemble["kind"] = name;
      ensemble["rng"] = std::string(Rng::kAlgorithm);
      ensemble["replicates"] = cfg.null_replicates;
      ensemble["rows"] = std::move(rows);
      write_json_file(out.file("nullmodels/" + name + "/ensemble.json"), ensemble);
      null_seeds[name] = replicate_seed(spec, 0);
    }
    return 0;
  });
  {
    const std::vector<std::pair<const char*, NullModelKind>> figure_order = {
        {"1", NullModelKind::configuration},
        {"2", NullModelKind::erdos_renyi},
        {"3", NullModelKind::shuffled_scores},
        {"4", NullModelKind::uniform_scores},
    };
    for (std::size_t i = 0; i < figure_order.size(); ++i) {
      const auto [suffix, kind] = figure_order[i];
      if (std::find(cfg.null_models.begin(), cfg.null_models.end(), kind) ==
          cfg.null_models.end()) {
        continue;
      }
      const std::string name(null_model_name(kind));
      manifest["s" + std::to_string(i + 1)] = "nullmodels/" + name + "/grids/count_score.csv";
      manifest["s" + std::to_string(i + 5)] =
          "nullmodels/" + name + "/grids/strength_degree_score.csv";
      manifest["s" + std::to_string(i + 9)] = "nullmodels/" + name + "/grids/score_pair.csv";
    }
  }

  // --- backbone ---------------------------------------------------------
  const BackboneResult backbone = stage("backbone", [&] {
    std::set<std::string> stopwords;
    if (cfg.stopwords_path) {
      for (const auto& word : read_word_list(*cfg.stopwords_path)) stopwords.insert(word);
    } else if (cfg.daily_lists_dir) {
      const auto lists = read_daily_lists(*cfg.daily_lists_dir);
      stopwords = derive_stopwords(lists, raw, cfg.stopword_top_degree).stopwords;
    }
    write_word_list(out.file("backbone/stopwords.txt"), stopwords);
    summary.stopword_count = stopwords.size();

    const WeightedGraph hubless = remove_hubs(raw, stopwords);
    summary.pass1_removed_nodes = raw.node_count() - hubless.node_count();

    BackboneResult result;
    switch (cfg.backbone_method) {
      case BackboneMethod::disparity: result = disparity_filter(hubless, cfg.alpha); break;
      case BackboneMethod::noise_corrected:
        result = noise_corrected_filter(hubless, cfg.nc_delta);
        break;
      case BackboneMethod::none: result = pass_through_backbone(hubless); break;
    }
    write_edges_tsv(out.file("backbone/edges.tsv"), result.graph);
    write_nodes_tsv(out.file("backbone/nodes.tsv"), result.graph);
    write_edge_scores_tsv(out.file("backbone/edge_scores.tsv"), result);
    {
      const ProfileSet profiles = score_profiles(result.graph, cfg.bins);
      write_grids_csv(out.file("backbone/grids/count_score.csv"),
                      {{"count_score", &profiles.count_score},
                       {"count_score_deviation", &profiles.count_score_deviation}});
    }

    if (!cfg.sweep.empty()) {
      const SweepResult sweep = threshold_sweep(hubless, cfg.sweep, cfg.bins);
      write_sweep_csv(out.file("backbone/sweep.csv"), sweep);
      write_sweep_score_dists_csv(out.file("backbone/sweep_score_dists.csv"), sweep);
      write_sweep_structure_dists_csv(out.file("backbone/sweep_structure_dists.csv"), sweep);
      write_sweep_score_pair_csv(out.file("backbone/sweep_score_pair.csv"), sweep);
    }
    return result;
  });
  summary.backbone_method = backbone_method_name(backbone.method);
  summary.backbone_threshold = backbone.threshold;
  summary.backbone_nodes = backbone.graph.node_count();
  summary.backbone_edges = backbone.graph.edge_count();
  summary.backbone_total_weight = backbone.graph.total_weight();
  summary.backbone_removed_nodes = backbone.removed_nodes;
  summary.backbone_removed_edges = backbone.removed_edges;
  {
    const MeanScore mean = weighted_mean_score(backbone.graph);
    summary.mean_h_backbone = mean.mean;
    summary.backbone_scored_fraction = mean.scored_fraction;
  }
  manifest["fig5"] = "backbone/grids/count_score.csv";
  if (!cfg.sweep.empty()) {
    manifest["s13"] = "backbone/sweep.csv";
    manifest["s14"] = "backbone/sweep.csv";
    manifest["s15"] = "backbone/sweep_score_dists.csv";
    manifest["s16"] = "backbone/sweep_structure_dists.csv";
    manifest["s17"] = "backbone/sweep_score_pair.csv";
  }

  // --- community --------------------------------------------------------
  const std::uint64_t louvain_seed = derive_seed(cfg.seed, "louvain", 0);
  const std::uint64_t control_seed = derive_seed(cfg.seed, "control", 0);
  if (backbone.graph.node_count() > 0) {
    stage("community", [&] {
      const Partition partition =
          louvain(backbone.graph, louvain_seed, cfg.resolution, cfg.louvain_restarts);
      const CommunityReport report =
          community_report(partition, backbone.graph, cfg.top_n, cfg.community_floor);
      const BaselineScores baselines = baseline_scores(raw, backbone.graph);
      const CommunityControl control = shuffled_community_control(
          raw, report, control_seed, cfg.control_replicates);

      write_communities_tsv(out.file("community/communities.tsv"), report);
      write_community_scores_csv(out.file("community/community_scores.csv"), report, control,
                                 baselines);
      const std::size_t bars = std::min(cfg.wordbar_communities, report.communities.size());
      for (std::size_t i = 0; i < bars; ++i) {
        write_wordbars_csv(out.file("community/wordbars_" + report.communities[i].label + ".csv"),
                           report.communities[i], cfg.top_n);
      }

      summary.community_count = report.communities.size();
      summary.modularity = partition.modularity;
      summary.baselines = baselines;
      bool any_positive = false;
      bool any_negative = false;
      for (const auto& community : report.communities) {
        summary.communities.push_back({community.label, community.nodes, community.total_count,
                                       community.mean_h, community.scored_fraction});
        if (community.nodes < cfg.community_floor || !community.mean_h) continue;
        if (*community.mean_h > 5.0) any_positive = true;
        if (*community.mean_h < 5.0) any_negative = true;
        if (!summary.community_mean_min || *community.mean_h < *summary.community_mean_min) {
          summary.community_mean_min = community.mean_h;
        }
        if (!summary.community_mean_max || *community.mean_h > *summary.community_mean_max) {
          summary.community_mean_max = community.mean_h;
        }
      }
      summary.opposing_sentiment = any_positive && any_negative;

      ojson community_summary;
      community_summary["modularity"] = partition.modularity;
      community_summary["level_modularity"] = partition.level_modularity;
      community_summary["seed"] = louvain_seed;
      community_summary["resolution"] = cfg.resolution;
      community_summary["restarts"] = partition.restarts;
      community_summary["count"] = report.communities.size();
      community_summary["floor"] = cfg.community_floor;
      community_summary["control_replicates"] = cfg.control_replicates;
      community_summary["control_seed"] = control_seed;
      ojson rows = ojson::array();
      for (const auto& community : report.communities) {
        ojson row;
        row["label"] = community.label;
        row["nodes"] = community.nodes;
        row["total_count"] = community.total_count;
        row["mean_h"] = json_opt(community.mean_h);
        row["scored_fraction"] = community.scored_fraction;
        rows.push_back(std::move(row));
      }
      community_summary["communities"] = std::move(rows);
      write_json_file(out.file("community/community_summary.json"), community_summary);
      return 0;
    });
    manifest["fig6"] = "community/communities.tsv";
    manifest["fig7"] = "community/communities.tsv";
    manifest["fig8"] = "community/communities.tsv";
    manifest["fig9"] = "community/community_scores.csv";
  }

  // --- summary + manifest -------------------------------------------------
  stage("summary", [&] {
    ojson doc;
    doc["tool"] = {{"name", kToolName}, {"version", kVersion}, {"rng", std::string(Rng::kAlgorithm)}};
    doc["seeds"] = {{"root", cfg.seed},
                    {"expansion", "splitmix64(root) xor fnv1a(stage), then * golden + index"},
                    {"louvain", louvain_seed},
                    {"control", control_seed},
                    {"null_models", null_seeds}};
    ojson input;
    input["corpus"] = cfg.corpus_path.string();
    input["format"] = cfg.input_format;
    input["lexicon"] = cfg.lexicon_path.string();
    input["aliases"] = cfg.aliases_path ? ojson(cfg.aliases_path->string()) : ojson(nullptr);
    input["stopwords"] = cfg.stopwords_path ? ojson(cfg.stopwords_path->string()) : ojson(nullptr);
    input["daily_lists"] =
        cfg.daily_lists_dir ? ojson(cfg.daily_lists_dir->string()) : ojson(nullptr);
    doc["input"] = std::move(input);
    doc["parser"] = {{"anchors", cfg.parser.anchors_to_remove},
                     {"remove_words", cfg.parser.extra_removals},
                     {"strip_hashtag_symbol", cfg.parser.strip_hashtag_symbol},
                     {"require_scores", cfg.require_scores}};
    doc["corpus"] = {{"documents", summary.documents},
                     {"total_tokens", summary.total_tokens},
                     {"distinct_words", corpus.word_counts.size()}};
    doc["lexicon"] = {{"score_rows", lexicon_stats.score_rows},
                      {"alias_rows", lexicon_stats.alias_rows},
                      {"rejected_rows", lexicon_stats.rejected_rows},
                      {"duplicate_rows", lexicon_stats.duplicate_rows}};
    doc["graph"] = {{"nodes", summary.nodes},
                    {"edges", summary.edges},
                    {"total_edge_weight", summary.total_edge_weight},
                    {"component_sizes", summary.component_sizes},
                    {"scored_fraction", summary.scored_fraction},
                    {"mean_h", json_opt(summary.mean_h_raw)},
                    {"assortativity",
                     {{"strength", json_opt(summary.assort_strength)},
                      {"degree", json_opt(summary.assort_degree)},
                      {"score_weighted", json_opt(summary.assort_score_weighted)},
                      {"score_unweighted", json_opt(summary.assort_score_unweighted)}}}};
    ojson null_kinds = ojson::array();
    for (const auto kind : cfg.null_models) null_kinds.push_back(std::string(null_model_name(kind)));
    doc["null_models"] = {{"kinds", std::move(null_kinds)}, {"replicates", cfg.null_replicates}};
    doc["backbone"] = {{"method", summary.backbone_method},
                       {"threshold", summary.backbone_threshold},
                       {"stopword_count", summary.stopword_count},
                       {"pass1_removed_nodes", summary.pass1_removed_nodes},
                       {"nodes", summary.backbone_nodes},
                       {"edges", summary.backbone_edges},
                       {"total_edge_weight", summary.backbone_total_weight},
                       {"removed_nodes", summary.backbone_removed_nodes},
                       {"removed_edges", summary.backbone_removed_edges},
                       {"mean_h", json_opt(summary.mean_h_backbone)},
                       {"scored_fraction", summary.backbone_scored_fraction},
                       {"sweep_alphas", cfg.sweep}};
    ojson communities = ojson::array();
    for (const auto& row : summary.communities) {
      communities.push_back({{"label", row.label},
                             {"nodes", row.nodes},
                             {"total_count", row.total_count},
                             {"mean_h", json_opt(row.mean_h)},
                             {"scored_fraction", row.scored_fraction}});
    }
    doc["community"] = {{"count", summary.community_count},
                        {"modularity", summary.modularity},
                        {"floor", cfg.community_floor},
                        {"opposing_sentiment", summary.opposing_sentiment},
                        {"mean_min", json_opt(summary.community_mean_min)},
                        {"mean_max", json_opt(summary.community_mean_max)},
                        {"communities", std::move(communities)}};
    doc["baselines"] = {{"backbone", json_opt(summary.baselines.backbone)},
                        {"raw", json_opt(summary.baselines.raw)},
                        {"raw_excl_neutral", json_opt(summary.baselines.raw_excl_neutral)}};
    doc["histograms"] = {{"score", axis_json(cfg.bins.score)},
                         {"count", axis_json(cfg.bins.count)},
                         {"strength", axis_json(cfg.bins.strength)},
                         {"degree", axis_json(cfg.bins.degree)}};
    if (cfg.write_timestamp) {
      doc["timestamp"] =
          std::chrono::duration_cast<std::chrono::seconds>(
              std::chrono::system_clock::now().time_since_epoch())
              .count();
    }
    write_json_file(out.file("run_summary.json"), doc);
    write_json_file(out.file("manifest.json"), ojson{{"figures", manifest}});
    return 0;
  });

  out.commit();
  return summary;
}

std::string compare_runs(const std::vector<fs::path>& summary_paths) {
  if (summary_paths.size() < 2) {
    throw ConfigError("compare needs at least 2 run summaries");
  }
  std::vector<ojson> runs;
  for (const auto& path : summary_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open run summary: " + path.string());
    try {
      runs.push_back(ojson::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("run summary " + path.string() + ": " + e.what());
    }
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value("histograms", ojson()) != runs[0].value("histograms", ojson())) {
      throw DataError("incompatible histogram bin specs between runs");
    }
  }

  auto cell = [](const ojson& run, std::initializer_list<const char*> keys) -> std::string {
    const ojson* node = &run;
    for (const char* key : keys) {
      if (!node->is_object() || !node->contains(key)) return "";
      node = &(*node)[key];
    }
    if (node->is_null()) return "";
    if (node->is_string()) return node->get<std::string>();
    if (node->is_boolean()) return node->get<bool>() ? "true" : "false";
    if (node->is_number_float()) return format_double(node->get<double>());
    return node->dump();
  };

  std::string table = "metric";
  for (const auto& run : runs) {
    table += '\t';
    table += cell(run, {"input", "corpus"});
  }
  table += '\n';
  const std::vector<std::pair<std::string, std::initializer_list<const char*>>> metrics = {
      {"documents", {"corpus", "documents"}},
      {"nodes", {"graph", "nodes"}},
      {"edges", {"graph", "edges"}},
      {"total_edge_weight", {"graph", "total_edge_weight"}},
      {"scored_fraction", {"graph", "scored_fraction"}},
      {"mean_h_raw", {"graph", "mean_h"}},
      {"mean_h_backbone", {"backbone", "mean_h"}},
      {"baseline_raw_excl_neutral", {"baselines", "raw_excl_neutral"}},
      {"backbone_nodes", {"backbone", "nodes"}},
      {"backbone_edges", {"backbone", "edges"}},
      {"communities", {"community", "count"}},
      {"modularity", {"community", "modularity"}},
      {"community_mean_min", {"community", "mean_min"}},
      {"community_mean_max", {"community", "mean_max"}},
      {"opposing_sentiment", {"community", "opposing_sentiment"}},
  };
  for (const auto& [name, keys] : metrics) {
    table += name;
    for (const auto& run : runs) {
      table += '\t';
      table += cell(run, keys);
    }
    table += '\n';
  }
  return table;
}

}  // namespace cooccur
