#include "cooccur/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cooccur/errors.hpp"

namespace cooccur {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path.string());
  return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::uint64_t parse_u64(const std::string& field, const std::string& context) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DataError(context + ": expected an unsigned integer, got \"" + field + "\"");
  }
  return value;
}

double parse_f64(const std::string& field, const std::string& context) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DataError(context + ": expected a number, got \"" + field + "\"");
  }
  return value;
}

std::string xml_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (const char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void write_axis(std::ofstream& out, const char* tag, const AxisSpec& axis) {
  out << "# " << tag << ','
      << (axis.scale == AxisSpec::Scale::linear ? "linear" : "log10") << ','
      << format_double(axis.min) << ',' << format_double(axis.max) << ',' << axis.bins << '\n';
  out << tag << "_edges";
  for (const double e : axis.edges()) out << ',' << format_double(e);
  out << '\n';
}

void write_grid_block(std::ofstream& out, const std::string& name, const HistogramGrid& grid) {
  out << "# grid," << name << '\n';
  write_axis(out, "x", grid.x_axis());
  write_axis(out, "y", grid.y_axis());
  out << "# entries," << grid.entries() << ",skipped," << grid.skipped() << '\n';
  for (int ix = 0; ix < grid.x_axis().bins; ++ix) {
    for (int iy = 0; iy < grid.y_axis().bins; ++iy) {
      if (iy > 0) out << ',';
      out << format_double(grid.at(ix, iy));
    }
    out << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path,
                                            const std::string& format) {
  auto in = open_input(path);
  if (format == "jsonl") return read_documents_jsonl(in);
  if (format == "txt") return read_documents_txt(in);
  throw ConfigError("unknown input format: " + format);
}

void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus) {
  auto out = open_output(path);
  for (const auto& doc : corpus.documents) {
    nlohmann::ordered_json obj;
    obj["id"] = doc.id;
    obj["tokens"] = doc.tokens;
    out << obj.dump() << '\n';
  }
}

Corpus read_parsed_corpus_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("parsed corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.contains("id") || !obj.contains("tokens") || !obj["tokens"].is_array()) {
      throw DataError("parsed corpus line " + std::to_string(line_no) +
                      ": expected fields \"id\" and \"tokens\"");
    }
    ParsedDocument doc;
    doc.id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
    for (const auto& token : obj["tokens"]) {
      if (!token.is_string()) {
        throw DataError("parsed corpus line " + std::to_string(line_no) + ": non-string token");
      }
      doc.tokens.push_back(token.get<std::string>());
    }
    doc.unique_tokens = doc.tokens;
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

void write_edges_tsv(const std::filesystem::path& path, const WeightedGraph& g) {
  auto out = open_output(path);
  out << "u\tv\tweight\n";
  for (const auto& e : g.edges()) {
    out << g.word(e.u) << '\t' << g.word(e.v) << '\t' << e.weight << '\n';
  }
}

void write_nodes_tsv(const std::filesystem::path& path, const WeightedGraph& g) {
  auto out = open_output(path);
  out << "word\tN\ttweet_count\tdegree\tstrength\th\n";
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& a = g.attrs()[id];
    out << g.word(id) << '\t' << a.word_count << '\t' << a.tweet_count << '\t'
        << g.degrees()[id] << '\t' << g.strengths()[id] << '\t'
        << (a.score ? format_double(*a.score) : "") << '\n';
  }
}

void write_graphml(const std::filesystem::path& path, const WeightedGraph& g) {
  auto out = open_output(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"word\" for=\"node\" attr.name=\"word\" attr.type=\"string\"/>\n"
      << "  <key id=\"count\" for=\"node\" attr.name=\"count\" attr.type=\"long\"/>\n"
      << "  <key id=\"tweet_count\" for=\"node\" attr.name=\"tweet_count\" attr.type=\"long\"/>\n"
      << "  <key id=\"happiness\" for=\"node\" attr.name=\"happiness\" attr.type=\"double\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& a = g.attrs()[id];
    out << "    <node id=\"n" << id << "\">"
        << "<data key=\"word\">" << xml_escape(g.word(id)) << "</data>"
        << "<data key=\"count\">" << a.word_count << "</data>"
        << "<data key=\"tweet_count\">" << a.tweet_count << "</data>";
    if (a.score) out << "<data key=\"happiness\">" << format_double(*a.score) << "</data>";
    out << "</node>\n";
  }
  for (const auto& e : g.edges()) {
    out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\">"
        << "<data key=\"weight\">" << e.weight << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

namespace {

struct NodeTable {
  std::vector<std::string> words;
  std::vector<NodeAttrs> attrs;
};

NodeTable read_node_table(const std::filesystem::path& nodes_path) {
  struct Row {
    std::string word;
    NodeAttrs attrs;
  };
  std::vector<Row> rows;
  {
    auto in = open_input(nodes_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      if (line_no == 1 && line.starts_with("word\t")) continue;
      const auto fields = split_tabs(line);
      if (fields.size() != 6) {
        throw DataError(nodes_path.string() + " line " + std::to_string(line_no) +
                        ": expected 6 fields");
      }
      Row row;
      row.word = fields[0];
      const std::string ctx = nodes_path.string() + " line " + std::to_string(line_no);
      row.attrs.word_count = parse_u64(fields[1], ctx);
      row.attrs.tweet_count = parse_u64(fields[2], ctx);
      if (!fields[5].empty()) row.attrs.score = parse_f64(fields[5], ctx);
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.word < b.word; });
  NodeTable table;
  table.words.reserve(rows.size());
  for (auto& row : rows) {
    if (!table.words.empty() && table.words.back() == row.word) {
      throw DataError(nodes_path.string() + ": duplicate word " + row.word);
    }
    table.words.push_back(std::move(row.word));
    table.attrs.push_back(row.attrs);
  }
  return table;
}

}  // namespace

WeightedGraph read_nodes_tsv(const std::filesystem::path& nodes_path) {
  NodeTable table = read_node_table(nodes_path);
  return WeightedGraph(std::move(table.words), std::move(table.attrs), {});
}

WeightedGraph read_graph_tsv(const std::filesystem::path& edges_path,
                             const std::filesystem::path& nodes_path) {
  NodeTable table = read_node_table(nodes_path);
  std::vector<std::string> words = std::move(table.words);
  std::vector<NodeAttrs> attrs = std::move(table.attrs);
  std::unordered_map<std::string, NodeId> index;
  index.reserve(words.size());
  for (NodeId id = 0; id < words.size(); ++id) index.emplace(words[id], id);

  std::vector<WeightedEdge> edges;
  {
    auto in = open_input(edges_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      if (line_no == 1 && line.starts_with("u\t")) continue;
      const auto fields = split_tabs(line);
      const std::string ctx = edges_path.string() + " line " + std::to_string(line_no);
      if (fields.size() != 3) throw DataError(ctx + ": expected 3 fields");
      const auto u = index.find(fields[0]);
      const auto v = index.find(fields[1]);
      if (u == index.end() || v == index.end()) {
        throw DataError(ctx + ": edge endpoint missing from the node table");
      }
      if (u->second == v->second) throw DataError(ctx + ": self-loop");
      WeightedEdge e{u->second, v->second, parse_u64(fields[2], ctx)};
      if (e.u > e.v) std::swap(e.u, e.v);
      edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) {
      throw DataError(edges_path.string() + ": duplicate edge");
    }
  }
  return WeightedGraph(std::move(words), std::move(attrs), std::move(edges));
}

void write_edge_scores_tsv(const std::filesystem::path& path, const BackboneResult& result) {
  auto out = open_output(path);
  const char* score_name =
      result.method == BackboneMethod::noise_corrected ? "deviation" : "p_value";
  out << "u\tv\tweight\t" << score_name << '\n';
  const auto& g = result.graph;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    out << g.word(e.u) << '\t' << g.word(e.v) << '\t' << e.weight << '\t'
        << format_double(result.edge_scores[i]) << '\n';
  }
}

void write_grids_csv(const std::filesystem::path& path, const std::vector<NamedGrid>& grids) {
  auto out = open_output(path);
  bool first = true;
  for (const auto& [name, grid] : grids) {
    if (!first) out << '\n';
    first = false;
    write_grid_block(out, name, *grid);
  }
}

void write_distributions_csv(const std::filesystem::path& path,
                             const std::vector<NamedDistribution>& distributions) {
  auto out = open_output(path);
  out << "kind,value,count\n";
  for (const auto& [kind, values] : distributions) {
    for (const auto& [value, count] : *values) {
      out << kind << ',' << value << ',' << count << '\n';
    }
  }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_output(path);
  out << "alpha,nodes,edges,total_edge_weight,mean_h,scored_fraction,components,n2_over_n\n";
  for (const auto& row : sweep.rows) {
    out << format_double(row.alpha) << ',' << row.nodes << ',' << row.edges << ','
        << row.total_weight << ',' << (row.mean_h ? format_double(*row.mean_h) : "") << ','
        << format_double(row.scored_fraction) << ',' << row.components << ','
        << format_double(row.n2_over_n) << '\n';
  }
}

void write_sweep_score_dists_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_output(path);
  out << "alpha,bin_lo,bin_hi,count,weighted_count\n";
  for (const auto& detail : sweep.details) {
    const auto edges = detail.scores.axis.edges();
    for (std::size_t i = 0; i < detail.scores.counts.size(); ++i) {
      out << format_double(detail.alpha) << ',' << format_double(edges[i]) << ','
          << format_double(edges[i + 1]) << ',' << format_double(detail.scores.counts[i]) << ','
          << format_double(detail.scores.weighted_counts[i]) << '\n';
    }
  }
}

void write_sweep_structure_dists_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_output(path);
  out << "alpha,kind,value,count\n";
  for (const auto& detail : sweep.details) {
    const std::array<std::pair<const char*, const std::map<std::uint64_t, std::uint64_t>*>, 3>
        kinds{{{"degree", &detail.degree_dist},
               {"strength", &detail.strength_dist},
               {"edge_weight", &detail.weight_dist}}};
    for (const auto& [kind, dist] : kinds) {
      for (const auto& [value, count] : *dist) {
        out << format_double(detail.alpha) << ',' << kind << ',' << value << ',' << count << '\n';
      }
    }
  }
}

void write_sweep_score_pair_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_output(path);
  bool first = true;
  for (const auto& detail : sweep.details) {
    if (!first) out << '\n';
    first = false;
    write_grid_block(out, "score_pair_alpha=" + format_double(detail.alpha), detail.score_pair);
  }
}

void write_communities_tsv(const std::filesystem::path& path, const CommunityReport& report) {
  auto out = open_output(path);
  out << "word\tcommunity\tN\th\th_delta_comm\trel_freq\n";
  for (const auto& community : report.communities) {
    for (const auto& word : community.words) {
      out << word.word << '\t' << community.label << '\t' << word.count << '\t'
          << (word.h ? format_double(*word.h) : "") << '\t'
          << (word.h_delta_comm ? format_double(*word.h_delta_comm) : "") << '\t'
          << format_double(word.rel_freq_backbone) << '\n';
    }
  }
}

void write_wordbars_csv(const std::filesystem::path& path, const CommunityEntry& community,
                        std::size_t top_n) {
  auto out = open_output(path);
  out << "# community," << community.label << ",nodes," << community.nodes << ",mean_h,"
      << (community.mean_h ? format_double(*community.mean_h) : "") << '\n';
  out << "word,count,h,h_delta_comm,rel_freq\n";
  const std::size_t limit =
      top_n == 0 ? community.words.size() : std::min(top_n, community.words.size());
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& word = community.words[i];
    out << word.word << ',' << word.count << ',' << (word.h ? format_double(*word.h) : "") << ','
        << (word.h_delta_comm ? format_double(*word.h_delta_comm) : "") << ','
        << format_double(word.rel_freq_backbone) << '\n';
  }
}

void write_community_scores_csv(const std::filesystem::path& path, const CommunityReport& report,
                                const CommunityControl& control, const BaselineScores& baselines) {
  auto out = open_output(path);
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : ""; };
  out << "# baseline_backbone," << opt(baselines.backbone) << '\n';
  out << "# baseline_raw," << opt(baselines.raw) << '\n';
  out << "# baseline_raw_excl_neutral," << opt(baselines.raw_excl_neutral) << '\n';
  out << "# control_replicates," << control.replicates << '\n';
  out << "community,nodes,total_count,mean_h,shuffled_mean,shuffled_sd,shuffled_q025,"
         "shuffled_q975\n";

  // communities at or above the floor get their own row; the rest pool into
  // an "other" row
  std::size_t other_nodes = 0;
  std::uint64_t other_scored_count = 0;
  double other_sum = 0;
  std::uint64_t other_count = 0;
  for (std::size_t i = 0; i < report.communities.size(); ++i) {
    const auto& community = report.communities[i];
    if (community.nodes >= report.min_size_floor) {
      const auto& row = control.rows[i];
      out << community.label << ',' << community.nodes << ',' << community.total_count << ','
          << opt(community.mean_h) << ',' << format_double(row.mean) << ','
          << format_double(row.sd) << ',' << format_double(row.q025) << ','
          << format_double(row.q975) << '\n';
    } else {
      other_nodes += community.nodes;
      other_count += community.total_count;
      if (community.mean_h) {
        other_sum += *community.mean_h * static_cast<double>(community.scored_total_count);
        other_scored_count += community.scored_total_count;
      }
    }
  }
  if (other_nodes > 0) {
    out << "other," << other_nodes << ',' << other_count << ','
        << (other_scored_count > 0
                ? format_double(other_sum / static_cast<double>(other_scored_count))
                : "")
        << ",,,,\n";
  }
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::vector<std::vector<std::string>> read_daily_lists(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("daily-lists path is not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::vector<std::string>> lists;
  lists.reserve(files.size());
  for (const auto& file : files) lists.push_back(read_word_list(file));
  return lists;
}

void write_word_list(const std::filesystem::path& path, const std::set<std::string>& words) {
  auto out = open_output(path);
  for (const auto& word : words) out << word << '\n';
}

}  // namespace cooccur
