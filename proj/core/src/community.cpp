#include "cooccur/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "cooccur/errors.hpp"
#include "cooccur/lexicon.hpp"
#include "cooccur/rng.hpp"

namespace cooccur {

namespace {

// Aggregated working graph for one Louvain level. Self-loop weight is stored
// once; a loop contributes twice to the node strength.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_loop;
  std::vector<double> strength;
  double m2 = 0;  // total strength

  std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const WeightedGraph& g) {
  LevelGraph lg;
  lg.adj.resize(g.node_count());
  lg.self_loop.assign(g.node_count(), 0.0);
  lg.strength.assign(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    const double w = static_cast<double>(e.weight);
    lg.adj[e.u].push_back({e.v, w});
    lg.adj[e.v].push_back({e.u, w});
    lg.strength[e.u] += w;
    lg.strength[e.v] += w;
  }
  lg.m2 = std::accumulate(lg.strength.begin(), lg.strength.end(), 0.0);
  return lg;
}

// One level of greedy local moving. Returns whether any node changed
// community. Candidate communities are evaluated in the order induced by
// the seed-shuffled adjacency lists; ties keep the first best.
bool local_moving(LevelGraph& lg, std::vector<std::uint32_t>& comm, double gamma, Rng& rng) {
  const std::size_t n = lg.size();
  std::vector<double> stot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) stot[comm[i]] += lg.strength[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (auto& nbrs : lg.adj) rng.shuffle(nbrs);

  std::vector<double> weight_to(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  bool moved = true;
  int pass_guard = 0;
  while (moved && pass_guard++ < 1000) {
    moved = false;
    for (const std::uint32_t u : order) {
      const std::uint32_t c0 = comm[u];
      stot[c0] -= lg.strength[u];

      touched.clear();
      for (const auto& [v, w] : lg.adj[u]) {
        const std::uint32_t c = comm[v];
        if (weight_to[c] == 0.0) touched.push_back(c);
        weight_to[c] += w;
      }
      if (weight_to[c0] == 0.0 &&
          std::find(touched.begin(), touched.end(), c0) == touched.end()) {
        touched.push_back(c0);
      }

      const double su = lg.strength[u];
      std::uint32_t best_c = c0;
      double best_gain = weight_to[c0] - gamma * su * stot[c0] / lg.m2;
      for (const std::uint32_t c : touched) {
        if (c == c0) continue;
        const double gain = weight_to[c] - gamma * su * stot[c] / lg.m2;
        if (gain > best_gain) {
          best_gain = gain;
          best_c = c;
        }
      }

      comm[u] = best_c;
      stot[best_c] += lg.strength[u];
      for (const std::uint32_t c : touched) weight_to[c] = 0.0;
      if (best_c != c0) {
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Compact community ids in first-node order.
std::uint32_t compact_labels(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> new_id(comm.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (new_id[c] == UINT32_MAX) new_id[c] = next++;
    c = new_id[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                     std::uint32_t n_comms) {
  LevelGraph agg;
  agg.adj.resize(n_comms);
  agg.self_loop.assign(n_comms, 0.0);
  agg.strength.assign(n_comms, 0.0);
  agg.m2 = lg.m2;

  std::map<std::uint64_t, double> weights;
  for (std::size_t u = 0; u < lg.size(); ++u) {
    const std::uint32_t cu = comm[u];
    agg.self_loop[cu] += lg.self_loop[u];
    for (const auto& [v, w] : lg.adj[u]) {
      if (v < u) continue;  // each undirected pair once
      const std::uint32_t cv = comm[v];
      if (cu == cv) {
        agg.self_loop[cu] += w;
      } else {
        const std::uint64_t key = cu < cv ? (static_cast<std::uint64_t>(cu) << 32) | cv
                                          : (static_cast<std::uint64_t>(cv) << 32) | cu;
        weights[key] += w;
      }
    }
  }
  for (const auto& [key, w] : weights) {
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
    agg.adj[a].push_back({b, w});
    agg.adj[b].push_back({a, w});
    agg.strength[a] += w;
    agg.strength[b] += w;
  }
  for (std::uint32_t c = 0; c < n_comms; ++c) agg.strength[c] += 2.0 * agg.self_loop[c];
  return agg;
}

}  // namespace

double modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& assignment,
                  double resolution) {
  if (assignment.size() != g.node_count()) {
    throw std::invalid_argument("modularity: assignment size mismatch");
  }
  const double m2 = 2.0 * static_cast<double>(g.total_weight());
  if (m2 == 0) return 0.0;

  double intra = 0;
  for (const auto& e : g.edges()) {
    if (assignment[e.u] == assignment[e.v]) intra += static_cast<double>(e.weight);
  }
  std::uint32_t k = 0;
  for (const auto c : assignment) k = std::max(k, c + 1);
  std::vector<double> community_strength(k, 0.0);
  for (NodeId id = 0; id < g.node_count(); ++id) {
    community_strength[assignment[id]] += static_cast<double>(g.strengths()[id]);
  }
  double expectation = 0;
  for (const double s : community_strength) expectation += (s / m2) * (s / m2);
  return 2.0 * intra / m2 - resolution * expectation;
}

namespace {

Partition louvain_single(const WeightedGraph& g, std::uint64_t stream_seed, double resolution) {
  Partition result;
  result.seed = stream_seed;
  result.resolution = resolution;
  result.assignment.resize(g.node_count());
  std::iota(result.assignment.begin(), result.assignment.end(), 0);

  if (g.edge_count() == 0) {
    result.modularity = 0.0;
    result.level_modularity = {0.0};
  } else {
    const LevelGraph base = level_from(g);
    std::vector<std::uint32_t> assignment = result.assignment;
    std::uint64_t stream = 0;

    // Alternates node-level moving on the original graph with hierarchical
    // aggregation rounds until neither improves (multilevel refinement).
    for (;;) {
      std::vector<std::uint32_t> comm = assignment;
      compact_labels(comm);
      LevelGraph working = base;
      Rng rng = Rng::derive(stream_seed, "louvain-level", stream++);
      bool moved = local_moving(working, comm, resolution, rng);
      std::uint32_t n_comms = compact_labels(comm);
      assignment = comm;
      if (moved) result.level_modularity.push_back(modularity(g, assignment, resolution));

      // aggregation cycle on top of the refined partition
      LevelGraph lg = aggregate(base, comm, n_comms);
      std::vector<std::uint32_t> mapping = assignment;
      bool aggregated_moved = false;
      for (;;) {
        std::vector<std::uint32_t> level_comm(lg.size());
        std::iota(level_comm.begin(), level_comm.end(), 0);
        Rng level_rng = Rng::derive(stream_seed, "louvain-level", stream++);
        if (!local_moving(lg, level_comm, resolution, level_rng)) break;
        aggregated_moved = true;
        const std::uint32_t level_comms = compact_labels(level_comm);
        for (auto& m : mapping) m = level_comm[m];
        result.level_modularity.push_back(modularity(g, mapping, resolution));
        lg = aggregate(lg, level_comm, level_comms);
      }
      assignment = std::move(mapping);
      if (!moved && !aggregated_moved) break;
    }

    if (result.level_modularity.empty()) {
      result.level_modularity.push_back(modularity(g, assignment, resolution));
    }
    result.assignment = std::move(assignment);
    result.modularity = result.level_modularity.back();
  }

  std::uint32_t k = 0;
  for (const auto c : result.assignment) k = std::max(k, c + 1);
  result.communities.assign(k, {});
  for (NodeId id = 0; id < g.node_count(); ++id) {
    result.communities[result.assignment[id]].push_back(id);
  }
  return result;
}

}  // namespace

Partition louvain(const WeightedGraph& g, std::uint64_t seed, double resolution,
                  std::size_t restarts) {
  if (g.node_count() == 0) throw DataError("louvain: empty graph");
  if (!(resolution > 0)) throw ConfigError("louvain: resolution must be > 0");
  if (restarts == 0) restarts = 1;

  Partition best;
  for (std::size_t r = 0; r < restarts; ++r) {
    Partition candidate = louvain_single(g, derive_seed(seed, "louvain-restart", r), resolution);
    if (r == 0 || candidate.modularity > best.modularity) best = std::move(candidate);
  }
  best.seed = seed;
  best.restarts = restarts;
  return best;
}

std::string community_label(std::size_t rank) {
  std::string label;
  std::size_t n = rank + 1;
  while (n > 0) {
    n -= 1;
    label.push_back(static_cast<char>('A' + n % 26));
    n /= 26;
  }
  std::reverse(label.begin(), label.end());
  return label;
}

CommunityReport community_report(const Partition& partition, const WeightedGraph& g,
                                 std::size_t top_n, std::size_t min_size_floor) {
  if (partition.assignment.size() != g.node_count()) {
    throw std::invalid_argument("community_report: partition does not cover the graph");
  }
  CommunityReport report;
  report.min_size_floor = min_size_floor;
  report.top_n = top_n;
  for (const auto& a : g.attrs()) report.backbone_total_count += a.word_count;

  std::vector<std::uint32_t> ids(partition.communities.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&partition](std::uint32_t a, std::uint32_t b) {
    const auto sa = partition.communities[a].size();
    const auto sb = partition.communities[b].size();
    if (sa != sb) return sa > sb;
    return partition.communities[a].front() < partition.communities[b].front();
  });

  for (std::size_t rank = 0; rank < ids.size(); ++rank) {
    const auto& members = partition.communities[ids[rank]];
    CommunityEntry entry;
    entry.label = community_label(rank);
    entry.id = ids[rank];
    entry.nodes = members.size();

    std::size_t scored = 0;
    double score_sum = 0;
    for (const NodeId id : members) {
      const auto& a = g.attrs()[id];
      entry.total_count += a.word_count;
      if (a.score) {
        ++scored;
        entry.scored_total_count += a.word_count;
        score_sum += *a.score * static_cast<double>(a.word_count);
      }
    }
    entry.scored_fraction =
        members.empty() ? 0.0 : static_cast<double>(scored) / static_cast<double>(members.size());
    if (entry.scored_total_count > 0) {
      entry.mean_h = score_sum / static_cast<double>(entry.scored_total_count);
    }

    for (const NodeId id : members) {
      const auto& a = g.attrs()[id];
      CommunityWord word;
      word.word = g.word(id);
      word.count = a.word_count;
      word.h = a.score;
      if (a.score && entry.scored_total_count > 0) {
        word.h_delta_comm = deviation_weight(*a.score, a.word_count, entry.scored_total_count);
      }
      word.rel_freq_backbone =
          report.backbone_total_count > 0
              ? static_cast<double>(a.word_count) / static_cast<double>(report.backbone_total_count)
              : 0.0;
      entry.words.push_back(std::move(word));
    }
    std::sort(entry.words.begin(), entry.words.end(),
              [](const CommunityWord& a, const CommunityWord& b) {
                if (a.count != b.count) return a.count > b.count;
                return a.word < b.word;
              });
    report.communities.push_back(std::move(entry));
  }
  return report;
}

BaselineScores baseline_scores(const WeightedGraph& raw, const WeightedGraph& backbone) {
  BaselineScores out;
  out.backbone = weighted_mean_score(backbone).mean;
  out.raw = weighted_mean_score(raw).mean;

  double sum = 0;
  std::uint64_t total = 0;
  for (const auto& a : raw.attrs()) {
    if (!a.score) continue;
    if (*a.score > 4.0 && *a.score < 6.0) continue;
    sum += *a.score * static_cast<double>(a.word_count);
    total += a.word_count;
  }
  if (total > 0) out.raw_excl_neutral = sum / static_cast<double>(total);
  return out;
}

CommunityControl shuffled_community_control(const WeightedGraph& raw,
                                            const CommunityReport& report, std::uint64_t seed,
                                            std::size_t replicates) {
  CommunityControl control;
  control.replicates = replicates;
  control.seed = seed;

  // community members as raw-node ids
  std::vector<std::vector<std::pair<NodeId, std::uint64_t>>> members(report.communities.size());
  for (std::size_t c = 0; c < report.communities.size(); ++c) {
    for (const auto& w : report.communities[c].words) {
      if (const auto id = raw.id_of(w.word)) members[c].push_back({*id, w.count});
    }
  }

  std::vector<std::optional<double>> base_scores(raw.node_count());
  for (NodeId id = 0; id < raw.node_count(); ++id) base_scores[id] = raw.attrs()[id].score;

  std::vector<std::vector<double>> series(report.communities.size());
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng = Rng::derive(seed, "control", rep);
    std::vector<std::optional<double>> shuffled = base_scores;
    rng.shuffle(shuffled);
    for (std::size_t c = 0; c < members.size(); ++c) {
      double sum = 0;
      std::uint64_t total = 0;
      for (const auto& [id, count] : members[c]) {
        if (!shuffled[id]) continue;
        sum += *shuffled[id] * static_cast<double>(count);
        total += count;
      }
      if (total > 0) series[c].push_back(sum / static_cast<double>(total));
    }
  }

  auto quantile = [](std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
  };

  for (std::size_t c = 0; c < report.communities.size(); ++c) {
    CommunityControlRow row;
    row.label = report.communities[c].label;
    auto& values = series[c];
    if (!values.empty()) {
      const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                          static_cast<double>(values.size());
      double var = 0;
      for (const double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size());
      std::sort(values.begin(), values.end());
      row.mean = mean;
      row.sd = std::sqrt(var);
      row.q025 = quantile(values, 0.025);
      row.q975 = quantile(values, 0.975);
    } else {
      row.mean = row.sd = row.q025 = row.q975 = std::numeric_limits<double>::quiet_NaN();
    }
    control.rows.push_back(std::move(row));
  }
  return control;
}

}  // namespace cooccur
