#include "cooccur/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cooccur/errors.hpp"
#include "cooccur/rng.hpp"

namespace cooccur {

std::optional<NullModelKind> null_model_from_name(std::string_view name) {
  if (name == "config") return NullModelKind::configuration;
  if (name == "er") return NullModelKind::erdos_renyi;
  if (name == "shuffle") return NullModelKind::shuffled_scores;
  if (name == "uniform") return NullModelKind::uniform_scores;
  return std::nullopt;
}

std::string_view null_model_name(NullModelKind kind) {
  switch (kind) {
    case NullModelKind::configuration: return "config";
    case NullModelKind::erdos_renyi: return "er";
    case NullModelKind::shuffled_scores: return "shuffle";
    case NullModelKind::uniform_scores: return "uniform";
  }
  return "unknown";
}

namespace {

std::vector<WeightedEdge> collect_edges(std::unordered_map<std::uint64_t, std::uint64_t>& weights) {
  std::vector<WeightedEdge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xFFFFFFFFu), w});
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return edges;
}

}  // namespace

WeightedGraph configuration_model(const WeightedGraph& g, std::uint64_t seed,
                                  ConfigModelOutcome* outcome) {
  if (g.node_count() == 0) {
    if (outcome != nullptr) *outcome = {};
    return g;
  }
  Rng rng(seed);
  ConfigModelOutcome local;

  std::vector<std::uint64_t> stubs_per_node(g.strengths().begin(), g.strengths().end());
  std::uint64_t total_stubs = 0;
  for (auto s : stubs_per_node) total_stubs += s;

  if (total_stubs % 2 != 0) {
    // Drop one stub from a uniformly chosen node that still has stubs.
    std::vector<NodeId> candidates;
    for (NodeId id = 0; id < stubs_per_node.size(); ++id) {
      if (stubs_per_node[id] > 0) candidates.push_back(id);
    }
    const NodeId victim = candidates[rng.uniform_below(candidates.size())];
    stubs_per_node[victim] -= 1;
    total_stubs -= 1;
    local.dropped_stub_word = g.word(victim);
  }

  std::vector<NodeId> stubs;
  stubs.reserve(total_stubs);
  for (NodeId id = 0; id < stubs_per_node.size(); ++id) {
    stubs.insert(stubs.end(), stubs_per_node[id], id);
  }
  rng.shuffle(stubs);

  std::unordered_map<std::uint64_t, std::uint64_t> weights;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    NodeId a = stubs[i];
    NodeId b = stubs[i + 1];
    if (a == b) {
      local.discarded_self_loop_weight += 1;
      continue;
    }
    if (a > b) std::swap(a, b);
    weights[(static_cast<std::uint64_t>(a) << 32) | b] += 1;
  }

  if (outcome != nullptr) *outcome = local;
  return WeightedGraph(g.words(), g.attrs(), collect_edges(weights));
}

WeightedGraph erdos_renyi_model(const WeightedGraph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DataError("erdos_renyi_model: need at least 2 nodes");
  Rng rng(seed);

  const std::uint64_t e_max = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const double p = static_cast<double>(g.edge_count()) / static_cast<double>(e_max);

  std::vector<std::uint64_t> weight_pool;
  weight_pool.reserve(g.edge_count());
  for (const auto& e : g.edges()) weight_pool.push_back(e.weight);
  std::sort(weight_pool.begin(), weight_pool.end());

  std::vector<WeightedEdge> edges;
  if (p > 0 && !weight_pool.empty()) {
    // row cursor over the row-major upper-triangle enumeration; pair indices
    // arrive in increasing order, so the cursor only moves forward
    std::uint64_t row_u = 0;
    std::uint64_t row_start = 0;
    std::uint64_t row_len = n - 1;
    auto emit = [&](std::uint64_t pair_index) {
      while (pair_index >= row_start + row_len) {
        row_start += row_len;
        ++row_u;
        --row_len;
      }
      const std::uint64_t v = row_u + 1 + (pair_index - row_start);
      const std::uint64_t w = weight_pool[rng.uniform_below(weight_pool.size())];
      edges.push_back({static_cast<NodeId>(row_u), static_cast<NodeId>(v), w});
    };
    if (p >= 1.0) {
      for (std::uint64_t idx = 0; idx < e_max; ++idx) emit(idx);
    } else {
      // geometric skips between successful pairs
      const double log1mp = std::log1p(-p);
      double position = -1;
      for (;;) {
        const double u01 = rng.uniform01();
        const double skip = std::floor(std::log1p(-u01) / log1mp);
        position += 1 + skip;
        if (position >= static_cast<double>(e_max)) break;
        emit(static_cast<std::uint64_t>(position));
      }
    }
  }
  return WeightedGraph(g.words(), g.attrs(), std::move(edges));
}

WeightedGraph shuffle_scores(const WeightedGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::optional<double>> scores(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) scores[id] = g.attrs()[id].score;
  rng.shuffle(scores);
  return g.with_scores(std::move(scores));
}

WeightedGraph uniform_scores(const WeightedGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::optional<double>> scores(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) scores[id] = rng.uniform_real(1.0, 9.0);
  return g.with_scores(std::move(scores));
}

WeightedGraph apply_null_model(const WeightedGraph& g, NullModelKind kind, std::uint64_t seed,
                               ConfigModelOutcome* outcome) {
  switch (kind) {
    case NullModelKind::configuration: return configuration_model(g, seed, outcome);
    case NullModelKind::erdos_renyi: return erdos_renyi_model(g, seed);
    case NullModelKind::shuffled_scores: return shuffle_scores(g, seed);
    case NullModelKind::uniform_scores: return uniform_scores(g, seed);
  }
  throw ConfigError("unknown null model kind");
}

std::uint64_t replicate_seed(const NullModelSpec& spec, std::uint32_t replicate) {
  const std::string tag = "null-" + std::string(null_model_name(spec.kind));
  return derive_seed(spec.seed, tag, replicate);
}

WeightedGraph generate_replicate(const WeightedGraph& g, const NullModelSpec& spec,
                                 std::uint32_t replicate, ConfigModelOutcome* outcome) {
  return apply_null_model(g, spec.kind, replicate_seed(spec, replicate), outcome);
}

}  // namespace cooccur
