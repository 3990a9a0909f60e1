#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cooccur/graph.hpp"

namespace cooccur {

enum class NullModelKind { configuration, erdos_renyi, shuffled_scores, uniform_scores };

// CLI names: config, er, shuffle, uniform.
std::optional<NullModelKind> null_model_from_name(std::string_view name);
std::string_view null_model_name(NullModelKind kind);

struct NullModelSpec {
  NullModelKind kind = NullModelKind::configuration;
  std::uint64_t seed = 0;  // root seed; replicate streams derive from it
  std::uint32_t replicates = 1;
};

// Stream seed for one replicate: derive(seed, "null-<kind>", replicate).
std::uint64_t replicate_seed(const NullModelSpec& spec, std::uint32_t replicate);

struct ConfigModelOutcome {
  std::optional<std::string> dropped_stub_word;  // set when the stub count was odd
  std::uint64_t discarded_self_loop_weight = 0;
};

// Strength-sequence stub matching: self-loops are discarded, parallel stubs
// merge into weighted edges, node attributes carry over.
WeightedGraph configuration_model(const WeightedGraph& g, std::uint64_t seed,
                                  ConfigModelOutcome* outcome = nullptr);

// G(n, p) with p = E_obs / E_max; weights resampled with replacement from
// the observed weight multiset. Requires >= 2 nodes.
WeightedGraph erdos_renyi_model(const WeightedGraph& g, std::uint64_t seed);

// Edge structure untouched; the score column (missing markers included) is
// permuted uniformly over nodes.
WeightedGraph shuffle_scores(const WeightedGraph& g, std::uint64_t seed);

// Edge structure untouched; every node's score drawn uniformly from [1, 9].
WeightedGraph uniform_scores(const WeightedGraph& g, std::uint64_t seed);

WeightedGraph apply_null_model(const WeightedGraph& g, NullModelKind kind, std::uint64_t seed,
                               ConfigModelOutcome* outcome = nullptr);

// One replicate of the ensemble described by spec.
WeightedGraph generate_replicate(const WeightedGraph& g, const NullModelSpec& spec,
                                 std::uint32_t replicate, ConfigModelOutcome* outcome = nullptr);

}  // namespace cooccur
