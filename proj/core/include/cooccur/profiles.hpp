#pragma once

#include "cooccur/graph.hpp"
#include "cooccur/histogram.hpp"

namespace cooccur {

struct ProfileBins {
  AxisSpec score{1.0, 9.0, 32, AxisSpec::Scale::linear};
  AxisSpec count{1.0, 1e6, 36, AxisSpec::Scale::log10};
  AxisSpec strength{1.0, 1e6, 36, AxisSpec::Scale::log10};
  AxisSpec degree{1.0, 1e6, 36, AxisSpec::Scale::log10};
};

// Score-profile grids of a scored graph. Unscored nodes and edges with an
// unscored endpoint are skipped and counted.
struct ProfileSet {
  HistogramGrid count_score;            // word count x score, unit weights
  HistogramGrid count_score_deviation;  // same grid, h_delta weights
  HistogramGrid strength_score;
  HistogramGrid degree_score;
  HistogramGrid score_pair;  // (h_u, h_v) + (h_v, h_u), edge-weighted
  std::uint64_t scored_nodes = 0;
  std::uint64_t unscored_nodes = 0;
  std::uint64_t scored_edges = 0;
  std::uint64_t skipped_edges = 0;
};

ProfileSet score_profiles(const WeightedGraph& g, const ProfileBins& bins);

}  // namespace cooccur
