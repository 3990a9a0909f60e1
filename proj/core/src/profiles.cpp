#include "cooccur/profiles.hpp"

#include "cooccur/lexicon.hpp"

namespace cooccur {

ProfileSet score_profiles(const WeightedGraph& g, const ProfileBins& bins) {
  ProfileSet out{
      HistogramGrid(bins.count, bins.score),    HistogramGrid(bins.count, bins.score),
      HistogramGrid(bins.strength, bins.score), HistogramGrid(bins.degree, bins.score),
      HistogramGrid(bins.score, bins.score),
  };

  std::uint64_t scored_total_count = 0;
  for (const auto& a : g.attrs()) {
    if (a.score) scored_total_count += a.word_count;
  }

  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& a = g.attrs()[id];
    if (!a.score) {
      ++out.unscored_nodes;
      continue;
    }
    ++out.scored_nodes;
    const double n = static_cast<double>(a.word_count);
    out.count_score.add(n, *a.score);
    if (scored_total_count > 0) {
      out.count_score_deviation.add(n, *a.score,
                                    deviation_weight(*a.score, a.word_count, scored_total_count));
    }
    out.strength_score.add(static_cast<double>(g.strengths()[id]), *a.score);
    out.degree_score.add(static_cast<double>(g.degrees()[id]), *a.score);
  }

  for (const auto& e : g.edges()) {
    const auto& hu = g.attrs()[e.u].score;
    const auto& hv = g.attrs()[e.v].score;
    if (!hu || !hv) {
      ++out.skipped_edges;
      continue;
    }
    ++out.scored_edges;
    const double w = static_cast<double>(e.weight);
    out.score_pair.add(*hu, *hv, w);
    out.score_pair.add(*hv, *hu, w);
  }
  return out;
}

}  // namespace cooccur
