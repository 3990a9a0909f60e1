#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include "cooccur/graph.hpp"
#include "cooccur/io.hpp"
#include "cooccur/profiles.hpp"
#include "cooccur/rng.hpp"

#include "helpers/fixtures.hpp"
#include "helpers/oracles.hpp"

using namespace cooccur;

namespace {

std::uint64_t weight_of(const WeightedGraph& g, const std::string& a, const std::string& b) {
  const auto u = g.id_of(a);
  const auto v = g.id_of(b);
  REQUIRE(u.has_value());
  REQUIRE(v.has_value());
  return g.weight_between(*u, *v);
}

std::map<std::pair<std::string, std::string>, std::uint64_t> edge_map(const WeightedGraph& g) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  for (const auto& e : g.edges()) out[{g.word(e.u), g.word(e.v)}] = e.weight;
  return out;
}

}  // namespace

TEST_CASE("two-document example graph") {
  const auto corpus = fixtures::corpus_from_tokens({{"a", "b", "c"}, {"b", "c", "d"}});
  const WeightedGraph g = build_graph(corpus);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 5);
  CHECK(weight_of(g, "a", "b") == 1);
  CHECK(weight_of(g, "a", "c") == 1);
  CHECK(weight_of(g, "b", "c") == 2);
  CHECK(weight_of(g, "b", "d") == 1);
  CHECK(weight_of(g, "c", "d") == 1);
  CHECK(weight_of(g, "a", "d") == 0);

  const auto s = [&g](const std::string& w) { return g.strengths()[*g.id_of(w)]; };
  const auto k = [&g](const std::string& w) { return g.degrees()[*g.id_of(w)]; };
  CHECK(s("a") == 2);
  CHECK(s("b") == 4);
  CHECK(s("c") == 4);
  CHECK(s("d") == 2);
  CHECK(k("b") == 3);
}

TEST_CASE("repeated words do not self-connect") {
  const WeightedGraph g = build_graph(fixtures::corpus_from_tokens({{"a", "a", "a"}}));
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(g.degrees()[0] == 0);
  CHECK(g.strengths()[0] == 0);
}

TEST_CASE("identical documents stack edge weight") {
  const WeightedGraph g =
      build_graph(fixtures::corpus_from_tokens({{"a", "b"}, {"a", "b"}, {"a", "b"}}));
  CHECK(weight_of(g, "a", "b") == 3);
}

TEST_CASE("single edge weight five") {
  const auto g = fixtures::make_graph({"x", "y"}, {{"x", "y", 5}});
  CHECK(g.degrees()[0] == 1);
  CHECK(g.strengths()[0] == 5);
}

TEST_CASE("degree never exceeds strength; strength sums to twice the weight") {
  const auto corpus = fixtures::zipf_corpus(300, 120, 7);
  const WeightedGraph g = build_graph(corpus);
  std::uint64_t strength_sum = 0;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    CHECK(g.degrees()[id] <= g.strengths()[id]);
    strength_sum += g.strengths()[id];
  }
  CHECK(strength_sum == 2 * g.total_weight());
}

TEST_CASE("matrix-product oracle agrees on random corpora") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto corpus =
        fixtures::zipf_corpus(5 + rng.uniform_below(40), 4 + rng.uniform_below(30),
                              1000 + trial, 1.05, 6);
    const WeightedGraph g = build_graph(corpus);
    CHECK(edge_map(g) == oracles::dense_cooccurrence(corpus));
  }
}

TEST_CASE("total edge weight equals the per-document pair count") {
  const auto corpus = fixtures::zipf_corpus(150, 60, 3);
  const WeightedGraph g = build_graph(corpus);
  std::uint64_t expected = 0;
  for (const auto& doc : corpus.documents) {
    const std::uint64_t u = doc.unique_tokens.size();
    expected += u * (u - 1) / 2;
  }
  CHECK(g.total_weight() == expected);
}

TEST_CASE("graph is invariant under document permutation and token order") {
  auto docs = std::vector<std::vector<std::string>>{
      {"b", "a", "c"}, {"d", "c", "b"}, {"a", "d"}, {"c", "c", "a"}};
  const WeightedGraph forward = build_graph(fixtures::corpus_from_tokens(docs));
  std::reverse(docs.begin(), docs.end());
  for (auto& doc : docs) std::reverse(doc.begin(), doc.end());
  const WeightedGraph backward = build_graph(fixtures::corpus_from_tokens(docs));
  CHECK(edge_map(forward) == edge_map(backward));
  CHECK(forward.words() == backward.words());
}

TEST_CASE("component sizes") {
  const auto two_triangles = fixtures::make_graph(
      {"a", "b", "c", "x", "y", "z"},
      {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"x", "y", 1}, {"y", "z", 1}, {"x", "z", 1}});
  CHECK(component_sizes(two_triangles) == std::vector<std::size_t>{3, 3});

  const auto path_plus_isolated = build_graph(
      fixtures::corpus_from_tokens({{"a", "b"}, {"b", "c"}, {"d"}}));
  CHECK(component_sizes(path_plus_isolated) == std::vector<std::size_t>{3, 1});

  CHECK(component_sizes(WeightedGraph()).empty());
}

TEST_CASE("assortativity on equal-endpoint edges is 1") {
  const auto g = fixtures::make_graph(
      {"a", "b", "c", "d"}, {{"a", "b", 2}, {"c", "d", 3}},
      {{"a", 2.0}, {"b", 2.0}, {"c", 7.0}, {"d", 7.0}});
  CHECK(*assortativity(g, NodeAttribute::score, false) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*assortativity(g, NodeAttribute::score, true) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("star graph degree assortativity is -1") {
  const auto g = fixtures::make_graph(
      {"hub", "l1", "l2", "l3", "l4", "l5"},
      {{"hub", "l1", 1}, {"hub", "l2", 1}, {"hub", "l3", 1}, {"hub", "l4", 1}, {"hub", "l5", 1}});
  CHECK(*assortativity(g, NodeAttribute::degree, false) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("weighted and unweighted assortativity, hand-computed") {
  // path a-b-c, scores 2/4/8, weights 3 and 1
  const auto g = fixtures::make_graph({"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 1}},
                                      {{"a", 2.0}, {"b", 4.0}, {"c", 8.0}});
  // weighted: pairs (2,4)x3, (4,2)x3, (4,8), (8,4) -> cov -0.5, var 27.5
  CHECK(*assortativity(g, NodeAttribute::score, true) ==
        doctest::Approx(-0.5 / 27.5).epsilon(1e-12));
  // unweighted: cov -1, var 19
  CHECK(*assortativity(g, NodeAttribute::score, false) ==
        doctest::Approx(-1.0 / 19.0).epsilon(1e-12));
}

TEST_CASE("assortativity undefined cases") {
  const auto single = fixtures::make_graph({"a", "b"}, {{"a", "b", 1}});
  CHECK(!assortativity(single, NodeAttribute::degree, false).has_value());

  // zero variance: every endpoint has the same degree
  const auto cycle = fixtures::make_graph(
      {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  CHECK(!assortativity(cycle, NodeAttribute::degree, false).has_value());

  // score assortativity skips edges with unscored endpoints
  const auto partially_scored = fixtures::make_graph(
      {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}}, {{"a", 3.0}, {"b", 6.0}});
  CHECK(!assortativity(partially_scored, NodeAttribute::score, false).has_value());
}

TEST_CASE("random score permutation centers assortativity at zero") {
  const auto corpus = fixtures::zipf_corpus(1200, 500, 5);
  WeightedGraph g = build_graph(corpus);
  Rng rng(17);
  std::vector<std::optional<double>> scores(g.node_count());
  for (auto& s : scores) s = rng.uniform_real(1.0, 9.0);
  g = g.with_scores(scores);

  const int reps = 300;
  double sum = 0, sum_sq = 0;
  int defined = 0;
  for (int rep = 0; rep < reps; ++rep) {
    auto shuffled = scores;
    rng.shuffle(shuffled);
    const auto r = assortativity(g.with_scores(shuffled), NodeAttribute::score, false);
    if (r) {
      sum += *r;
      sum_sq += *r * *r;
      ++defined;
    }
  }
  REQUIRE(defined > reps / 2);
  const double mean = sum / defined;
  const double sd = std::sqrt(std::max(0.0, sum_sq / defined - mean * mean));
  // the permutation null carries an O(1/n) finite-size offset
  const double bias_allowance = 6.0 / static_cast<double>(g.node_count());
  CHECK(std::abs(mean) < bias_allowance + 4.0 * sd / std::sqrt(static_cast<double>(defined)));
}

TEST_CASE("score profiles: symmetrized pair grid and neutral deviations") {
  const ProfileBins bins{{1.0, 9.0, 8, AxisSpec::Scale::linear},
                         {1.0, 1e3, 10, AxisSpec::Scale::log10},
                         {1.0, 1e3, 10, AxisSpec::Scale::log10},
                         {1.0, 1e3, 10, AxisSpec::Scale::log10}};

  const auto pair_graph =
      fixtures::make_graph({"u", "v"}, {{"u", "v", 2}}, {{"u", 3.0}, {"v", 7.0}});
  const ProfileSet profiles = score_profiles(pair_graph, bins);
  const int bin3 = *bins.score.bin_of(3.0);
  const int bin7 = *bins.score.bin_of(7.0);
  CHECK(profiles.score_pair.at(bin3, bin7) == doctest::Approx(2.0));
  CHECK(profiles.score_pair.at(bin7, bin3) == doctest::Approx(2.0));
  CHECK(profiles.score_pair.total_weight() == doctest::Approx(4.0));

  const auto neutral = fixtures::make_graph(
      {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 4}}, {{"a", 5.0}, {"b", 5.0}, {"c", 5.0}});
  const ProfileSet neutral_profiles = score_profiles(neutral, bins);
  for (const double cell : neutral_profiles.count_score_deviation.cells()) CHECK(cell == 0.0);
}

TEST_CASE("score profiles match a document-level recomputation") {
  const auto corpus = fixtures::zipf_corpus(120, 50, 23);
  const Lexicon lexicon = fixtures::labmt_like_lexicon(50, 29);
  const WeightedGraph g = apply_scores(build_graph(corpus), lexicon);
  const ProfileBins bins;
  const ProfileSet profiles = score_profiles(g, bins);

  // independent route: recount word occurrences from the raw token lists
  std::map<std::string, std::uint64_t> counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& token : doc.tokens) counts[token] += 1;
  }
  std::uint64_t scored_total = 0;
  for (const auto& [word, n] : counts) {
    if (lexicon.score(word)) scored_total += n;
  }
  HistogramGrid expected(bins.count, bins.score);
  HistogramGrid expected_dev(bins.count, bins.score);
  for (const auto& [word, n] : counts) {
    const auto h = lexicon.score(word);
    if (!h) continue;
    expected.add(static_cast<double>(n), *h);
    expected_dev.add(static_cast<double>(n), *h,
                     (*h - 5.0) * static_cast<double>(n) / static_cast<double>(scored_total));
  }
  CHECK(profiles.count_score.cells() == expected.cells());
  for (std::size_t i = 0; i < expected_dev.cells().size(); ++i) {
    CHECK(profiles.count_score_deviation.cells()[i] ==
          doctest::Approx(expected_dev.cells()[i]).epsilon(1e-12));
  }
}

TEST_CASE("score-pair grid matches recomputation from the dense oracle") {
  const auto corpus = fixtures::zipf_corpus(100, 40, 37);
  const Lexicon lexicon = fixtures::labmt_like_lexicon(40, 41);
  const WeightedGraph g = apply_scores(build_graph(corpus), lexicon);
  const ProfileBins bins;
  const HistogramGrid actual = score_profiles(g, bins).score_pair;

  HistogramGrid expected(bins.score, bins.score);
  for (const auto& [pair, weight] : oracles::dense_cooccurrence(corpus)) {
    const auto hu = lexicon.score(pair.first);
    const auto hv = lexicon.score(pair.second);
    if (!hu || !hv) continue;
    expected.add(*hu, *hv, static_cast<double>(weight));
    expected.add(*hv, *hu, static_cast<double>(weight));
  }
  CHECK(actual.cells() == expected.cells());
}

TEST_CASE("zipf corpora have heavy-tailed distributions (reported, not asserted)") {
  const auto corpus = fixtures::zipf_corpus(2000, 400, 31);
  const WeightedGraph g = build_graph(corpus);
  // log-log slope of the degree tail, crude Hill-style estimate
  const auto dist = degree_distribution(g);
  double n_tail = 0, sum_log = 0;
  const double k_min = 5;
  for (const auto& [k, count] : dist) {
    if (k >= k_min) {
      n_tail += static_cast<double>(count);
      sum_log += static_cast<double>(count) * std::log(static_cast<double>(k) / k_min);
    }
  }
  if (n_tail > 0 && sum_log > 0) {
    const double alpha = 1.0 + n_tail / sum_log;
    MESSAGE("degree tail exponent estimate: ", alpha);
  }
  CHECK(g.node_count() > 0);
}

TEST_CASE("tsv round trip preserves the graph") {
  const auto corpus = fixtures::zipf_corpus(60, 30, 13);
  const Lexicon lexicon = fixtures::labmt_like_lexicon(25, 5);
  const WeightedGraph g = apply_scores(build_graph(corpus), lexicon);

  const auto dir = std::filesystem::temp_directory_path() / "cooccur_test_graph_io";
  std::filesystem::create_directories(dir);
  write_edges_tsv(dir / "edges.tsv", g);
  write_nodes_tsv(dir / "nodes.tsv", g);
  const WeightedGraph loaded = read_graph_tsv(dir / "edges.tsv", dir / "nodes.tsv");

  CHECK(loaded.words() == g.words());
  CHECK(edge_map(loaded) == edge_map(g));
  for (NodeId id = 0; id < g.node_count(); ++id) {
    CHECK(loaded.attrs()[id].word_count == g.attrs()[id].word_count);
    CHECK(loaded.attrs()[id].tweet_count == g.attrs()[id].tweet_count);
    CHECK(loaded.attrs()[id].score == g.attrs()[id].score);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("require-scores mode drops unscored nodes only") {
  const auto g = fixtures::make_graph(
      {"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 2}}, {{"a", 4.0}, {"b", 6.0}});
  const WeightedGraph scored_only = drop_unscored(g);
  CHECK(scored_only.node_count() == 2);
  CHECK(scored_only.edge_count() == 1);
  CHECK(weight_of(scored_only, "a", "b") == 1);
}
