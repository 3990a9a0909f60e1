#pragma once

// Independent oracles the tests check the implementation against. These
// deliberately take different computational routes than the library code.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cooccur/corpus.hpp"
#include "cooccur/graph.hpp"

namespace oracles {

// Co-occurrence weights via the dense document-term matrix route: binarize,
// multiply by the transpose, zero the diagonal.
inline std::map<std::pair<std::string, std::string>, std::uint64_t> dense_cooccurrence(
    const cooccur::Corpus& corpus) {
  std::vector<std::string> vocab;
  for (const auto& [word, n] : corpus.word_counts) vocab.push_back(word);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index[vocab[i]] = i;

  const std::size_t n_docs = corpus.documents.size();
  const std::size_t n_words = vocab.size();
  std::vector<std::uint8_t> matrix(n_docs * n_words, 0);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (const auto& token : corpus.documents[d].tokens) {
      matrix[d * n_words + index.at(token)] = 1;  // binarized
    }
  }

  std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
  for (std::size_t a = 0; a < n_words; ++a) {
    for (std::size_t b = a + 1; b < n_words; ++b) {  // diagonal stays zero
      std::uint64_t dot = 0;
      for (std::size_t d = 0; d < n_docs; ++d) {
        dot += static_cast<std::uint64_t>(matrix[d * n_words + a]) * matrix[d * n_words + b];
      }
      if (dot > 0) weights[{vocab[a], vocab[b]}] = dot;
    }
  }
  return weights;
}

// 64-point Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration on
// the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n = 64) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = (b - a) / 2.0;
    const double mid = (a + b) / 2.0;
    double sum = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return half * sum;
  }
};

// Disparity p-value by quadrature of the uniform order-statistics null
// density (k-1)(1-t)^(k-2) over [0, w/s].
inline double disparity_pvalue_quadrature(std::uint64_t w, std::uint64_t s, std::uint32_t k,
                                          const GaussLegendre& gl) {
  if (k <= 1) return 1.0;
  const double x = static_cast<double>(w) / static_cast<double>(s);
  const double integral = gl.integrate(
      [k](double t) {
        return (static_cast<double>(k) - 1.0) * std::pow(1.0 - t, static_cast<double>(k) - 2.0);
      },
      0.0, x);
  return 1.0 - integral;
}

// Brute-force modularity straight from the definition, over all ordered
// node pairs. Independent of cooccur::modularity.
inline double brute_modularity(const cooccur::WeightedGraph& g,
                               const std::vector<std::uint32_t>& assignment, double gamma = 1.0) {
  const std::size_t n = g.node_count();
  const double m2 = 2.0 * static_cast<double>(g.total_weight());
  if (m2 == 0) return 0.0;
  std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    adj[e.u][e.v] = static_cast<double>(e.weight);
    adj[e.v][e.u] = static_cast<double>(e.weight);
  }
  double q = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment[i] != assignment[j]) continue;
      const double expected = gamma * static_cast<double>(g.strengths()[i]) *
                              static_cast<double>(g.strengths()[j]) / m2;
      q += adj[i][j] - expected;
    }
  }
  return q / m2;
}

// Maximum modularity over every set partition (restricted growth strings);
// feasible for n <= 10.
inline double exhaustive_best_modularity(const cooccur::WeightedGraph& g, double gamma = 1.0) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> assignment(n, 0);
  std::vector<std::uint32_t> max_prefix(n, 0);
  double best = -1e100;
  for (;;) {
    best = std::max(best, brute_modularity(g, assignment, gamma));
    // next restricted growth string
    bool advanced = false;
    for (std::size_t i = n; i-- > 1;) {
      if (assignment[i] <= max_prefix[i - 1]) {
        assignment[i] += 1;
        max_prefix[i] = std::max(max_prefix[i - 1], assignment[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
          assignment[j] = 0;
          max_prefix[j] = max_prefix[i];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return best;
}

// Count-weighted mean score recomputed from scratch.
inline std::optional<double> weighted_mean_oracle(
    const std::vector<std::pair<double, std::uint64_t>>& scored_counts) {
  double sum = 0;
  std::uint64_t total = 0;
  for (const auto& [h, n] : scored_counts) {
    sum += h * static_cast<double>(n);
    total += n;
  }
  if (total == 0) return std::nullopt;
  return sum / static_cast<double>(total);
}

}  // namespace oracles
