#include "mesotext/mesonet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "similarity_kernels.hpp"

namespace mesotext {

WeightedSimilarityGraph::WeightedSimilarityGraph(std::size_t n)
    : n_(n), upper_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

std::size_t WeightedSimilarityGraph::index(NodeId i, NodeId j) const {
  if (i > j) std::swap(i, j);
  // Row i starts after the i rows above it, of lengths n-1, n-2, ..., n-i.
  return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

double WeightedSimilarityGraph::weight(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("node index out of range");
  if (i == j) return 0.0;
  return upper_[index(i, j)];
}

void WeightedSimilarityGraph::set_weight(NodeId i, NodeId j, double w) {
  if (i >= n_ || j >= n_) throw std::out_of_range("node index out of range");
  if (i == j) throw std::invalid_argument("diagonal weights are fixed at 0");
  upper_[index(i, j)] = w;
}

WeightedSimilarityGraph build_similarity_graph(std::span<const TfIdfVector> vectors,
                                               Diagnostics* diag) {
  const std::size_t n = vectors.size();
  if (n < 2) throw std::invalid_argument("degenerate corpus: need at least 2 windows, got " +
                                         std::to_string(n));
  std::vector<double> norms(n);
  std::size_t zero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = vectors[i].norm();
    if (vectors[i].is_zero()) ++zero;
  }
  WeightedSimilarityGraph g(n);
  for (NodeId i = 0; i < n; ++i) {
    if (vectors[i].is_zero()) continue;
    for (NodeId j = i + 1; j < n; ++j) {
      if (vectors[j].is_zero()) continue;
      g.set_weight(i, j, detail::cosine_from_parts(detail::sparse_dot(vectors[i], vectors[j]),
                                                   norms[i], norms[j]));
    }
  }
  if (diag && zero > 0) {
    // Pairs with at least one zero vector.
    diag->zero_vector_pairs += zero * (n - zero) + zero * (zero - 1) / 2;
    diag->warn(std::to_string(zero) + " window(s) have all-zero tf-idf vectors");
  }
  return g;
}

MesoscopicNetwork prune(const WeightedSimilarityGraph& g, const PruneRule& rule,
                        Diagnostics* diag) {
  const std::size_t n = g.node_count();
  const std::size_t pairs = g.pair_count();
  const auto weights = g.upper_triangle();

  MesoscopicNetwork net;
  net.provenance.rule = rule;
  net.start_paragraph.resize(n);
  std::iota(net.start_paragraph.begin(), net.start_paragraph.end(), std::size_t{0});

  std::vector<Edge> kept;
  if (rule.kind == PruneRule::Kind::Threshold) {
    if (!(rule.value > 0.0 && rule.value < 1.0)) {
      throw std::invalid_argument("threshold T must satisfy 0 < T < 1");
    }
    std::size_t idx = 0;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j, ++idx) {
        if (weights[idx] > rule.value) kept.emplace_back(i, j);
      }
    }
    net.provenance.threshold = rule.value;
  } else {
    if (!(rule.value > 0.0 && rule.value <= 1.0)) {
      throw std::invalid_argument("retention q must satisfy 0 < q <= 1");
    }
    const auto target = static_cast<std::size_t>(std::llround(rule.value * static_cast<double>(pairs)));
    std::vector<Edge> order;
    order.reserve(pairs);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) order.emplace_back(i, j);
    }
    // Descending (weight, i, j); pair index order matches upper_triangle().
    auto rank_index = [n](const Edge& e) {
      return static_cast<std::size_t>(e.first) * (2 * n - e.first - 1) / 2 + (e.second - e.first - 1);
    };
    auto before = [&](const Edge& a, const Edge& b) {
      const double wa = weights[rank_index(a)];
      const double wb = weights[rank_index(b)];
      if (wa != wb) return wa > wb;
      return a > b;
    };
    if (target < order.size()) {
      std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(target), order.end(), before);
    }
    order.resize(target);
    std::sort(order.begin(), order.end(), before);
    if (!order.empty()) {
      net.provenance.threshold = weights[rank_index(order.back())];
    } else {
      net.provenance.threshold =
          weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
    }
    kept = std::move(order);
  }
  if (kept.empty()) {
    warn(diag, "pruning kept no edges");
  }
  net.provenance.retention_fraction =
      pairs == 0 ? 0.0 : static_cast<double>(kept.size()) / static_cast<double>(pairs);
  net.graph = Graph::from_edges(n, kept);
  return net;
}

}  // namespace mesotext
