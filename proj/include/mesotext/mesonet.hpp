#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mesotext/common.hpp"
#include "mesotext/graph.hpp"
#include "mesotext/vectorizer.hpp"

namespace mesotext {

/// Complete weighted graph of window similarities. Only the strict upper
/// triangle is stored, so symmetry and the zero diagonal hold by
/// construction.
class WeightedSimilarityGraph {
 public:
  WeightedSimilarityGraph() = default;
  explicit WeightedSimilarityGraph(std::size_t n);

  std::size_t node_count() const { return n_; }
  std::size_t pair_count() const { return upper_.size(); }

  double weight(NodeId i, NodeId j) const;
  void set_weight(NodeId i, NodeId j, double w);

  /// Weights of the strict upper triangle, row-major: (0,1), (0,2), ..., (1,2), ...
  std::span<const double> upper_triangle() const { return upper_; }

 private:
  std::size_t index(NodeId i, NodeId j) const;

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

/// Pairwise cosine similarity of every unordered pair of windows.
/// Throws std::invalid_argument ("degenerate corpus") for fewer than 2 vectors.
WeightedSimilarityGraph build_similarity_graph(std::span<const TfIdfVector> vectors,
                                               Diagnostics* diag = nullptr);

struct PruneRule {
  enum class Kind { Threshold, Retention };

  Kind kind = Kind::Threshold;
  double value = 0.0;

  static PruneRule threshold(double t) { return {Kind::Threshold, t}; }
  static PruneRule retention(double q) { return {Kind::Retention, q}; }
};

struct NetworkProvenance {
  std::size_t delta = 0;
  PruneRule rule;
  double threshold = 0.0;           // cut value actually applied
  double retention_fraction = 0.0;  // kept edges / n(n-1)/2
  std::string source_id;
  TextClass class_label = TextClass::RT;
};

/// Unweighted network obtained by pruning a similarity graph. Node k is
/// window k; isolated nodes are kept.
struct MesoscopicNetwork {
  Graph graph;
  std::vector<std::size_t> start_paragraph;  // window start index, per node
  std::vector<std::string> chapter;          // optional, empty when unknown
  NetworkProvenance provenance;

  std::size_t node_count() const { return graph.node_count(); }
};

/// Threshold rule keeps pairs with weight > T (requires 0 < T < 1).
///
/// Retention rule (0 < q <= 1) keeps exactly round(q * n(n-1)/2) pairs: all
/// pairs are ranked by descending (weight, i, j) and the head of that order
/// is kept. The recorded threshold is the weight of the last kept pair. A
/// rule that keeps no edge records a warning and returns an empty edge set.
MesoscopicNetwork prune(const WeightedSimilarityGraph& g, const PruneRule& rule,
                        Diagnostics* diag = nullptr);

}  // namespace mesotext
