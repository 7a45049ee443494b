#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mesotext/graph.hpp"
#include "mesotext/mesonet.hpp"

namespace mesotext {

/// Per-node values in text order (node id = window index).
struct NodeSeries {
  std::string measure;
  std::vector<double> values;
};

struct EdgeSeriesEntry {
  NodeId i;
  NodeId j;
  double value;
};

/// Per-edge values listed by scanning ordered pairs (i, j) row-major and
/// skipping non-edges, so each undirected edge appears at (i, j) and (j, i).
struct EdgeSeries {
  std::string measure;
  std::vector<EdgeSeriesEntry> entries;

  std::vector<double> values() const;
};

/// Local clustering coefficient: edges among the neighbours of i divided by
/// deg(i)(deg(i)-1)/2, and 0 when deg(i) < 2.
NodeSeries clustering_coefficient(const Graph& g);
inline NodeSeries clustering_coefficient(const MesoscopicNetwork& net) {
  return clustering_coefficient(net.graph);
}

/// Matching index of every edge, aligned with g.edges():
/// common neighbours / ((deg(i) - 1) + (deg(j) - 1)), and 0 if the
/// denominator vanishes.
std::vector<double> matching_index_per_edge(const Graph& g);

/// Orders per-edge values (aligned with g.edges()) into an EdgeSeries.
/// Throws std::invalid_argument when the value count differs from the edge count.
EdgeSeries edge_series_order(const Graph& g, std::span<const double> per_edge,
                             std::string measure);

EdgeSeries matching_index(const Graph& g);
inline EdgeSeries matching_index(const MesoscopicNetwork& net) { return matching_index(net.graph); }

struct LongRangeEntry {
  NodeId i;
  NodeId j;
  std::size_t time_difference;
  double weight;
  bool long_range;
};

using LongRangeProfile = std::vector<LongRangeEntry>;

inline constexpr std::size_t kLongRangeGap = 100;

/// (|i-j|, similarity) for every retained edge, flagged long-range when
/// |i-j| > long_range_gap. Throws std::invalid_argument if the two graphs
/// have different node counts.
LongRangeProfile long_range_profile(const WeightedSimilarityGraph& weights, const Graph& net,
                                    std::size_t long_range_gap = kLongRangeGap);
inline LongRangeProfile long_range_profile(const WeightedSimilarityGraph& weights,
                                           const MesoscopicNetwork& net,
                                           std::size_t long_range_gap = kLongRangeGap) {
  return long_range_profile(weights, net.graph, long_range_gap);
}

/// Largest weight among entries with time difference > min_gap, or 0 when none.
double max_long_range_weight(const LongRangeProfile& profile, std::size_t min_gap = kLongRangeGap);

}  // namespace mesotext
