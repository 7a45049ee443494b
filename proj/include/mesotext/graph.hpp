#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mesotext {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  /// Builds a graph from an edge list. Duplicate and reversed duplicates
  /// collapse to one edge. Throws std::invalid_argument on a self-loop or an
  /// endpoint >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  bool has_edge(NodeId a, NodeId b) const;

  /// Edges as (i, j) with i < j, sorted lexicographically.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Size of the intersection of two sorted ranges.
std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b);

/// Connected-component label per node; components are numbered in order of
/// their smallest node.
std::vector<std::uint32_t> connected_components(const Graph& g);

}  // namespace mesotext
