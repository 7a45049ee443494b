#include "mesotext/graphmetrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace mesotext {

std::vector<double> EdgeSeries::values() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

NodeSeries clustering_coefficient(const Graph& g) {
  NodeSeries s{"clustering", std::vector<double>(g.node_count(), 0.0)};
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::size_t k = g.degree(i);
    if (k < 2) continue;
    const auto nbrs = g.neighbors(i);
    std::size_t links = 0;  // each neighbour-neighbour edge is seen from both ends
    for (NodeId u : nbrs) links += sorted_intersection_size(nbrs, g.neighbors(u));
    const double triangles = static_cast<double>(links) / 2.0;
    const double triples = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
    s.values[i] = triangles / triples;
  }
  return s;
}

std::vector<double> matching_index_per_edge(const Graph& g) {
  std::vector<double> out;
  out.reserve(g.edge_count());
  for (auto [i, j] : g.edges()) {
    const auto common = sorted_intersection_size(g.neighbors(i), g.neighbors(j));
    const std::size_t denom = (g.degree(i) - 1) + (g.degree(j) - 1);
    out.push_back(denom == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(denom));
  }
  return out;
}

EdgeSeries edge_series_order(const Graph& g, std::span<const double> per_edge, std::string measure) {
  const auto edges = g.edges();
  if (per_edge.size() != edges.size()) {
    throw std::invalid_argument("edge_series_order: got " + std::to_string(per_edge.size()) +
                                " values for " + std::to_string(edges.size()) + " edges");
  }
  EdgeSeries s{std::move(measure), {}};
  s.entries.reserve(2 * edges.size());
  auto value_of = [&](NodeId a, NodeId b) {
    const Edge key = a < b ? Edge{a, b} : Edge{b, a};
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    return per_edge[static_cast<std::size_t>(it - edges.begin())];
  };
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (NodeId j : g.neighbors(i)) s.entries.push_back({i, j, value_of(i, j)});
  }
  return s;
}

EdgeSeries matching_index(const Graph& g) {
  const auto values = matching_index_per_edge(g);
  return edge_series_order(g, values, "matching");
}

LongRangeProfile long_range_profile(const WeightedSimilarityGraph& weights, const Graph& net,
                                    std::size_t long_range_gap) {
  if (weights.node_count() != net.node_count()) {
    throw std::invalid_argument("long_range_profile: similarity graph and network differ in size");
  }
  LongRangeProfile out;
  out.reserve(net.edge_count());
  for (auto [i, j] : net.edges()) {
    const std::size_t dt = j - i;
    out.push_back({i, j, dt, weights.weight(i, j), dt > long_range_gap});
  }
  return out;
}

double max_long_range_weight(const LongRangeProfile& profile, std::size_t min_gap) {
  double best = 0.0;
  for (const auto& e : profile) {
    if (e.time_difference > min_gap) best = std::max(best, e.weight);
  }
  return best;
}

}  // namespace mesotext
