#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mesotext/graph.hpp"

namespace mesotext {

std::vector<double> degree_centrality(const Graph& g);

/// Shortest-path based measures from one BFS per source.
struct PathMeasures {
  /// Unnormalized shortest-path betweenness; each unordered pair counted once.
  std::vector<double> betweenness;
  /// Harmonic closeness over reachable nodes: sum of 1/d(i,j) divided by n-1.
  std::vector<double> closeness;
  /// Largest distance to any reachable node (0 for an isolated node).
  std::vector<double> eccentricity;
};

PathMeasures path_measures(const Graph& g);

/// Power iteration on the largest connected component (ties go to the
/// component holding the smallest node id); zero elsewhere. The result is
/// nonnegative with unit Euclidean norm. Iterates A + I, which has the same
/// leading eigenvector as A but converges on bipartite components too.
std::vector<double> eigenvector_centrality(const Graph& g, double tolerance = 1e-10,
                                           std::size_t max_iterations = 100000);

/// PageRank with uniform teleport; dangling nodes spread their mass
/// uniformly. Iterates until the L1 change drops below `tolerance`.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tolerance = 1e-10,
                             std::size_t max_iterations = 100000);

/// Mean degree of each node's neighbours (0 for isolated nodes).
std::vector<double> neighborhood_connectivity(const Graph& g);

/// Community label per node from greedy agglomerative modularity
/// maximisation (repeatedly merge the connected pair of communities with the
/// largest modularity gain while that gain is positive). Ties are broken by
/// the smaller community ids. Labels are renumbered in order of first node.
std::vector<std::uint32_t> greedy_modularity_communities(const Graph& g);

/// Newman modularity of a partition; 0 for a graph without edges.
double modularity(const Graph& g, std::span<const std::uint32_t> community);

}  // namespace mesotext
