#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "mesotext/centrality.hpp"
#include "oracles.hpp"

using namespace mesotext;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph two_triangles() {
  return Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

}  // namespace

TEST_CASE("K4 degrees, betweenness and single-community modularity") {
  const auto g = complete(4);
  CHECK(degree_centrality(g) == std::vector<double>{3, 3, 3, 3});
  CHECK(path_measures(g).betweenness == std::vector<double>{0, 0, 0, 0});
  CHECK(modularity(g, std::vector<std::uint32_t>{0, 0, 0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("path P3 path measures") {
  const auto g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const auto m = path_measures(g);
  CHECK(m.betweenness == std::vector<double>{0, 1, 0});
  CHECK(m.closeness[1] == doctest::Approx(1.0));
  CHECK(m.closeness[0] == doctest::Approx(0.75));
  CHECK(m.eccentricity == std::vector<double>{2, 1, 2});
}

TEST_CASE("betweenness equals exhaustive shortest-path enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 5 + seed % 26;
    const auto a = oracle::random_adjacency(n, 0.15, seed + 7);
    const auto b = path_measures(Graph::from_edges(n, oracle::edge_list(a))).betweenness;
    const auto expected = oracle::betweenness(a);
    for (std::size_t v = 0; v < n; ++v) CHECK(b[v] == doctest::Approx(expected[v]).epsilon(1e-12));
  }
}

TEST_CASE("PageRank is a probability vector and uniform on a regular graph") {
  const auto a = oracle::random_adjacency(25, 0.1, 3);
  const auto pr = pagerank(Graph::from_edges(25, oracle::edge_list(a)));
  CHECK(std::accumulate(pr.begin(), pr.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  for (double v : pagerank(complete(5))) CHECK(v == doctest::Approx(0.2));
}

TEST_CASE("eigenvector centrality lives on the largest component with unit norm") {
  const auto g = Graph::from_edges(7, std::vector<Edge>{{0, 1}, {2, 3}, {3, 4}, {4, 2}, {4, 5}});
  const auto ev = eigenvector_centrality(g);
  CHECK(ev[0] == 0.0);
  CHECK(ev[1] == 0.0);
  CHECK(ev[6] == 0.0);
  double norm = 0;
  for (double v : ev) norm += v * v;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0));
  CHECK(ev[4] > ev[2]);
  CHECK(ev[2] == doctest::Approx(ev[3]));
}

TEST_CASE("neighbourhood connectivity") {
  const auto star = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  const auto nc = neighborhood_connectivity(star);
  CHECK(nc == std::vector<double>{1, 3, 3, 3, 0});
}

TEST_CASE("greedy modularity separates two triangles") {
  const auto g = two_triangles();
  const auto c = greedy_modularity_communities(g);
  CHECK(c == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1});
  CHECK(modularity(g, c) == doctest::Approx(0.5));
  CHECK(modularity(Graph(3), std::vector<std::uint32_t>{0, 1, 2}) == 0.0);
}
