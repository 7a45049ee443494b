#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "mesotext/mesonet.hpp"
#include "mesotext/vectorizer.hpp"

using namespace mesotext;

namespace {

TfIdfVector vec(std::vector<TermWeight> e) { return TfIdfVector{std::move(e)}; }

// Eq. 3 written out over dense arrays.
double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return (na == 0 || nb == 0) ? 0.0 : dot / std::sqrt(na * nb);
}

WeightedSimilarityGraph graph_from(std::size_t n, const std::vector<double>& upper) {
  WeightedSimilarityGraph g(n);
  std::size_t k = 0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) g.set_weight(i, j, upper[k++]);
  return g;
}

}  // namespace

TEST_CASE("two identical windows have weight 1") {
  const auto g = build_similarity_graph(std::vector{vec({{0, 1.0}, {2, 3.0}}), vec({{0, 1.0}, {2, 3.0}})});
  CHECK(g.node_count() == 2);
  CHECK(g.weight(0, 1) == doctest::Approx(1.0));
  CHECK(g.weight(1, 0) == g.weight(0, 1));
  CHECK(g.weight(0, 0) == 0.0);
}

TEST_CASE("pairwise-disjoint vocabularies give zero weights") {
  const auto g = build_similarity_graph(std::vector{vec({{0, 1.0}}), vec({{1, 1.0}}), vec({{2, 1.0}})});
  for (double w : g.upper_triangle()) CHECK(w == 0.0);
}

TEST_CASE("toy four-window corpus matches a dense cosine oracle") {
  const std::vector<std::vector<double>> dense{
      {1.0, 0.5, 0.0, 2.0}, {0.0, 1.5, 1.0, 0.0}, {0.3, 0.0, 0.0, 0.7}, {1.0, 1.0, 1.0, 1.0}};
  std::vector<TfIdfVector> sparse;
  for (const auto& row : dense) {
    TfIdfVector v;
    for (std::uint32_t t = 0; t < row.size(); ++t)
      if (row[t] > 0) v.entries.push_back({t, row[t]});
    sparse.push_back(v);
  }
  const auto g = build_similarity_graph(sparse);
  for (NodeId i = 0; i < 4; ++i)
    for (NodeId j = 0; j < 4; ++j)
      if (i != j) CHECK(g.weight(i, j) == doctest::Approx(dense_cosine(dense[i], dense[j])).epsilon(1e-14));
}

TEST_CASE("fewer than two vectors is a degenerate corpus") {
  CHECK_THROWS_WITH_AS(build_similarity_graph(std::vector{vec({{0, 1.0}})}), doctest::Contains("degenerate corpus"),
                       std::invalid_argument);
}

TEST_CASE("the diagonal cannot be set and indices are checked") {
  WeightedSimilarityGraph g(3);
  CHECK_THROWS_AS(g.set_weight(1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(g.weight(0, 3), std::out_of_range);
}

TEST_CASE("retention 1 keeps the complete graph") {
  const auto g = graph_from(5, std::vector<double>(10, 0.2));
  const auto net = prune(g, PruneRule::retention(1.0));
  CHECK(net.graph.edge_count() == 10);
  CHECK(net.provenance.retention_fraction == doctest::Approx(1.0));
}

TEST_CASE("equal weights: retention keeps round(q N) pairs, ties in descending (i, j) order") {
  const auto g = graph_from(6, std::vector<double>(15, 0.4));
  const auto net = prune(g, PruneRule::retention(0.2));
  CHECK(net.graph.edges() == std::vector<Edge>{{3, 4}, {3, 5}, {4, 5}});
  CHECK(net.provenance.threshold == doctest::Approx(0.4));
}

TEST_CASE("retention keeps the heaviest pairs") {
  const auto g = graph_from(4, {0.9, 0.1, 0.5, 0.8, 0.2, 0.3});  // (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
  const auto net = prune(g, PruneRule::retention(0.5));
  CHECK(net.graph.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(net.provenance.threshold == doctest::Approx(0.5));
  CHECK(net.provenance.retention_fraction == doctest::Approx(0.5));
}

TEST_CASE("threshold keeps pairs strictly above T") {
  const auto g = graph_from(4, {0.9, 0.1, 0.5, 0.8, 0.2, 0.3});
  const auto net = prune(g, PruneRule::threshold(0.5));
  CHECK(net.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(net.node_count() == 4);
  CHECK(net.start_paragraph == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("an empty result warns and invalid rules throw") {
  const auto g = graph_from(3, {0.1, 0.2, 0.3});
  Diagnostics diag;
  const auto net = prune(g, PruneRule::threshold(0.9), &diag);
  CHECK(net.graph.edge_count() == 0);
  CHECK(diag.warnings.size() == 1);
  CHECK_THROWS_AS(prune(g, PruneRule::threshold(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(prune(g, PruneRule::threshold(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(prune(g, PruneRule::retention(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(prune(g, PruneRule::retention(1.5)), std::invalid_argument);
}
