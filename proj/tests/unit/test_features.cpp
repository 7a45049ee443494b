#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mesotext/features.hpp"
#include "mesotext/graphmetrics.hpp"
#include "oracles.hpp"

using namespace mesotext;

namespace {

// Eq. 7 written out: mean c_v over all stride-1 subsequences.
double windowed_cv_oracle(const std::vector<double>& x, std::size_t delta) {
  double sum = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k + delta <= x.size(); ++k) {
    std::vector<double> w(x.begin() + static_cast<long>(k), x.begin() + static_cast<long>(k + delta));
    double m = 0;
    for (double v : w) m += v;
    if (m == 0) continue;
    sum += oracle::population_cv(w);
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

TEST_CASE("coefficient of variation hand cases") {
  CHECK(coefficient_of_variation(std::vector<double>{5, 5, 5}) == 0.0);
  CHECK(coefficient_of_variation(std::vector<double>{1, 3}) == doctest::Approx(0.5));
  CHECK(coefficient_of_variation(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(coefficient_of_variation(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(coefficient_of_variation(std::vector<double>{-1, 1}), doctest::Contains("undefined c_v"),
                       std::domain_error);
}

TEST_CASE("windowed c_v hand cases") {
  CHECK(windowed_cv(std::vector<double>{1, 3, 1, 3}, 2) == doctest::Approx(0.5));
  CHECK(windowed_cv(std::vector<double>{4, 4, 4, 4, 4}, 3) == 0.0);
  const std::vector<double> x{0.2, 0.9, 0.4, 0.4, 0.7};
  CHECK(windowed_cv(x, x.size()) == doctest::Approx(coefficient_of_variation(x)));
  CHECK_THROWS_WITH_AS(windowed_cv(x, 6), doctest::Contains("series too short"), std::invalid_argument);
  CHECK_THROWS_AS(windowed_cv(x, 0), std::invalid_argument);
}

TEST_CASE("zero-mean subsequences are skipped and counted") {
  Diagnostics diag;
  const double v = windowed_cv(std::vector<double>{0, 0, 1, 3}, 2, &diag);
  CHECK(diag.skipped_cv_windows == 1);
  CHECK(v == doctest::Approx(windowed_cv_oracle({0, 0, 1, 3}, 2)));
  CHECK(windowed_cv(std::vector<double>{0, 0, 0}, 2) == 0.0);
}

TEST_CASE("default feature set has 22 named columns") {
  const auto names = feature_names(kDefaultDeltas);
  REQUIRE(names.size() == 22);
  CHECK(names.front() == "cv_clustering_3");
  CHECK(names[11] == "cv_matching_3");
  CHECK(names.back() == "cv_matching_50");
}

TEST_CASE("constant series give an all-zero feature vector") {
  NodeSeries c{"clustering", std::vector<double>(60, 0.5)};
  EdgeSeries m{"matching", {}};
  for (NodeId i = 0; i < 60; ++i) m.entries.push_back({i, i, 0.25});
  const auto f = feature_vector(c, m);
  CHECK(f.values == std::vector<double>(22, 0.0));
}

TEST_CASE("toy network features match an end-to-end recomputation") {
  const auto a = oracle::random_adjacency(60, 0.15, 4);
  const auto g = Graph::from_edges(60, oracle::edge_list(a));
  const std::vector<std::size_t> deltas{3, 5, 10};
  const auto f = feature_vector(clustering_coefficient(g), matching_index(g), deltas);
  const auto c = oracle::clustering(a);
  const auto mu = oracle::matching_series(a);
  REQUIRE(f.values.size() == 6);
  for (std::size_t d = 0; d < 3; ++d) {
    CHECK(f.values[d] == doctest::Approx(windowed_cv_oracle(c, deltas[d])).epsilon(1e-12));
    CHECK(f.values[3 + d] == doctest::Approx(windowed_cv_oracle(mu, deltas[d])).epsilon(1e-12));
  }
}

TEST_CASE("a series shorter than delta names the series") {
  NodeSeries c{"clustering", std::vector<double>(10, 0.5)};
  EdgeSeries m{"matching", {}};
  CHECK_THROWS_WITH_AS(feature_vector(c, m, std::vector<std::size_t>{3}), doctest::Contains("matching"),
                       std::invalid_argument);
}
