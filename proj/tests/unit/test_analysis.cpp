#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mesotext/analysis.hpp"
#include "mesotext/rng.hpp"
#include "oracles.hpp"

using namespace mesotext;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = nd(gen) * static_cast<double>(j + 1) + static_cast<double>(j);
  return m;
}

Eigen::MatrixXd blobs(const std::vector<Eigen::Vector2d>& centres, int per_blob, double spread, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, spread);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(centres.size()) * per_blob, 2);
  Eigen::Index r = 0;
  for (const auto& c : centres)
    for (int i = 0; i < per_blob; ++i, ++r) m.row(r) << c.x() + nd(gen), c.y() + nd(gen);
  return m;
}

}  // namespace

TEST_CASE("PCA of collinear points has one component") {
  Eigen::MatrixXd x(5, 2);
  x << 0, 0, 1, 2, 2, 4, 3, 6, 4, 8;
  const auto p = pca(x, 1);
  CHECK(p.explained_variance_ratio(0) == doctest::Approx(1.0));
}

TEST_CASE("PCA of isotropic data spreads variance evenly") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd x(20000, 4);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < 4; ++j) x(i, j) = nd(gen);
  const auto p = pca(x, 4);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(p.explained_variance_ratio(j) == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("all components reconstruct the standardized data") {
  const auto x = random_matrix(30, 6, 2);
  const auto p = pca(x, 6);
  const Eigen::MatrixXd back = p.coordinates * p.components;
  CHECK((back - p.standardized).cwiseAbs().maxCoeff() < 1e-8);
  for (Eigen::Index j = 0; j < p.standardized.cols(); ++j) {
    CHECK(std::abs(p.standardized.col(j).mean()) < 1e-12);
    CHECK(std::sqrt(p.standardized.col(j).squaredNorm() / 30.0) == doctest::Approx(1.0));
  }
  for (Eigen::Index k = 1; k < 6; ++k) CHECK(p.explained_variance_ratio(k) <= p.explained_variance_ratio(k - 1));
}

TEST_CASE("PCA sign convention and constant columns") {
  auto x = random_matrix(12, 3, 8);
  x.col(1).setConstant(3.0);
  const auto p = pca(x, 2);
  CHECK(p.kept_columns == std::vector<Eigen::Index>{0, 2});
  for (Eigen::Index k = 0; k < 2; ++k) {
    Eigen::Index arg;
    p.components.row(k).cwiseAbs().maxCoeff(&arg);
    CHECK(p.components(k, arg) > 0);
  }
  CHECK_THROWS_AS(pca(x, 3), std::invalid_argument);
  CHECK_THROWS_AS(pca(x.topRows(1), 1), std::invalid_argument);
  CHECK_THROWS_AS(pca(x, 0), std::invalid_argument);
}

TEST_CASE("class distance table") {
  ProjectionResult p;
  p.coordinates.resize(4, 2);
  p.coordinates << 0, 0, 0, 0, 3, 4, 3, 4;
  p.labels = {"A", "A", "B", "B"};
  auto t = class_distance_table(p, {"A", "B"});
  CHECK(t.distance(0, 1) == doctest::Approx(5.0));
  CHECK(t.distance(1, 0) == doctest::Approx(5.0));
  CHECK(t.distance(0, 0) == 0.0);

  p.coordinates.bottomRows(2).setZero();
  t = class_distance_table(p, {"A", "B"});
  CHECK(t.distance(0, 1) == 0.0);
  CHECK_THROWS_AS(class_distance_table(p, {"A", "C"}), std::invalid_argument);
}

TEST_CASE("k equal to rows puts each point alone") {
  const auto x = random_matrix(6, 2, 3);
  const auto r = kmeans(x, 6, 1);
  CHECK(r.wcss == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<int> sorted = r.assignment;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(kmeans(x, 7, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans(x, 0, 1), std::invalid_argument);
}

TEST_CASE("two separated blobs are recovered") {
  const auto x = blobs({{0, 0}, {50, 50}}, 20, 1.0, 4);
  const auto r = kmeans(x, 2, 9);
  std::vector<int> truth(40, 0);
  std::fill(truth.begin() + 20, truth.end(), 1);
  CHECK(adjusted_rand_index(r.assignment, truth) == doctest::Approx(1.0));
}

TEST_CASE("k-means beats random partitions of three blobs") {
  const auto x = blobs({{0, 0}, {20, 0}, {0, 20}}, 15, 2.0, 6);
  const auto r = kmeans(x, 3, 2);
  CHECK(r.wcss == doctest::Approx(within_cluster_ss(x, r.assignment)));
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> random(45);
    for (auto& a : random) a = static_cast<int>(rng.below(3));
    CHECK(r.wcss <= within_cluster_ss(x, random) + 1e-9);
  }
}

TEST_CASE("k-means is deterministic per seed and keeps the best restart") {
  const auto x = random_matrix(40, 3, 10);
  const auto a = kmeans(x, 4, 123), b = kmeans(x, 4, 123);
  CHECK(a.assignment == b.assignment);
  CHECK(a.wcss == b.wcss);
  REQUIRE(a.restart_wcss.size() == 20);
  for (double w : a.restart_wcss) CHECK(a.wcss <= w);
}

TEST_CASE("ARI hand case matches pair counting") {
  const std::vector<int> a{0, 0, 1, 1, 2, 2}, b{0, 0, 0, 1, 1, 1};
  CHECK(adjusted_rand_index(a, b) == doctest::Approx(oracle::ari_pairs(a, b)).epsilon(1e-14));
  CHECK(adjusted_rand_index(a, b) == doctest::Approx(0.8 / 3.3));
}

TEST_CASE("ARI identities") {
  const std::vector<int> a{0, 1, 1, 2, 0, 2, 2};
  CHECK(adjusted_rand_index(a, a) == doctest::Approx(1.0));
  CHECK(adjusted_rand_index(std::vector<int>(7, 4), a) == doctest::Approx(0.0));
  CHECK_THROWS_AS(adjusted_rand_index(a, std::vector<int>{0}), std::invalid_argument);
}

TEST_CASE("accuracy uses the best bijection") {
  const std::vector<int> truth{0, 0, 1, 1, 2, 2};
  CHECK(clustering_accuracy(truth, truth).accuracy == 1.0);
  CHECK(clustering_accuracy(std::vector<int>{2, 2, 0, 0, 1, 1}, truth).accuracy == 1.0);
  Rng rng(5);
  std::vector<int> t(30), a(30);
  for (int i = 0; i < 30; ++i) {
    t[static_cast<std::size_t>(i)] = i % 3;
    a[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(3));
  }
  a[0] = 0, a[1] = 1, a[2] = 2;
  CHECK(clustering_accuracy(a, t).accuracy == doctest::Approx(oracle::accuracy_permutations(a, t, 3)));
  CHECK_THROWS_AS(clustering_accuracy(std::vector<int>{0, 0, 0}, std::vector<int>{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("evaluate_clustering reports the misclustered fraction") {
  const std::vector<int> truth{0, 0, 1, 1, 2, 2}, got{1, 1, 0, 2, 2, 2};
  const auto r = evaluate_clustering(got, truth);
  CHECK(r.accuracy == doctest::Approx(5.0 / 6.0));
  CHECK(r.misclustered_fraction == doctest::Approx(1.0 / 6.0));
  CHECK(r.confusion.sum() == 6);
}
