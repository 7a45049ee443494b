#include "mesotext/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mesotext/rng.hpp"

namespace mesotext {

ProjectionResult pca(const Eigen::MatrixXd& features, Eigen::Index k, std::vector<std::string> labels) {
  const Eigen::Index rows = features.rows();
  if (rows < 2) throw std::invalid_argument("pca: need at least 2 rows");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != rows) {
    throw std::invalid_argument("pca: label count differs from row count");
  }
  if (k < 1 || k > std::min(rows, features.cols())) {
    throw std::invalid_argument("pca: k=" + std::to_string(k) + " exceeds min(rows, cols)");
  }

  ProjectionResult r;
  r.labels = std::move(labels);
  const Eigen::RowVectorXd mean = features.colwise().mean();
  const Eigen::MatrixXd centered = features.rowwise() - mean;
  const Eigen::RowVectorXd scale =
      (centered.array().square().colwise().sum() / static_cast<double>(rows)).sqrt();
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    if (scale(c) > 1e-12 * (1.0 + std::abs(mean(c)))) r.kept_columns.push_back(c);
  }
  const auto d = static_cast<Eigen::Index>(r.kept_columns.size());
  if (k > d) {
    throw std::invalid_argument("pca: k=" + std::to_string(k) + " exceeds the " +
                                std::to_string(d) + " non-constant columns");
  }
  r.column_mean.resize(d);
  r.column_scale.resize(d);
  r.standardized.resize(rows, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto src = r.kept_columns[static_cast<std::size_t>(c)];
    r.column_mean(c) = mean(src);
    r.column_scale(c) = scale(src);
    r.standardized.col(c) = centered.col(src) / scale(src);
  }

  const Eigen::MatrixXd cov = r.standardized.transpose() * r.standardized / static_cast<double>(rows);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd values = solver.eigenvalues().reverse().cwiseMax(0.0);
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();
  r.eigenvalues = values;
  const double total = values.sum();
  r.explained_variance_ratio = values.head(k) / (total > 0.0 ? total : 1.0);
  r.components.resize(k, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::VectorXd v = vectors.col(i);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    r.components.row(i) = v.transpose();
  }
  r.coordinates = r.standardized * r.components.transpose();
  return r;
}

ClassDistanceTable class_distance_table(const ProjectionResult& projection,
                                        std::vector<std::string> classes, Eigen::Index dims) {
  const Eigen::Index rows = projection.coordinates.rows();
  if (static_cast<Eigen::Index>(projection.labels.size()) != rows) {
    throw std::invalid_argument("class_distance_table: every point needs a label");
  }
  if (dims < 1 || dims > projection.coordinates.cols()) {
    throw std::invalid_argument("class_distance_table: projection has fewer than " +
                                std::to_string(dims) + " components");
  }
  const auto n_classes = static_cast<Eigen::Index>(classes.size());
  std::vector<std::vector<Eigen::Index>> members(classes.size());
  for (Eigen::Index p = 0; p < rows; ++p) {
    const auto it = std::find(classes.begin(), classes.end(), projection.labels[static_cast<std::size_t>(p)]);
    if (it != classes.end()) members[static_cast<std::size_t>(it - classes.begin())].push_back(p);
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (members[c].empty()) throw std::invalid_argument("class '" + classes[c] + "' has no points");
  }
  ClassDistanceTable t{std::move(classes), Eigen::MatrixXd::Zero(n_classes, n_classes)};
  const auto coords = projection.coordinates.leftCols(dims);
  for (Eigen::Index a = 0; a < n_classes; ++a) {
    for (Eigen::Index b = a + 1; b < n_classes; ++b) {
      double sum = 0.0;
      for (auto p : members[static_cast<std::size_t>(a)]) {
        for (auto q : members[static_cast<std::size_t>(b)]) sum += (coords.row(p) - coords.row(q)).norm();
      }
      const double mean = sum / static_cast<double>(members[static_cast<std::size_t>(a)].size() *
                                                    members[static_cast<std::size_t>(b)].size());
      t.distance(a, b) = mean;
      t.distance(b, a) = mean;
    }
  }
  return t;
}

namespace {

struct LloydRun {
  std::vector<int> assignment;
  Eigen::MatrixXd centroids;
  std::vector<double> history;
  std::size_t iterations = 0;
};

Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& x, std::size_t k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd c(static_cast<Eigen::Index>(k), x.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  c.row(0) = x.row(first);
  chosen[static_cast<std::size_t>(first)] = true;
  Eigen::VectorXd d2 = (x.rowwise() - c.row(0)).rowwise().squaredNorm();
  for (std::size_t m = 1; m < k; ++m) {
    const double total = d2.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (d2(i) > 0.0 && u < acc) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {  // rounding at the top end
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2(i) > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All remaining points coincide with a centre: take an unused row uniformly.
      std::vector<Eigen::Index> unused;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) unused.push_back(i);
      }
      pick = unused[static_cast<std::size_t>(rng.below(unused.size()))];
    }
    chosen[static_cast<std::size_t>(pick)] = true;
    c.row(static_cast<Eigen::Index>(m)) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - c.row(static_cast<Eigen::Index>(m))).rowwise().squaredNorm());
  }
  return c;
}

LloydRun lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centroids, std::size_t max_iterations) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = centroids.rows();
  LloydRun run;
  run.assignment.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < k; ++c) {
        const double dd = (x.row(i) - centroids.row(c)).squaredNorm();
        if (dd < best_d) {
          best_d = dd;
          best = static_cast<int>(c);
        }
      }
      auto& slot = run.assignment[static_cast<std::size_t>(i)];
      if (slot != best) changed = true;
      slot = best;
      dist[static_cast<std::size_t>(i)] = best_d;
    }
    // An empty cluster takes over the point farthest from its centre.
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int a : run.assignment) ++sizes[static_cast<std::size_t>(a)];
    for (Eigen::Index c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) continue;
      std::size_t far = 0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        if (sizes[static_cast<std::size_t>(run.assignment[i])] > 1 && dist[i] > dist[far]) far = i;
      }
      --sizes[static_cast<std::size_t>(run.assignment[far])];
      run.assignment[far] = static_cast<int>(c);
      ++sizes[static_cast<std::size_t>(c)];
      dist[far] = 0.0;
      centroids.row(c) = x.row(static_cast<Eigen::Index>(far));
      changed = true;
    }
    run.history.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));
    run.iterations = it + 1;
    if (!changed && it > 0) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) sums.row(run.assignment[static_cast<std::size_t>(i)]) += x.row(i);
    for (Eigen::Index c = 0; c < k; ++c) {
      centroids.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
    }
  }
  run.centroids = std::move(centroids);
  return run;
}

}  // namespace

double within_cluster_ss(const Eigen::MatrixXd& points, std::span<const int> assignment) {
  if (static_cast<Eigen::Index>(assignment.size()) != points.rows()) {
    throw std::invalid_argument("within_cluster_ss: assignment length differs from row count");
  }
  std::map<int, std::pair<Eigen::RowVectorXd, std::size_t>> sums;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    auto [it, inserted] = sums.try_emplace(assignment[static_cast<std::size_t>(i)],
                                           Eigen::RowVectorXd::Zero(points.cols()), 0);
    it->second.first += points.row(i);
    ++it->second.second;
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const auto& [sum, count] = sums.at(assignment[static_cast<std::size_t>(i)]);
    total += (points.row(i) - sum / static_cast<double>(count)).squaredNorm();
  }
  return total;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options) {
  if (k == 0) throw std::invalid_argument("kmeans: k must be >= 1");
  if (k > static_cast<std::size_t>(points.rows())) {
    throw std::invalid_argument("kmeans: k=" + std::to_string(k) + " exceeds the " +
                                std::to_string(points.rows()) + " points");
  }
  KMeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, "kmeans-restart-" + std::to_string(r)));
    auto run = lloyd(points, seed_centroids(points, k, rng), std::max<std::size_t>(1, options.max_iterations));
    const double wcss = within_cluster_ss(points, run.assignment);
    best.restart_wcss.push_back(wcss);
    if (wcss < best.wcss) {
      best.wcss = wcss;
      best.assignment = std::move(run.assignment);
      best.centroids = std::move(run.centroids);
      best.wcss_history = std::move(run.history);
      best.iterations = run.iterations;
      best.best_restart = r;
    }
  }
  return best;
}

namespace {

double choose2(double x) { return x * (x - 1.0) / 2.0; }

std::vector<int> distinct(std::span<const int> v) {
  std::vector<int> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t position(const std::vector<int>& sorted, int value) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
  const auto va = distinct(a);
  const auto vb = distinct(b);
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(va.size()),
                                                static_cast<Eigen::Index>(vb.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    table(static_cast<Eigen::Index>(position(va, a[i])), static_cast<Eigen::Index>(position(vb, b[i]))) += 1.0;
  }
  double index = 0.0;
  for (Eigen::Index i = 0; i < table.size(); ++i) index += choose2(table.data()[i]);
  double sum_a = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) sum_a += choose2(table.row(i).sum());
  double sum_b = 0.0;
  for (Eigen::Index j = 0; j < table.cols(); ++j) sum_b += choose2(table.col(j).sum());
  const double pairs = choose2(static_cast<double>(a.size()));
  if (pairs == 0.0) return 1.0;
  const double expected = sum_a * sum_b / pairs;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

AccuracyResult clustering_accuracy(std::span<const int> assignment, std::span<const int> truth) {
  if (assignment.size() != truth.size()) throw std::invalid_argument("clustering_accuracy: length mismatch");
  AccuracyResult r;
  r.cluster_values = distinct(assignment);
  r.class_values = distinct(truth);
  if (r.cluster_values.size() != r.class_values.size()) {
    throw std::invalid_argument("clustering_accuracy: " + std::to_string(r.cluster_values.size()) +
                                " clusters but " + std::to_string(r.class_values.size()) + " classes");
  }
  const auto k = static_cast<Eigen::Index>(r.class_values.size());
  if (k > 10) throw std::invalid_argument("clustering_accuracy: more than 10 classes");
  r.confusion = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    r.confusion(static_cast<Eigen::Index>(position(r.class_values, truth[i])),
                static_cast<Eigen::Index>(position(r.cluster_values, assignment[i]))) += 1;
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  long best = -1;
  do {
    long hits = 0;
    for (Eigen::Index c = 0; c < k; ++c) hits += r.confusion(perm[static_cast<std::size_t>(c)], c);
    if (hits > best) {
      best = hits;
      r.mapping = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  r.accuracy = truth.empty() ? 1.0 : static_cast<double>(best) / static_cast<double>(truth.size());
  return r;
}

ClusteringResult evaluate_clustering(std::span<const int> assignment, std::span<const int> truth) {
  ClusteringResult r;
  r.assignment.assign(assignment.begin(), assignment.end());
  r.ari = adjusted_rand_index(assignment, truth);
  const auto acc = clustering_accuracy(assignment, truth);
  r.accuracy = acc.accuracy;
  r.misclustered_fraction = 1.0 - acc.accuracy;
  r.confusion = acc.confusion;
  return r;
}

}  // namespace mesotext
