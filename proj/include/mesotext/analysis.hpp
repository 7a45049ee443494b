#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mesotext {

/// Principal components of column-standardized data.
struct ProjectionResult {
  Eigen::MatrixXd components;         // k x d_kept, one loading vector per row
  Eigen::VectorXd explained_variance_ratio;  // k entries, non-increasing
  Eigen::VectorXd eigenvalues;        // all d_kept eigenvalues, descending
  Eigen::MatrixXd coordinates;        // rows x k
  std::vector<std::string> labels;    // one per row (may be empty)
  std::vector<Eigen::Index> kept_columns;
  Eigen::VectorXd column_mean;        // per kept column
  Eigen::VectorXd column_scale;       // population std per kept column
  Eigen::MatrixXd standardized;       // rows x d_kept
};

/// Standardizes each column to zero mean and unit population variance,
/// dropping constant columns, and projects onto the top-k eigenvectors of the
/// resulting covariance matrix. Each component's sign is chosen so that its
/// largest-magnitude loading is positive.
/// Throws std::invalid_argument if rows < 2, k == 0 or k > min(rows, kept columns).
ProjectionResult pca(const Eigen::MatrixXd& features, Eigen::Index k,
                     std::vector<std::string> labels = {});

struct ClassDistanceTable {
  std::vector<std::string> classes;
  Eigen::MatrixXd distance;  // symmetric, zero diagonal
};

/// Mean Euclidean distance between points of different classes, using the
/// first `dims` projected coordinates. Throws std::invalid_argument when a
/// class has no points or labels are missing.
ClassDistanceTable class_distance_table(const ProjectionResult& projection,
                                        std::vector<std::string> classes = {"RT", "SW", "SP"},
                                        Eigen::Index dims = 2);

struct KMeansOptions {
  std::size_t restarts = 20;
  std::size_t max_iterations = 300;
};

struct KMeansResult {
  std::vector<int> assignment;
  Eigen::MatrixXd centroids;
  double wcss = 0.0;
  std::vector<double> wcss_history;  // after each assignment step of the kept restart
  std::vector<double> restart_wcss;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding, repeated `restarts` times; the
/// restart with the lowest within-cluster sum of squares wins (ties go to
/// the earlier restart). Deterministic for a given seed.
/// Throws std::invalid_argument when k == 0 or k > rows.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options = {});

/// Within-cluster sum of squared distances to the cluster means.
double within_cluster_ss(const Eigen::MatrixXd& points, std::span<const int> assignment);

/// Hubert-Arabie adjusted Rand index. Two labelings that both put every
/// item in one cluster (or both in singletons) score 1.
/// Throws std::invalid_argument on a length mismatch.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct AccuracyResult {
  double accuracy = 0.0;
  std::vector<int> cluster_values;  // sorted distinct cluster labels
  std::vector<int> class_values;    // sorted distinct class labels
  std::vector<int> mapping;         // cluster index -> class index of the best bijection
  Eigen::MatrixXi confusion;        // rows: classes, cols: clusters
};

/// Best accuracy over all bijections between cluster labels and class
/// labels. Throws std::invalid_argument on a length mismatch or when the
/// numbers of distinct clusters and classes differ.
AccuracyResult clustering_accuracy(std::span<const int> assignment, std::span<const int> truth);

struct ClusteringResult {
  std::vector<int> assignment;
  double ari = 0.0;
  double accuracy = 0.0;
  double misclustered_fraction = 0.0;
  Eigen::MatrixXi confusion;
};

ClusteringResult evaluate_clustering(std::span<const int> assignment, std::span<const int> truth);

}  // namespace mesotext
