#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mesotext/common.hpp"
#include "mesotext/graphmetrics.hpp"

namespace mesotext {

/// sigma(x) / mean(x) with the population standard deviation.
/// Throws std::invalid_argument for an empty series and std::domain_error
/// ("undefined c_v") when the mean is zero. Constant series give exactly 0.
double coefficient_of_variation(std::span<const double> x);

/// Mean coefficient of variation over all stride-1 subsequences of length
/// `delta`. Zero-mean subsequences are skipped (counted in
/// diag->skipped_cv_windows); if every subsequence is skipped the result is 0.
/// Throws std::invalid_argument ("series too short") when x.size() < delta,
/// or when delta == 0.
double windowed_cv(std::span<const double> x, std::size_t delta, Diagnostics* diag = nullptr);

inline const std::vector<std::size_t> kDefaultDeltas{3, 5, 7, 10, 15, 20, 25, 30, 35, 40, 50};

struct FeatureProvenance {
  std::string source_id;
  TextClass class_label = TextClass::RT;
  std::size_t delta = 0;
  double threshold = 0.0;
};

/// Windowed c_v features: one value per delta for the clustering series,
/// followed by one value per delta for the matching-index series.
struct FeatureVector {
  std::vector<double> values;
  FeatureProvenance provenance;
};

/// Column names in FeatureVector order: cv_clustering_<delta>..., cv_matching_<delta>...
std::vector<std::string> feature_names(std::span<const std::size_t> deltas);

/// Throws std::invalid_argument naming the series and delta when a series is
/// shorter than a requested delta.
FeatureVector feature_vector(const NodeSeries& clustering, const EdgeSeries& matching,
                             std::span<const std::size_t> deltas = kDefaultDeltas,
                             Diagnostics* diag = nullptr);

}  // namespace mesotext
