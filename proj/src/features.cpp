#include "mesotext/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mesotext {
namespace {

// Returns false when the mean is zero.
bool cv_of(std::span<const double> x, double& out) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / static_cast<double>(x.size());
  if (mean == 0.0) return false;
  if (*lo == *hi) {
    out = 0.0;
    return true;
  }
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  out = std::sqrt(ss / static_cast<double>(x.size())) / mean;
  return true;
}

}  // namespace

double coefficient_of_variation(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("coefficient_of_variation: empty series");
  double cv = 0.0;
  if (!cv_of(x, cv)) throw std::domain_error("undefined c_v: series mean is zero");
  return cv;
}

double windowed_cv(std::span<const double> x, std::size_t delta, Diagnostics* diag) {
  if (delta == 0) throw std::invalid_argument("windowed_cv: delta must be >= 1");
  if (x.size() < delta) {
    throw std::invalid_argument("series too short: length " + std::to_string(x.size()) +
                                " < delta " + std::to_string(delta));
  }
  const std::size_t windows = x.size() - delta + 1;
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < windows; ++k) {
    double cv = 0.0;
    if (cv_of(x.subspan(k, delta), cv)) {
      total += cv;
      ++used;
    }
  }
  if (diag) diag->skipped_cv_windows += windows - used;
  return used == 0 ? 0.0 : total / static_cast<double>(used);
}

std::vector<std::string> feature_names(std::span<const std::size_t> deltas) {
  std::vector<std::string> names;
  for (const char* m : {"clustering", "matching"}) {
    for (auto d : deltas) names.push_back("cv_" + std::string(m) + "_" + std::to_string(d));
  }
  return names;
}

FeatureVector feature_vector(const NodeSeries& clustering, const EdgeSeries& matching,
                             std::span<const std::size_t> deltas, Diagnostics* diag) {
  FeatureVector fv;
  fv.values.reserve(2 * deltas.size());
  const auto match_values = matching.values();
  auto add = [&](std::span<const double> series, const char* name) {
    for (auto d : deltas) {
      if (series.size() < d) {
        throw std::invalid_argument("series too short: " + std::string(name) + " series has " +
                                    std::to_string(series.size()) + " values, delta=" +
                                    std::to_string(d));
      }
      fv.values.push_back(windowed_cv(series, d, diag));
    }
  };
  add(clustering.values, "clustering");
  add(match_values, "matching");
  return fv;
}

}  // namespace mesotext
