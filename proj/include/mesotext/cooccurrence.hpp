#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mesotext/common.hpp"
#include "mesotext/corpus.hpp"
#include "mesotext/graph.hpp"

namespace mesotext {

/// Truncates every text to the smallest total token count in the corpus.
/// Tokens are removed from the end; paragraphs emptied by the cut are dropped.
/// Throws std::invalid_argument on an empty corpus.
std::vector<OrganizedText> trim_to_common_length(std::span<const OrganizedText> corpus);

/// Word-adjacency network: one node per distinct token (in order of first
/// appearance) and an edge between tokens adjacent within a paragraph.
struct CoOccurrenceNetwork {
  Graph graph;
  std::vector<std::string> words;
  std::string source_id;
  TextClass class_label = TextClass::RT;
  std::size_t token_count = 0;
};

/// Throws std::invalid_argument when the text has no tokens.
CoOccurrenceNetwork build_cooccurrence(const OrganizedText& text);

struct SummaryStats {
  double max = 0.0;
  double median = 0.0;
  double min = 0.0;
  double stddev = 0.0;  // population
};

/// max / median / min / population sigma of a nonempty sample.
SummaryStats summarize(std::span<const double> values);

inline constexpr std::array<const char*, 8> kCentralityMeasures{
    "degree",      "clustering", "betweenness", "closeness",
    "eccentricity", "eigenvector", "pagerank",   "neighborhood_connectivity"};

struct CentralitySummary {
  std::array<SummaryStats, kCentralityMeasures.size()> measures{};
  double modularity = 0.0;
  double node_count = 0.0;

  /// 34 values: (max, median, min, std) per measure, then modularity and node count.
  std::vector<double> values() const;
  static std::vector<std::string> names();
};

/// Throws std::invalid_argument for a graph without nodes.
CentralitySummary centrality_summary(const Graph& g);
inline CentralitySummary centrality_summary(const CoOccurrenceNetwork& net) {
  return centrality_summary(net.graph);
}

}  // namespace mesotext
