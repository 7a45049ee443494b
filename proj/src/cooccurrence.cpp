#include "mesotext/cooccurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "mesotext/centrality.hpp"
#include "mesotext/graphmetrics.hpp"

namespace mesotext {

std::vector<OrganizedText> trim_to_common_length(std::span<const OrganizedText> corpus) {
  if (corpus.empty()) throw std::invalid_argument("trim_to_common_length: empty corpus");
  std::size_t shortest = corpus.front().token_count();
  for (const auto& t : corpus) shortest = std::min(shortest, t.token_count());

  std::vector<OrganizedText> out;
  out.reserve(corpus.size());
  for (const auto& t : corpus) {
    OrganizedText trimmed;
    trimmed.source_id = t.source_id;
    trimmed.class_label = t.class_label;
    std::size_t budget = shortest;
    for (std::size_t p = 0; p < t.paragraphs.size() && budget > 0; ++p) {
      const auto& par = t.paragraphs[p];
      const std::size_t take = std::min(budget, par.size());
      trimmed.paragraphs.emplace_back(par.begin(), par.begin() + static_cast<std::ptrdiff_t>(take));
      if (p < t.origin.size()) trimmed.origin.push_back(t.origin[p]);
      budget -= take;
    }
    if (trimmed.origin.size() != trimmed.paragraphs.size()) trimmed.origin.clear();
    out.push_back(std::move(trimmed));
  }
  return out;
}

CoOccurrenceNetwork build_cooccurrence(const OrganizedText& text) {
  CoOccurrenceNetwork net;
  net.source_id = text.source_id;
  net.class_label = text.class_label;
  net.token_count = text.token_count();
  if (net.token_count == 0) throw std::invalid_argument("build_cooccurrence: text has no tokens");

  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;
  for (const auto& par : text.paragraphs) {
    NodeId prev = 0;
    bool has_prev = false;
    for (const auto& w : par) {
      const auto [it, inserted] = index.emplace(w, static_cast<NodeId>(net.words.size()));
      if (inserted) net.words.push_back(w);
      const NodeId cur = it->second;
      if (has_prev && prev != cur) edges.emplace_back(prev, cur);
      prev = cur;
      has_prev = true;
    }
  }
  net.graph = Graph::from_edges(net.words.size(), edges);
  return net;
}

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  SummaryStats s;
  s.min = v.front();
  s.max = v.back();
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  s.stddev = std::sqrt(ss / static_cast<double>(n));
  return s;
}

std::vector<double> CentralitySummary::values() const {
  std::vector<double> out;
  out.reserve(measures.size() * 4 + 2);
  for (const auto& m : measures) {
    out.insert(out.end(), {m.max, m.median, m.min, m.stddev});
  }
  out.push_back(modularity);
  out.push_back(node_count);
  return out;
}

std::vector<std::string> CentralitySummary::names() {
  std::vector<std::string> out;
  for (const char* m : kCentralityMeasures) {
    for (const char* stat : {"max", "median", "min", "std"}) {
      out.push_back(std::string(m) + "_" + stat);
    }
  }
  out.emplace_back("modularity");
  out.emplace_back("node_count");
  return out;
}

CentralitySummary centrality_summary(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("centrality_summary: empty graph");
  const auto paths = path_measures(g);
  const auto degree = degree_centrality(g);
  const auto clustering = clustering_coefficient(g).values;
  const auto eigen = eigenvector_centrality(g);
  const auto pr = pagerank(g);
  const auto knn = neighborhood_connectivity(g);

  CentralitySummary s;
  s.measures[0] = summarize(degree);
  s.measures[1] = summarize(clustering);
  s.measures[2] = summarize(paths.betweenness);
  s.measures[3] = summarize(paths.closeness);
  s.measures[4] = summarize(paths.eccentricity);
  s.measures[5] = summarize(eigen);
  s.measures[6] = summarize(pr);
  s.measures[7] = summarize(knn);
  const auto communities = greedy_modularity_communities(g);
  s.modularity = modularity(g, communities);
  s.node_count = static_cast<double>(g.node_count());
  return s;
}

}  // namespace mesotext
