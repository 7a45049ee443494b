#include "mesotext/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace mesotext {

std::vector<double> degree_centrality(const Graph& g) {
  std::vector<double> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = static_cast<double>(g.degree(v));
  return out;
}

PathMeasures path_measures(const Graph& g) {
  const std::size_t n = g.node_count();
  PathMeasures pm{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                  std::vector<double>(n, 0.0)};
  std::vector<int> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  std::vector<NodeId> queue;
  order.reserve(n);
  queue.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    queue.assign({s});
    dist[s] = 0;
    sigma[s] = 1.0;
    double harmonic = 0.0;
    int ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      order.push_back(v);
      if (v != s) harmonic += 1.0 / dist[v];
      ecc = std::max(ecc, dist[v]);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // Brandes dependency accumulation in reverse BFS order.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) pm.betweenness[w] += delta[w];
    }
    pm.closeness[s] = n > 1 ? harmonic / static_cast<double>(n - 1) : 0.0;
    pm.eccentricity[s] = ecc;
  }
  for (auto& b : pm.betweenness) b /= 2.0;
  return pm;
}

std::vector<double> eigenvector_centrality(const Graph& g, double tolerance,
                                           std::size_t max_iterations) {
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 0.0);
  if (n == 0) return x;
  const auto comp = connected_components(g);
  const std::uint32_t n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> sizes(n_comp, 0);
  for (auto c : comp) ++sizes[c];
  // max_element returns the first maximum, i.e. the component with the smallest node.
  const auto largest = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> members;
  for (NodeId v = 0; v < n; ++v) {
    if (comp[v] == largest) members.push_back(v);
  }
  const double init = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (NodeId v : members) x[v] = init;
  std::vector<double> y(n, 0.0);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double norm2 = 0.0;
    for (NodeId v : members) {
      double s = x[v];
      for (NodeId u : g.neighbors(v)) s += x[u];
      y[v] = s;
      norm2 += s * s;
    }
    const double norm = std::sqrt(norm2);
    double change = 0.0;
    for (NodeId v : members) {
      y[v] /= norm;
      change = std::max(change, std::abs(y[v] - x[v]));
    }
    std::swap(x, y);
    if (change < tolerance) break;
  }
  return x;
}

std::vector<double> pagerank(const Graph& g, double damping, double tolerance,
                             std::size_t max_iterations) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  const double nd = static_cast<double>(n);
  std::vector<double> pr(n, 1.0 / nd);
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (g.degree(v) == 0) dangling += pr[v];
    }
    const double base = (1.0 - damping) / nd + damping * dangling / nd;
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double s = 0.0;
      for (NodeId u : g.neighbors(v)) s += pr[u] / static_cast<double>(g.degree(u));
      next[v] = base + damping * s;
      change += std::abs(next[v] - pr[v]);
    }
    std::swap(pr, next);
    if (change < tolerance) break;
  }
  const double total = std::accumulate(pr.begin(), pr.end(), 0.0);
  for (auto& p : pr) p /= total;
  return pr;
}

std::vector<double> neighborhood_connectivity(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) continue;
    double s = 0.0;
    for (NodeId u : g.neighbors(v)) s += static_cast<double>(g.degree(u));
    out[v] = s / static_cast<double>(g.degree(v));
  }
  return out;
}

std::vector<std::uint32_t> greedy_modularity_communities(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> owner(n);
  std::iota(owner.begin(), owner.end(), 0u);
  const std::size_t m = g.edge_count();
  if (m == 0) return owner;

  const double two_m = 2.0 * static_cast<double>(m);
  std::vector<double> a(n);
  for (NodeId v = 0; v < n; ++v) a[v] = static_cast<double>(g.degree(v)) / two_m;

  // dq[c][d]: modularity gain of merging communities c and d (connected pairs only).
  std::vector<std::map<std::uint32_t, double>> dq(n);
  using Entry = std::tuple<double, std::uint32_t, std::uint32_t>;
  auto worse = [](const Entry& x, const Entry& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return std::make_pair(std::get<1>(x), std::get<2>(x)) > std::make_pair(std::get<1>(y), std::get<2>(y));
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (auto [i, j] : g.edges()) {
    const double gain = 2.0 * (1.0 / two_m - a[i] * a[j]);
    dq[i][j] = gain;
    dq[j][i] = gain;
    heap.emplace(gain, i, j);
  }

  std::vector<bool> alive(n, true);
  std::vector<std::vector<NodeId>> members(n);
  for (NodeId v = 0; v < n; ++v) members[v] = {v};

  while (!heap.empty()) {
    const auto [gain, c, d] = heap.top();
    heap.pop();
    if (!alive[c] || !alive[d]) continue;
    const auto it = dq[c].find(d);
    if (it == dq[c].end() || it->second != gain) continue;  // stale entry
    if (!(gain > 0.0)) break;

    // Merge d into c (c < d).
    std::map<std::uint32_t, double> merged;
    for (const auto& [k, v] : dq[c]) {
      if (k == d) continue;
      const auto jd = dq[d].find(k);
      merged[k] = jd != dq[d].end() ? v + jd->second : v - 2.0 * a[d] * a[k];
    }
    for (const auto& [k, v] : dq[d]) {
      if (k == c || dq[c].contains(k)) continue;
      merged[k] = v - 2.0 * a[c] * a[k];
    }
    for (const auto& [k, v] : dq[d]) dq[k].erase(d);
    dq[d].clear();
    alive[d] = false;
    a[c] += a[d];
    a[d] = 0.0;
    members[c].insert(members[c].end(), members[d].begin(), members[d].end());
    members[d].clear();
    dq[c] = std::move(merged);
    for (const auto& [k, v] : dq[c]) {
      dq[k][c] = v;
      heap.emplace(v, std::min(c, k), std::max(c, k));
    }
  }

  std::vector<std::uint32_t> label(n);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (NodeId v : members[c]) label[v] = c;
  }
  // Renumber by first appearance.
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (NodeId v = 0; v < n; ++v) {
    const auto [it, inserted] = renumber.emplace(label[v], static_cast<std::uint32_t>(renumber.size()));
    label[v] = it->second;
  }
  return label;
}

double modularity(const Graph& g, std::span<const std::uint32_t> community) {
  if (community.size() != g.node_count()) {
    throw std::invalid_argument("modularity: partition size differs from node count");
  }
  const std::size_t m = g.edge_count();
  if (m == 0) return 0.0;
  const std::uint32_t k = community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> internal(k, 0.0);
  std::vector<double> degree(k, 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) degree[community[v]] += static_cast<double>(g.degree(v));
  for (auto [i, j] : g.edges()) {
    if (community[i] == community[j]) internal[community[i]] += 1.0;
  }
  const double md = static_cast<double>(m);
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double frac = degree[c] / (2.0 * md);
    q += internal[c] / md - frac * frac;
  }
  return q;
}

}  // namespace mesotext
