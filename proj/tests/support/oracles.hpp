#pragma once

// Independent reference implementations used as test oracles. They follow
// the textbook definitions directly, favouring clarity over speed, and share
// no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix random_adjacency(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(p);
  Matrix a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(gen)) a[i][j] = a[j][i] = 1;
  return a;
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list(const Matrix& a) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i][j]) e.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return e;
}

inline int degree(const Matrix& a, std::size_t i) { return std::accumulate(a[i].begin(), a[i].end(), 0); }

// Eq. 4 by enumerating every triple centred on i.
inline std::vector<double> clustering(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long triangles = 0, triples = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (j == i || k == i || !a[i][j] || !a[i][k]) continue;
        ++triples;
        if (a[j][k]) ++triangles;
      }
    c[i] = triples ? static_cast<double>(triangles) / static_cast<double>(triples) : 0.0;
  }
  return c;
}

// Eq. 5 for edge (i, j).
inline double matching(const Matrix& a, std::size_t i, std::size_t j) {
  int common = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (k != i && k != j && a[i][k] && a[j][k]) ++common;
  const int denom = (degree(a, i) - 1) + (degree(a, j) - 1);
  return denom > 0 ? static_cast<double>(common) / denom : 0.0;
}

// Ordered-pair scan of every edge: (i, j, mu) for i != j adjacent, row-major.
inline std::vector<double> matching_series(const Matrix& a) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && a[i][j]) out.push_back(matching(a, i, j));
  return out;
}

// Betweenness by enumerating every shortest path explicitly.
inline void all_shortest_paths(const Matrix& a, std::size_t s, std::size_t t, std::vector<std::size_t>& path,
                               std::vector<std::vector<std::size_t>>& out, const std::vector<int>& dist_to_t) {
  const std::size_t v = path.back();
  if (v == t) {
    out.push_back(path);
    return;
  }
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[v][w] && dist_to_t[w] == dist_to_t[v] - 1) {
      path.push_back(w);
      all_shortest_paths(a, s, t, path, out, dist_to_t);
      path.pop_back();
    }
}

inline std::vector<int> bfs_distances(const Matrix& a, std::size_t src) {
  std::vector<int> d(a.size(), -1);
  std::deque<std::size_t> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (std::size_t w = 0; w < a.size(); ++w)
      if (a[v][w] && d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
  }
  return d;
}

inline std::vector<double> betweenness(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<double> b(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      const auto dt = bfs_distances(a, t);
      if (dt[s] < 0) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> path{s};
      all_shortest_paths(a, s, t, path, paths, dt);
      for (const auto& p : paths)
        for (std::size_t k = 1; k + 1 < p.size(); ++k) b[p[k]] += 1.0 / static_cast<double>(paths.size());
    }
  return b;
}

// ARI from pair counting over all unordered pairs.
inline double ari_pairs(const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t n = x.size();
  double both = 0, in_x = 0, in_y = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sx = x[i] == x[j], sy = y[i] == y[j];
      both += sx && sy;
      in_x += sx;
      in_y += sy;
      pairs += 1;
    }
  const double expected = in_x * in_y / pairs;
  const double maximum = 0.5 * (in_x + in_y);
  if (maximum == expected) return 1.0;
  return (both - expected) / (maximum - expected);
}

// Best-bijection accuracy by trying every permutation of cluster labels.
inline double accuracy_permutations(const std::vector<int>& assignment, const std::vector<int>& truth, int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hit += perm[static_cast<std::size_t>(assignment[i])] == truth[i];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

// Paragraph count of a file by a line scan: a paragraph starts at a
// non-blank line that follows a blank line or the start of the file.
inline std::size_t blank_line_blocks(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t blocks = 0;
  bool previous_blank = true;
  while (std::getline(in, line)) {
    const bool blank = line.find_first_not_of(" \t\r\f\v") == std::string::npos;
    if (!blank && previous_blank) ++blocks;
    previous_blank = blank;
  }
  return blocks;
}

inline double population_cv(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size())) / m;
}

}  // namespace oracle
