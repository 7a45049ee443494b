#include "mesotext/layout.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "mesotext/rng.hpp"
#include "parallel.hpp"

namespace mesotext {
namespace {

constexpr double kMinDistance = 1e-9;
constexpr double kPi = 3.14159265358979323846;

// Unit vector from b to a; coincident points get a deterministic direction
// that is opposite for the two members of the pair.
Point direction(const Point& a, const Point& b, NodeId ia, NodeId ib, double& dist) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  dist = std::hypot(dx, dy);
  if (dist > kMinDistance) return {dx / dist, dy / dist};
  dist = kMinDistance;
  const NodeId lo = std::min(ia, ib);
  const NodeId hi = std::max(ia, ib);
  const auto h = mix64((static_cast<std::uint64_t>(lo) << 32) | hi);
  double angle = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 * kPi;
  if (ia != lo) angle += kPi;
  return {std::cos(angle), std::sin(angle)};
}

Point net_force(const Graph& g, std::span<const Point> pos, NodeId v, double k) {
  const double k2 = k * k;
  Point f;
  const auto n = static_cast<NodeId>(pos.size());
  for (NodeId u = 0; u < n; ++u) {
    if (u == v) continue;
    double d = 0.0;
    const Point dir = direction(pos[v], pos[u], v, u, d);
    const double rep = k2 / d;
    f.x += dir.x * rep;
    f.y += dir.y * rep;
  }
  for (NodeId u : g.neighbors(v)) {
    double d = 0.0;
    const Point dir = direction(pos[v], pos[u], v, u, d);
    const double att = d * d / k;
    f.x -= dir.x * att;
    f.y -= dir.y * att;
  }
  return f;
}

}  // namespace

LayoutResult fr_layout(const Graph& g, const LayoutOptions& options) {
  const std::size_t n = g.node_count();
  LayoutResult r;
  r.positions.resize(n);
  Rng rng(options.seed);
  for (auto& p : r.positions) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  if (n < 2) return r;

  const double k = std::sqrt(1.0 / static_cast<double>(n));
  std::vector<Point> force(n);
  std::vector<double> moved(n);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const double temperature =
        options.initial_temperature * (1.0 - static_cast<double>(it) / static_cast<double>(options.iterations));
    detail::parallel_for(n, options.workers, [&](std::size_t v) {
      force[v] = net_force(g, r.positions, static_cast<NodeId>(v), k);
    });
    for (std::size_t v = 0; v < n; ++v) {
      const double len = std::hypot(force[v].x, force[v].y);
      if (len <= 0.0) {
        moved[v] = 0.0;
        continue;
      }
      const double step = std::min(len, temperature);
      r.positions[v].x += force[v].x / len * step;
      r.positions[v].y += force[v].y / len * step;
      moved[v] = step;
    }
    r.iterations = it + 1;
    r.max_displacement = *std::max_element(moved.begin(), moved.end());
  }
  return r;
}

double force_imbalance(const Graph& g, std::span<const Point> positions) {
  if (positions.size() != g.node_count()) {
    throw std::invalid_argument("force_imbalance: positions do not match the graph");
  }
  const std::size_t n = positions.size();
  if (n < 2) return 0.0;
  const double k = std::sqrt(1.0 / static_cast<double>(n));
  double sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const Point f = net_force(g, positions, v, k);
    sum += f.x * f.x + f.y * f.y;
  }
  return std::sqrt(sum);
}

std::vector<double> principal_axis_projection(std::span<const Point> positions) {
  const std::size_t n = positions.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : positions) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : positions) {
    const Eigen::Vector2d d(p.x - mx, p.y - my);
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  const Eigen::Vector2d axis = solver.eigenvectors().col(1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (positions[i].x - mx) * axis(0) + (positions[i].y - my) * axis(1);
  }
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  if (a.size() < 2) return 0.0;
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

namespace {

using Rgb = std::array<int, 3>;

constexpr Rgb kViridis[] = {{0x44, 0x01, 0x54}, {0x21, 0x91, 0x8c}, {0xfd, 0xe7, 0x25}};

constexpr Rgb kTab20[] = {
    {0x1f, 0x77, 0xb4}, {0xae, 0xc7, 0xe8}, {0xff, 0x7f, 0x0e}, {0xff, 0xbb, 0x78}, {0x2c, 0xa0, 0x2c},
    {0x98, 0xdf, 0x8a}, {0xd6, 0x27, 0x28}, {0xff, 0x98, 0x96}, {0x94, 0x67, 0xbd}, {0xc5, 0xb0, 0xd5},
    {0x8c, 0x56, 0x4b}, {0xc4, 0x9c, 0x94}, {0xe3, 0x77, 0xc2}, {0xf7, 0xb6, 0xd2}, {0x7f, 0x7f, 0x7f},
    {0xc7, 0xc7, 0xc7}, {0xbc, 0xbd, 0x22}, {0xdb, 0xdb, 0x8d}, {0x17, 0xbe, 0xcf}, {0x9e, 0xda, 0xe5}};

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

// t in [0, 1]
std::string viridis(double t) {
  t = std::clamp(t, 0.0, 1.0) * 2.0;
  const int seg = t >= 1.0 ? 1 : 0;
  const double f = t - seg;
  Rgb c{};
  for (int ch = 0; ch < 3; ++ch) {
    c[static_cast<std::size_t>(ch)] = static_cast<int>(std::lround(
        kViridis[seg][static_cast<std::size_t>(ch)] * (1.0 - f) + kViridis[seg + 1][static_cast<std::size_t>(ch)] * f));
  }
  return hex(c);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string export_svg(const MesoscopicNetwork& net, const LayoutResult& layout, const Coloring& coloring,
                       const SvgOptions& o) {
  const std::size_t n = net.node_count();
  if (layout.positions.size() != n) throw std::invalid_argument("export_svg: layout does not match the network");
  if (coloring.kind == Coloring::Kind::Chapter && net.chapter.size() != n) {
    throw std::invalid_argument("export_svg: chapter coloring needs chapter labels for every node");
  }
  if (coloring.kind == Coloring::Kind::NodeValues && coloring.values.size() != n) {
    throw std::invalid_argument("export_svg: value series length differs from the node count");
  }

  std::vector<std::string> fill(n);
  std::vector<std::pair<std::string, std::string>> legend;  // (label, colour)
  switch (coloring.kind) {
    case Coloring::Kind::Position: {
      for (std::size_t v = 0; v < n; ++v) {
        fill[v] = viridis(n > 1 ? static_cast<double>(v) / static_cast<double>(n - 1) : 0.0);
      }
      legend = {{"first window", viridis(0.0)}, {"middle", viridis(0.5)}, {"last window", viridis(1.0)}};
      break;
    }
    case Coloring::Kind::Chapter: {
      std::vector<std::string> seen;
      for (std::size_t v = 0; v < n; ++v) {
        auto it = std::find(seen.begin(), seen.end(), net.chapter[v]);
        if (it == seen.end()) {
          seen.push_back(net.chapter[v]);
          it = seen.end() - 1;
        }
        fill[v] = hex(kTab20[static_cast<std::size_t>(it - seen.begin()) % std::size(kTab20)]);
      }
      for (std::size_t c = 0; c < seen.size(); ++c) {
        legend.emplace_back("chapter " + seen[c], hex(kTab20[c % std::size(kTab20)]));
      }
      break;
    }
    case Coloring::Kind::NodeValues: {
      const auto [lo, hi] = n ? std::minmax_element(coloring.values.begin(), coloring.values.end())
                              : std::make_pair(coloring.values.end(), coloring.values.end());
      const double vmin = n ? *lo : 0.0;
      const double vmax = n ? *hi : 0.0;
      const double span = vmax - vmin;
      for (std::size_t v = 0; v < n; ++v) {
        fill[v] = viridis(span > 0.0 ? (coloring.values[v] - vmin) / span : 0.0);
      }
      const std::string name = coloring.label.empty() ? "value" : coloring.label;
      legend = {{name + " = " + num(vmin), viridis(0.0)}};
      if (span > 0.0) legend.emplace_back(name + " = " + num(vmax), viridis(1.0));
      break;
    }
  }

  // Fit the layout's bounding box into the drawing area, preserving aspect.
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (n > 0) {
    xmin = xmax = layout.positions[0].x;
    ymin = ymax = layout.positions[0].y;
    for (const auto& p : layout.positions) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double inner_w = o.width - 2.0 * (o.margin + o.node_radius);
  const double inner_h = o.height - 2.0 * (o.margin + o.node_radius);
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = std::min(inner_w, inner_h) / span;
  const double ox = o.margin + o.node_radius + 0.5 * (inner_w - (xmax - xmin) * scale);
  const double oy = o.margin + o.node_radius + 0.5 * (inner_h - (ymax - ymin) * scale);
  auto sx = [&](double x) { return ox + (x - xmin) * scale; };
  auto sy = [&](double y) { return oy + (ymax - y) * scale; };

  const double total_w = o.width + o.legend_width;
  const double legend_row = 18.0;
  const double total_h = std::max(o.height, o.margin * 2.0 + legend_row * static_cast<double>(legend.size() + 1));
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(total_w) + "\" height=\"" + num(total_h) +
         "\" viewBox=\"0 0 " + num(total_w) + " " + num(total_h) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(total_w) + "\" height=\"" + num(total_h) + "\" fill=\"#ffffff\"/>\n";
  svg += "<g class=\"edges\" stroke=\"#888888\" stroke-opacity=\"0.25\" stroke-width=\"0.5\">\n";
  for (auto [i, j] : net.graph.edges()) {
    svg += "<line x1=\"" + num(sx(layout.positions[i].x)) + "\" y1=\"" + num(sy(layout.positions[i].y)) +
           "\" x2=\"" + num(sx(layout.positions[j].x)) + "\" y2=\"" + num(sy(layout.positions[j].y)) + "\"/>\n";
  }
  svg += "</g>\n<g class=\"nodes\">\n";
  for (std::size_t v = 0; v < n; ++v) {
    svg += "<circle cx=\"" + num(sx(layout.positions[v].x)) + "\" cy=\"" + num(sy(layout.positions[v].y)) +
           "\" r=\"" + num(o.node_radius) + "\" fill=\"" + fill[v] + "\"/>\n";
  }
  svg += "</g>\n<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double lx = o.width + 10.0;
  for (std::size_t e = 0; e < legend.size(); ++e) {
    const double y = o.margin + legend_row * static_cast<double>(e);
    svg += "<g class=\"legend-entry\"><rect x=\"" + num(lx) + "\" y=\"" + num(y) +
           "\" width=\"12\" height=\"12\" fill=\"" + legend[e].second + "\"/><text x=\"" + num(lx + 18.0) +
           "\" y=\"" + num(y + 10.0) + "\">" + escape(legend[e].first) + "</text></g>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace mesotext
