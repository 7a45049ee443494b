#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mesotext/graph.hpp"
#include "mesotext/graphmetrics.hpp"
#include "mesotext/mesonet.hpp"

namespace mesotext {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct LayoutOptions {
  std::size_t iterations = 2000;
  std::uint64_t seed = 0;
  double initial_temperature = 0.1;  // displacement cap at the first step, in unit-square units
  std::size_t workers = 1;
};

struct LayoutResult {
  std::vector<Point> positions;
  std::size_t iterations = 0;
  double max_displacement = 0.0;  // largest node move in the last iteration
};

/// Classic Fruchterman-Reingold layout in the unit square.
///
/// Nodes start at uniform random positions drawn from `options.seed`. With
/// ideal length k = sqrt(1/n), every pair repels with k^2/d and every edge
/// attracts with d^2/k; each step moves a node along its net force by at
/// most the current temperature, which cools linearly to zero. Positions are
/// not clamped to the square. The result does not depend on `workers`.
LayoutResult fr_layout(const Graph& g, const LayoutOptions& options = {});
inline LayoutResult fr_layout(const MesoscopicNetwork& net, const LayoutOptions& options = {}) {
  return fr_layout(net.graph, options);
}

/// Euclidean norm of the per-node net FR forces at the given positions.
double force_imbalance(const Graph& g, std::span<const Point> positions);

/// Coordinates of the positions projected onto their first principal axis.
std::vector<double> principal_axis_projection(std::span<const Point> positions);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// sample is constant. Throws std::invalid_argument on a length mismatch.
double spearman(std::span<const double> a, std::span<const double> b);

struct Coloring {
  enum class Kind { Position, Chapter, NodeValues };

  Kind kind = Kind::Position;
  std::vector<double> values;  // NodeValues only
  std::string label;           // legend caption for NodeValues

  static Coloring position() { return {}; }
  static Coloring chapter() { return {Kind::Chapter, {}, {}}; }
  static Coloring node_values(const NodeSeries& s) { return {Kind::NodeValues, s.values, s.measure}; }
};

struct SvgOptions {
  double width = 800.0;
  double height = 800.0;
  double margin = 20.0;
  double legend_width = 180.0;
  double node_radius = 3.0;
};

/// Renders nodes as circles and edges as lines, rescaled into the drawing
/// area, with a legend on the right.
///
/// Colormaps: Position and NodeValues interpolate linearly through the
/// viridis anchors #440154, #21918c, #fde725 (node index 0..n-1, or value
/// min..max; a constant series maps everything to the first anchor).
/// Chapter uses the 20-colour categorical palette of Matplotlib's tab20,
/// one legend entry per distinct chapter label in order of first appearance.
///
/// Throws std::invalid_argument when the layout size differs from the node
/// count, on chapter coloring without chapter labels, or on a value series
/// of the wrong length.
std::string export_svg(const MesoscopicNetwork& net, const LayoutResult& layout,
                       const Coloring& coloring, const SvgOptions& options = {});

}  // namespace mesotext
