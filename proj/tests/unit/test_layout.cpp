#include <doctest.h>

#include <cmath>
#include <numeric>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "mesotext/io.hpp"
#include "mesotext/layout.hpp"
#include "mesotext/pipeline.hpp"

using namespace mesotext;

namespace {

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

MesoscopicNetwork as_network(Graph g) {
  MesoscopicNetwork net;
  net.start_paragraph.resize(g.node_count());
  std::iota(net.start_paragraph.begin(), net.start_paragraph.end(), std::size_t{0});
  net.graph = std::move(g);
  return net;
}

std::vector<double> attribute_values(const std::string& svg, const std::string& element, const std::string& attr) {
  std::vector<double> out;
  const std::regex tag("<" + element + "\\b[^>]*>");
  const std::regex value("\\b" + attr + "=\"([-0-9.e+]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
    const std::string t = it->str();
    std::smatch m;
    if (std::regex_search(t, m, value)) out.push_back(std::stod(m[1]));
  }
  return out;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t c = 0;
  for (auto p = haystack.find(needle); p != std::string::npos; p = haystack.find(needle, p + 1)) ++c;
  return c;
}

std::set<std::string> circle_fills(const std::string& svg) {
  std::set<std::string> fills;
  const std::regex re("<circle[^>]*fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
    fills.insert((*it)[1]);
  return fills;
}

void check_inside_viewbox(const std::string& svg) {
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("viewBox=\"0 0 ([0-9.]+) ([0-9.]+)\"")));
  const double w = std::stod(m[1]), h = std::stod(m[2]);
  const auto r = attribute_values(svg, "circle", "r");
  const auto cx = attribute_values(svg, "circle", "cx");
  const auto cy = attribute_values(svg, "circle", "cy");
  for (std::size_t i = 0; i < cx.size(); ++i) {
    CHECK(cx[i] - r[i] >= 0.0);
    CHECK(cx[i] + r[i] <= w);
    CHECK(cy[i] - r[i] >= 0.0);
    CHECK(cy[i] + r[i] <= h);
  }
  for (const char* a : {"x1", "x2"})
    for (double v : attribute_values(svg, "line", a)) CHECK((v >= 0.0 && v <= w));
  for (const char* a : {"y1", "y2"})
    for (double v : attribute_values(svg, "line", a)) CHECK((v >= 0.0 && v <= h));
  for (double v : attribute_values(svg, "rect", "x")) CHECK((v >= 0.0 && v <= w));
  for (double v : attribute_values(svg, "rect", "y")) CHECK((v >= 0.0 && v <= h));
}

}  // namespace

TEST_CASE("a single node keeps its initial position") {
  LayoutOptions o;
  o.seed = 4;
  o.iterations = 0;
  const auto start = fr_layout(Graph(1), o);
  o.iterations = 500;
  const auto end = fr_layout(Graph(1), o);
  CHECK(end.positions[0].x == start.positions[0].x);
  CHECK(end.positions[0].y == start.positions[0].y);
}

TEST_CASE("two connected nodes settle near the ideal length") {
  const double kappa = std::sqrt(0.5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LayoutOptions o;
    o.seed = seed;
    const auto r = fr_layout(Graph::from_edges(2, std::vector<Edge>{{0, 1}}), o);
    const double d = std::hypot(r.positions[0].x - r.positions[1].x, r.positions[0].y - r.positions[1].y);
    CHECK(d >= 0.5 * kappa);
    CHECK(d <= 2.0 * kappa);
  }
}

TEST_CASE("a path graph unfolds into a monotone arc") {
  LayoutOptions o;
  o.iterations = 10000;
  o.seed = 1;
  const auto r = fr_layout(path_graph(50), o);
  std::vector<double> index(50);
  std::iota(index.begin(), index.end(), 0.0);
  CHECK(std::abs(spearman(index, principal_axis_projection(r.positions))) > 0.9);
}

TEST_CASE("layout is deterministic and independent of the worker count") {
  const auto g = path_graph(30);
  LayoutOptions o;
  o.iterations = 200;
  o.seed = 3;
  const auto a = fr_layout(g, o);
  o.workers = 4;
  const auto b = fr_layout(g, o);
  for (std::size_t v = 0; v < 30; ++v) {
    CHECK(a.positions[v].x == b.positions[v].x);
    CHECK(a.positions[v].y == b.positions[v].y);
  }
  for (const auto& p : a.positions) CHECK((std::isfinite(p.x) && std::isfinite(p.y)));
  CHECK(a.iterations == 200);
}

TEST_CASE("force imbalance is translation invariant") {
  LayoutOptions o;
  o.iterations = 50;
  const auto g = path_graph(12);
  auto pos = fr_layout(g, o).positions;
  const double before = force_imbalance(g, pos);
  for (auto& p : pos) p.x += 3.5, p.y -= 1.25;
  CHECK(force_imbalance(g, pos) == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("spearman with ties and constants") {
  CHECK(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 2, 2, 3}) == doctest::Approx(1.0));
  CHECK(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("triangle SVG has three circles and three lines inside the viewport") {
  const auto net = as_network(Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}));
  const auto svg = export_svg(net, fr_layout(net), Coloring::position());
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<circle") == 3);
  CHECK(count(svg, "<line") == 3);
  CHECK(count(svg, "</svg>") == 1);
  check_inside_viewbox(svg);
}

TEST_CASE("a constant value series colours every node alike") {
  const auto net = as_network(path_graph(8));
  const auto svg = export_svg(net, fr_layout(net), Coloring::node_values({"c", std::vector<double>(8, 0.3)}));
  CHECK(circle_fills(svg).size() == 1);
  CHECK(count(svg, "class=\"legend-entry\"") == 1);
}

TEST_CASE("position colouring runs from the first to the last anchor") {
  const auto net = as_network(path_graph(9));
  const auto svg = export_svg(net, fr_layout(net), Coloring::position());
  const auto fills = circle_fills(svg);
  CHECK(fills.count("#440154") == 1);
  CHECK(fills.count("#fde725") == 1);
  CHECK(fills.count("#21918c") == 1);
}

TEST_CASE("export errors") {
  auto net = as_network(path_graph(4));
  const auto layout = fr_layout(net);
  CHECK_THROWS_AS(export_svg(net, fr_layout(path_graph(3)), Coloring::position()), std::invalid_argument);
  CHECK_THROWS_AS(export_svg(net, layout, Coloring::chapter()), std::invalid_argument);
  CHECK_THROWS_AS(export_svg(net, layout, Coloring::node_values({"v", {1.0}})), std::invalid_argument);
}

TEST_CASE("Alice at T = 0.31 coloured by chapter has twelve legend entries") {
  const std::string data = MESOTEXT_TEST_DATA;
  const auto raw = segment_paragraphs({"alice", "en", io::read_file(data + "/alice29.txt")}, Segmentation::blank_line());
  const Normalizer norm(io::load_stopwords(std::string(MESOTEXT_RESOURCES) + "/en/stopwords.txt"),
                        io::load_lemmas(std::string(MESOTEXT_RESOURCES) + "/en/lemmas.tsv"));
  const auto text = norm(raw, "alice");
  auto net = text_to_network(text, {20, PruneRule::threshold(0.31), IdfUnit::Window});
  net.chapter = window_chapters(text, chapter_of_paragraphs(raw, std::regex("^CHAPTER ")), net.node_count());
  LayoutOptions o;
  o.iterations = 50;
  const auto svg = export_svg(net, fr_layout(net, o), Coloring::chapter());
  CHECK(count(svg, "class=\"legend-entry\"") == 12);
  CHECK(circle_fills(svg).size() == 12);
  check_inside_viewbox(svg);
}
