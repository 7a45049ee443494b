#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mesotext/analysis.hpp"
#include "mesotext/cooccurrence.hpp"
#include "mesotext/corpus.hpp"
#include "mesotext/features.hpp"
#include "mesotext/graphmetrics.hpp"
#include "mesotext/io.hpp"
#include "mesotext/layout.hpp"
#include "mesotext/mesonet.hpp"
#include "mesotext/pipeline.hpp"

namespace py = pybind11;
using namespace mesotext;

namespace {

PruneRule make_rule(std::optional<double> retention, std::optional<double> threshold) {
  if (retention && threshold) throw std::invalid_argument("give either retention or threshold, not both");
  if (threshold) return PruneRule::threshold(*threshold);
  return PruneRule::retention(retention.value_or(0.05));
}

Segmentation make_segmentation(std::size_t fixed_words) {
  return fixed_words ? Segmentation::fixed_word_count(fixed_words) : Segmentation::blank_line();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mesoscopic text networks";

  py::enum_<TextClass>(m, "TextClass").value("RT", TextClass::RT).value("SW", TextClass::SW).value("SP", TextClass::SP);

  py::class_<OrganizedText>(m, "OrganizedText")
      .def(py::init<>())
      .def_readwrite("paragraphs", &OrganizedText::paragraphs)
      .def_readwrite("source_id", &OrganizedText::source_id)
      .def_readwrite("class_label", &OrganizedText::class_label)
      .def_readwrite("origin", &OrganizedText::origin)
      .def("paragraph_count", &OrganizedText::paragraph_count)
      .def("token_count", &OrganizedText::token_count);

  m.def("letter_tokens", &letter_tokens, py::arg("text"));
  m.def(
      "segment_paragraphs",
      [](const std::string& text, std::size_t fixed_words) {
        return segment_paragraphs(RawDocument{"", "en", text}, make_segmentation(fixed_words));
      },
      py::arg("text"), py::arg("fixed_words") = 0, "Blank-line paragraphs, or fixed-size word chunks.");
  m.def("load_stopwords", [](const std::filesystem::path& p) { return io::load_stopwords(p); });
  m.def("load_lemmas", [](const std::filesystem::path& p) { return io::load_lemmas(p); });
  m.def(
      "organize",
      [](const std::string& text, const StopwordSet& stopwords, const LemmaMap& lemmas, const std::string& source_id,
         std::size_t fixed_words) {
        const auto paragraphs = segment_paragraphs(RawDocument{source_id, "en", text}, make_segmentation(fixed_words));
        return Normalizer(stopwords, lemmas)(paragraphs, source_id);
      },
      py::arg("text"), py::arg("stopwords"), py::arg("lemmas"), py::arg("source_id") = "",
      py::arg("fixed_words") = 0, "Segment, tokenize, lemmatize and drop stopwords.");
  m.def("shuffle_words", &shuffle_words, py::arg("text"), py::arg("seed"));
  m.def("shuffle_paragraphs", &shuffle_paragraphs, py::arg("text"), py::arg("seed"));

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", [](std::size_t n, const std::vector<Edge>& e) { return Graph::from_edges(n, e); })
      .def("node_count", &Graph::node_count)
      .def("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("neighbors", [](const Graph& g, NodeId v) {
        const auto s = g.neighbors(v);
        return std::vector<NodeId>(s.begin(), s.end());
      })
      .def("edges", &Graph::edges);

  py::class_<WeightedSimilarityGraph>(m, "WeightedSimilarityGraph")
      .def("node_count", &WeightedSimilarityGraph::node_count)
      .def("weight", &WeightedSimilarityGraph::weight)
      .def("upper_triangle", [](const WeightedSimilarityGraph& w) {
        const auto s = w.upper_triangle();
        return std::vector<double>(s.begin(), s.end());
      });

  py::class_<MesoscopicNetwork>(m, "MesoscopicNetwork")
      .def_readonly("graph", &MesoscopicNetwork::graph)
      .def_readonly("start_paragraph", &MesoscopicNetwork::start_paragraph)
      .def_readwrite("chapter", &MesoscopicNetwork::chapter)
      .def_property_readonly("threshold", [](const MesoscopicNetwork& n) { return n.provenance.threshold; })
      .def_property_readonly("retention_fraction",
                             [](const MesoscopicNetwork& n) { return n.provenance.retention_fraction; })
      .def("node_count", &MesoscopicNetwork::node_count);

  m.def(
      "text_to_network",
      [](const OrganizedText& text, std::size_t delta, std::optional<double> retention,
         std::optional<double> threshold, const std::string& idf_unit) {
        WeightedSimilarityGraph weights;
        auto net = text_to_network(text, {delta, make_rule(retention, threshold), parse_idf_unit(idf_unit)}, nullptr,
                                   &weights);
        return py::make_tuple(std::move(net), std::move(weights));
      },
      py::arg("text"), py::arg("delta") = 20, py::arg("retention") = py::none(), py::arg("threshold") = py::none(),
      py::arg("idf_unit") = "window", "Returns (network, complete weighted similarity graph).");

  m.def("clustering_coefficient", [](const Graph& g) { return clustering_coefficient(g).values; });
  m.def("matching_index", [](const Graph& g) { return matching_index(g).values(); },
        "Matching index per ordered edge in row-major order.");
  m.def("coefficient_of_variation", [](const std::vector<double>& x) { return coefficient_of_variation(x); });
  m.def("windowed_cv", [](const std::vector<double>& x, std::size_t delta) { return windowed_cv(x, delta); });
  m.def(
      "network_features",
      [](const MesoscopicNetwork& net, const std::vector<std::size_t>& deltas) {
        return network_features(net, deltas).values;
      },
      py::arg("network"), py::arg("deltas") = kDefaultDeltas);
  m.def("feature_names", [](const std::vector<std::size_t>& d) { return feature_names(d); },
        py::arg("deltas") = kDefaultDeltas);

  m.def(
      "pca",
      [](const Eigen::MatrixXd& x, Eigen::Index k) {
        const auto r = pca(x, k);
        py::dict d;
        d["coordinates"] = r.coordinates;
        d["components"] = r.components;
        d["explained_variance_ratio"] = r.explained_variance_ratio;
        d["kept_columns"] = r.kept_columns;
        return d;
      },
      py::arg("x"), py::arg("k"));
  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& x, std::size_t k, std::uint64_t seed, std::size_t restarts,
         std::size_t max_iterations) {
        const auto r = kmeans(x, k, seed, {restarts, max_iterations});
        py::dict d;
        d["assignment"] = r.assignment;
        d["wcss"] = r.wcss;
        d["wcss_history"] = r.wcss_history;
        d["centroids"] = r.centroids;
        return d;
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 20, py::arg("max_iterations") = 300);
  m.def("adjusted_rand_index",
        [](const std::vector<int>& a, const std::vector<int>& b) { return adjusted_rand_index(a, b); });
  m.def("clustering_accuracy", [](const std::vector<int>& a, const std::vector<int>& t) {
    return clustering_accuracy(a, t).accuracy;
  });

  m.def(
      "fr_layout",
      [](const Graph& g, std::size_t iterations, std::uint64_t seed, double initial_temperature) {
        LayoutOptions o;
        o.iterations = iterations;
        o.seed = seed;
        o.initial_temperature = initial_temperature;
        const auto r = fr_layout(g, o);
        Eigen::MatrixX2d out(static_cast<Eigen::Index>(r.positions.size()), 2);
        for (std::size_t i = 0; i < r.positions.size(); ++i) {
          out(static_cast<Eigen::Index>(i), 0) = r.positions[i].x;
          out(static_cast<Eigen::Index>(i), 1) = r.positions[i].y;
        }
        return out;
      },
      py::arg("graph"), py::arg("iterations") = LayoutOptions{}.iterations, py::arg("seed") = 0,
      py::arg("initial_temperature") = LayoutOptions{}.initial_temperature, "Node positions as an (n, 2) array.");
  m.def(
      "export_svg",
      [](const MesoscopicNetwork& net, const Eigen::MatrixX2d& pos, const std::string& coloring,
         const std::vector<double>& values) {
        LayoutResult layout;
        for (Eigen::Index i = 0; i < pos.rows(); ++i) layout.positions.push_back({pos(i, 0), pos(i, 1)});
        Coloring c;
        if (coloring == "chapter") c = Coloring::chapter();
        else if (coloring == "values") c = Coloring::node_values({"value", values});
        else if (coloring != "position") throw std::invalid_argument("coloring must be position, chapter or values");
        return export_svg(net, layout, c);
      },
      py::arg("network"), py::arg("positions"), py::arg("coloring") = "position",
      py::arg("values") = std::vector<double>{});
  m.def("spearman", [](const std::vector<double>& a, const std::vector<double>& b) { return spearman(a, b); });

  m.def(
      "cooccurrence_summary",
      [](const OrganizedText& text) { return centrality_summary(build_cooccurrence(text)).values(); },
      "34 centrality summary values of the word-adjacency network.");
  m.def("cooccurrence_summary_names", [] { return CentralitySummary::names(); });

  auto run = [](auto fn) {
    return [fn](const std::filesystem::path& config) {
      const auto r = fn(load_config(config));
      return py::make_tuple(r.exit_code, r.errors, r.warnings);
    };
  };
  m.def("build", run([](const RunConfig& c) { return cmd_build(c); }), py::arg("config"),
        "Run the build step for a JSON config; returns (exit_code, errors, warnings).");
  m.def("analyze", run([](const RunConfig& c) { return cmd_analyze(c); }), py::arg("config"));
  m.def("cooccurrence", run([](const RunConfig& c) { return cmd_cooccurrence(c); }), py::arg("config"));
  m.def("report", [](const std::filesystem::path& config) { return cmd_report(load_config(config)); });
}
