#include "mesotext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mesotext/cooccurrence.hpp"
#include "mesotext/graphmetrics.hpp"
#include "mesotext/io.hpp"
#include "mesotext/layout.hpp"
#include "mesotext/rng.hpp"
#include "parallel.hpp"

namespace mesotext {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::set<std::string> kTopKeys = {
    "documents", "stopwords", "lemmas",  "delta",   "prune",           "deltas",       "idf_unit",
    "seeds",     "pca_components",       "kmeans",  "cooccurrence",    "layout",       "write_similarity",
    "workers",   "output_dir"};

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::uint64_t get_u64(const json& j, const std::string& what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    throw ConfigError(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

double get_double(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, kTopKeys, "config");
  RunConfig c;
  if (!root.contains("documents") || !root["documents"].is_array()) {
    throw ConfigError("config needs a 'documents' array");
  }
  for (const auto& d : root["documents"]) {
    check_keys(d, {"id", "path", "language", "segmentation", "chapter_pattern"}, "document entry");
    DocumentSpec spec;
    if (!d.contains("id") || !d.contains("path")) throw ConfigError("document entries need 'id' and 'path'");
    spec.id = get_string(d["id"], "document id");
    spec.path = resolve(base_dir, get_string(d["path"], "document path"));
    if (d.contains("language")) spec.language = get_string(d["language"], "language");
    if (d.contains("segmentation")) {
      const auto& s = d["segmentation"];
      if (s.is_string()) {
        if (s.get<std::string>() != "blank-line") {
          throw ConfigError("segmentation must be \"blank-line\" or {\"fixed_words\": n}");
        }
      } else {
        check_keys(s, {"fixed_words"}, "segmentation");
        if (!s.contains("fixed_words")) throw ConfigError("segmentation object needs 'fixed_words'");
        spec.segmentation = Segmentation::fixed_word_count(get_u64(s["fixed_words"], "fixed_words"));
      }
    }
    if (d.contains("chapter_pattern")) spec.chapter_pattern = get_string(d["chapter_pattern"], "chapter_pattern");
    c.documents.push_back(std::move(spec));
  }
  if (!root.contains("stopwords") || !root.contains("lemmas")) {
    throw ConfigError("config needs 'stopwords' and 'lemmas' paths");
  }
  c.stopwords = resolve(base_dir, get_string(root["stopwords"], "stopwords"));
  c.lemmas = resolve(base_dir, get_string(root["lemmas"], "lemmas"));
  if (root.contains("delta")) c.delta = get_u64(root["delta"], "delta");
  if (root.contains("prune")) {
    const auto& p = root["prune"];
    check_keys(p, {"retention", "threshold"}, "prune");
    if (p.size() != 1) throw ConfigError("prune needs exactly one of 'retention' or 'threshold'");
    c.prune = p.contains("retention") ? PruneRule::retention(get_double(p["retention"], "retention"))
                                      : PruneRule::threshold(get_double(p["threshold"], "threshold"));
  }
  if (root.contains("deltas")) {
    if (!root["deltas"].is_array()) throw ConfigError("deltas must be an array");
    c.deltas.clear();
    for (const auto& d : root["deltas"]) c.deltas.push_back(get_u64(d, "deltas entry"));
  }
  if (root.contains("idf_unit")) {
    try {
      c.idf_unit = parse_idf_unit(get_string(root["idf_unit"], "idf_unit"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (root.contains("seeds")) {
    const auto& s = root["seeds"];
    check_keys(s, {"shuffle", "kmeans", "layout"}, "seeds");
    if (s.contains("shuffle")) c.shuffle_seed = get_u64(s["shuffle"], "seeds.shuffle");
    if (s.contains("kmeans")) c.kmeans_seed = get_u64(s["kmeans"], "seeds.kmeans");
    if (s.contains("layout")) c.layout_seed = get_u64(s["layout"], "seeds.layout");
  }
  if (root.contains("pca_components")) c.pca_components = get_u64(root["pca_components"], "pca_components");
  if (root.contains("kmeans")) {
    const auto& k = root["kmeans"];
    check_keys(k, {"k", "restarts", "max_iterations"}, "kmeans");
    if (k.contains("k")) c.kmeans_k = get_u64(k["k"], "kmeans.k");
    if (k.contains("restarts")) c.kmeans.restarts = get_u64(k["restarts"], "kmeans.restarts");
    if (k.contains("max_iterations")) c.kmeans.max_iterations = get_u64(k["max_iterations"], "kmeans.max_iterations");
  }
  if (root.contains("cooccurrence")) {
    const auto& k = root["cooccurrence"];
    check_keys(k, {"pca_components"}, "cooccurrence");
    if (k.contains("pca_components")) {
      c.cooccurrence_pca_components = get_u64(k["pca_components"], "cooccurrence.pca_components");
    }
  }
  if (root.contains("layout")) {
    const auto& k = root["layout"];
    check_keys(k, {"iterations"}, "layout");
    if (k.contains("iterations")) c.layout_iterations = get_u64(k["iterations"], "layout.iterations");
  }
  if (root.contains("write_similarity")) {
    if (!root["write_similarity"].is_boolean()) throw ConfigError("write_similarity must be true or false");
    c.write_similarity = root["write_similarity"].get<bool>();
  }
  if (root.contains("workers")) c.workers = get_u64(root["workers"], "workers");
  if (root.contains("output_dir")) c.output_dir = resolve(base_dir, get_string(root["output_dir"], "output_dir"));
  else c.output_dir = resolve(base_dir, c.output_dir.string());
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, fs::absolute(path).parent_path());
}

void validate(const RunConfig& c) {
  if (c.documents.empty()) throw ConfigError("config lists no documents");
  static const std::regex id_pattern("[A-Za-z0-9._-]+");
  std::set<std::string> ids;
  for (const auto& d : c.documents) {
    if (!std::regex_match(d.id, id_pattern)) {
      throw ConfigError("document id '" + d.id + "' may only contain letters, digits, '.', '_' and '-'");
    }
    if (!ids.insert(d.id).second) throw ConfigError("duplicate document id '" + d.id + "'");
    if (!fs::is_regular_file(d.path)) throw ConfigError("document '" + d.id + "': no such file " + d.path.string());
    if (d.segmentation.mode == Segmentation::Mode::FixedWordCount && d.segmentation.words == 0) {
      throw ConfigError("document '" + d.id + "': fixed_words must be >= 1");
    }
    if (!d.chapter_pattern.empty()) {
      try {
        std::regex re(d.chapter_pattern);
      } catch (const std::regex_error& e) {
        throw ConfigError("document '" + d.id + "': bad chapter_pattern: " + e.what());
      }
    }
  }
  if (!fs::is_regular_file(c.stopwords)) throw ConfigError("no such stopword file " + c.stopwords.string());
  if (!fs::is_regular_file(c.lemmas)) throw ConfigError("no such lemma file " + c.lemmas.string());
  if (c.delta < 1) throw ConfigError("delta must be >= 1");
  if (c.prune.kind == PruneRule::Kind::Threshold && !(c.prune.value > 0.0 && c.prune.value < 1.0)) {
    throw ConfigError("threshold must lie in (0, 1)");
  }
  if (c.prune.kind == PruneRule::Kind::Retention && !(c.prune.value > 0.0 && c.prune.value <= 1.0)) {
    throw ConfigError("retention must lie in (0, 1]");
  }
  if (c.deltas.empty()) throw ConfigError("deltas must not be empty");
  for (auto d : c.deltas) {
    if (d < 2) throw ConfigError("every entry of deltas must be >= 2");
  }
  if (c.pca_components < 1) throw ConfigError("pca_components must be >= 1");
  if (c.cooccurrence_pca_components < 1) throw ConfigError("cooccurrence.pca_components must be >= 1");
  if (c.kmeans_k < 1) throw ConfigError("kmeans.k must be >= 1");
  if (c.kmeans.restarts < 1 || c.kmeans.max_iterations < 1) {
    throw ConfigError("kmeans.restarts and kmeans.max_iterations must be >= 1");
  }
  if (c.layout_iterations < 1) throw ConfigError("layout.iterations must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

namespace {

json config_json(const RunConfig& c) {
  json docs = json::array();
  for (const auto& d : c.documents) {
    json seg = d.segmentation.mode == Segmentation::Mode::BlankLine
                   ? json("blank-line")
                   : json{{"fixed_words", d.segmentation.words}};
    docs.push_back({{"id", d.id},
                    {"path", d.path.string()},
                    {"language", d.language},
                    {"segmentation", seg},
                    {"chapter_pattern", d.chapter_pattern}});
  }
  json prune = c.prune.kind == PruneRule::Kind::Retention ? json{{"retention", c.prune.value}}
                                                          : json{{"threshold", c.prune.value}};
  return {{"documents", docs},
          {"stopwords", c.stopwords.string()},
          {"lemmas", c.lemmas.string()},
          {"delta", c.delta},
          {"prune", prune},
          {"deltas", c.deltas},
          {"idf_unit", std::string(to_string(c.idf_unit))},
          {"seeds", {{"shuffle", c.shuffle_seed}, {"kmeans", c.kmeans_seed}, {"layout", c.layout_seed}}},
          {"pca_components", c.pca_components},
          {"kmeans",
           {{"k", c.kmeans_k}, {"restarts", c.kmeans.restarts}, {"max_iterations", c.kmeans.max_iterations}}},
          {"cooccurrence", {{"pca_components", c.cooccurrence_pca_components}}},
          {"layout", {{"iterations", c.layout_iterations}}},
          {"write_similarity", c.write_similarity},
          {"workers", c.workers},
          {"output_dir", c.output_dir.string()}};
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2) + "\n"; }

MesoscopicNetwork text_to_network(const OrganizedText& text, const NetworkSettings& settings, Diagnostics* diag,
                                  WeightedSimilarityGraph* weights_out) {
  const auto windows = build_windows(text, settings.delta, diag);
  const auto model = compute_tfidf(windows, settings.idf_unit);
  auto weights = build_similarity_graph(model.vectors, diag);
  auto net = prune(weights, settings.prune, diag);
  net.provenance.delta = settings.delta;
  net.provenance.source_id = text.source_id;
  net.provenance.class_label = text.class_label;
  if (weights_out) *weights_out = std::move(weights);
  return net;
}

std::vector<std::string> window_chapters(const OrganizedText& text, const std::vector<int>& raw_chapters,
                                         std::size_t node_count) {
  std::vector<std::string> out(node_count);
  for (std::size_t k = 0; k < node_count; ++k) {
    const std::size_t raw = text.origin.empty() ? k : text.origin.at(k);
    out[k] = std::to_string(std::max(1, raw_chapters.at(raw)));
  }
  return out;
}

FeatureVector network_features(const MesoscopicNetwork& net, std::span<const std::size_t> deltas,
                               Diagnostics* diag) {
  auto fv = feature_vector(clustering_coefficient(net), matching_index(net), deltas, diag);
  fv.provenance.source_id = net.provenance.source_id;
  fv.provenance.class_label = net.provenance.class_label;
  fv.provenance.delta = net.provenance.delta;
  fv.provenance.threshold = net.provenance.threshold;
  return fv;
}

const OrganizedText& ClassTexts::get(TextClass c) const {
  switch (c) {
    case TextClass::RT: return rt;
    case TextClass::SW: return sw;
    case TextClass::SP: return sp;
  }
  return rt;
}

ClassTexts make_class_texts(const OrganizedText& rt, std::uint64_t shuffle_seed) {
  ClassTexts t;
  t.rt = rt;
  t.rt.class_label = TextClass::RT;
  t.sw = shuffle_words(rt, derive_seed(shuffle_seed, rt.source_id + "/SW"));
  t.sp = shuffle_paragraphs(rt, derive_seed(shuffle_seed, rt.source_id + "/SP"));
  return t;
}

namespace {

// ---------------------------------------------------------------------------
// Shared output plumbing

json rounded(double v) { return std::stod(io::format_number(v)); }

json rounded(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(rounded(x));
  return out;
}

json rounded(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(rounded(m(r, c)));
    out.push_back(row);
  }
  return out;
}

json int_matrix(const Eigen::MatrixXi& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects written files with their hashes for the manifest.
class OutputSet {
 public:
  explicit OutputSet(fs::path root) : root_(std::move(root)) {}

  void write(const std::string& rel, const std::string& content) {
    io::write_file_atomic(root_ / rel, content);
    files_[rel] = {io::sha256_hex(content), content.size()};
  }

  void merge(const OutputSet& other) {
    for (const auto& [k, v] : other.files_) files_[k] = v;
  }

  json listing() const {
    json out = json::array();
    for (const auto& [path, info] : files_) {
      out.push_back({{"path", path}, {"sha256", info.first}, {"bytes", info.second}});
    }
    return out;
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::map<std::string, std::pair<std::string, std::size_t>> files_;
};

void write_manifest(OutputSet& out, const std::string& rel, const std::string& command, const RunConfig& config,
                    json extra) {
  json m = std::move(extra);
  m["tool"] = "mesotext";
  m["version"] = kVersion;
  m["command"] = command;
  m["created_utc"] = utc_now();
  m["config"] = config_json(config);
  m["files"] = out.listing();
  io::write_file_atomic(out.root() / rel, m.dump(2) + "\n");
}

std::string class_dir(const std::string& id, TextClass c) {
  return "networks/" + id + "/" + std::string(to_string(c)) + "/";
}

std::string nodes_csv(const MesoscopicNetwork& net) {
  io::CsvTable t{{"node", "start_paragraph", "chapter"}, {}};
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    t.rows.push_back({std::to_string(v), std::to_string(net.start_paragraph[v]),
                      v < net.chapter.size() ? net.chapter[v] : std::string()});
  }
  return io::to_csv(t);
}

std::string edges_csv(const Graph& g) {
  io::CsvTable t{{"source", "target"}, {}};
  for (auto [i, j] : g.edges()) t.rows.push_back({std::to_string(i), std::to_string(j)});
  return io::to_csv(t);
}

std::string long_range_csv(const LongRangeProfile& profile) {
  io::CsvTable t{{"i", "j", "time_difference", "weight", "long_range"}, {}};
  for (const auto& e : profile) {
    t.rows.push_back({std::to_string(e.i), std::to_string(e.j), std::to_string(e.time_difference),
                      io::format_number(e.weight), e.long_range ? "1" : "0"});
  }
  return io::to_csv(t);
}

std::string similarity_csv(const WeightedSimilarityGraph& w) {
  std::string out = "row,col,weight\n";
  const auto n = static_cast<NodeId>(w.node_count());
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      out += std::to_string(i) + "," + std::to_string(j) + "," + io::format_number(w.weight(i, j)) + "\n";
    }
  }
  return out;
}

MesoscopicNetwork read_network(const fs::path& root, const std::string& id, TextClass c) {
  const fs::path dir = root / class_dir(id, c);
  const fs::path nodes_path = dir / "nodes.csv";
  const fs::path edges_path = dir / "edges.csv";
  for (const auto& p : {nodes_path, edges_path}) {
    if (!fs::is_regular_file(p)) {
      throw std::runtime_error("missing " + p.string() + "; run `mesotext build` with this config first");
    }
  }
  const auto nodes = io::parse_csv(io::read_file(nodes_path));
  const auto edges = io::parse_csv(io::read_file(edges_path));
  MesoscopicNetwork net;
  const auto start_col = nodes.column("start_paragraph");
  const auto chapter_col = nodes.column("chapter");
  bool has_chapter = false;
  for (const auto& r : nodes.rows) {
    net.start_paragraph.push_back(std::stoull(r[start_col]));
    net.chapter.push_back(r[chapter_col]);
    has_chapter = has_chapter || !r[chapter_col].empty();
  }
  if (!has_chapter) net.chapter.clear();
  std::vector<Edge> list;
  const auto s = edges.column("source");
  const auto t = edges.column("target");
  for (const auto& r : edges.rows) {
    list.emplace_back(static_cast<NodeId>(std::stoul(r[s])), static_cast<NodeId>(std::stoul(r[t])));
  }
  net.graph = Graph::from_edges(nodes.rows.size(), list);
  net.provenance.source_id = id;
  net.provenance.class_label = c;
  return net;
}

json read_build_manifest(const RunConfig& config) {
  const fs::path path = config.output_dir / "manifest.json";
  if (!fs::is_regular_file(path)) {
    throw std::runtime_error("no build manifest at " + path.string() + "; run `mesotext build` first");
  }
  return json::parse(io::read_file(path));
}

// Documents whose build succeeded, in config order.
std::vector<const DocumentSpec*> built_documents(const RunConfig& config, CommandResult& result) {
  const json manifest = read_build_manifest(config);
  std::set<std::string> ok;
  for (const auto& d : manifest.at("documents")) {
    if (d.at("status") == "ok") ok.insert(d.at("id").get<std::string>());
  }
  std::vector<const DocumentSpec*> out;
  for (const auto& d : config.documents) {
    if (ok.contains(d.id)) {
      out.push_back(&d);
    } else {
      result.errors.push_back("document '" + d.id + "' has no successful build; skipped");
    }
  }
  return out;
}

struct Experiment {
  json report;
  std::string scatter_csv;
};

// PCA, class distances and K-means on one feature table.
Experiment run_experiment(const Eigen::MatrixXd& features, const std::vector<std::string>& ids,
                          const std::vector<TextClass>& classes, const std::vector<std::string>& feature_names,
                          std::size_t components, const RunConfig& config, std::vector<std::string>& warnings) {
  std::vector<std::string> labels;
  std::vector<int> truth;
  for (auto c : classes) {
    labels.emplace_back(to_string(c));
    truth.push_back(static_cast<int>(c));
  }
  for (Eigen::Index a = 0; a < features.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < features.rows(); ++b) {
      if (features.row(a) == features.row(b)) {
        warnings.push_back("degenerate variance: rows " + ids[static_cast<std::size_t>(a)] + "/" +
                           labels[static_cast<std::size_t>(a)] + " and " + ids[static_cast<std::size_t>(b)] + "/" +
                           labels[static_cast<std::size_t>(b)] + " have identical features");
      }
    }
  }
  const auto proj = pca(features, static_cast<Eigen::Index>(components), labels);
  std::vector<std::string> dropped;
  for (Eigen::Index c = 0, kept = 0; c < features.cols(); ++c) {
    if (kept < static_cast<Eigen::Index>(proj.kept_columns.size()) &&
        proj.kept_columns[static_cast<std::size_t>(kept)] == c) {
      ++kept;
    } else {
      dropped.push_back(feature_names[static_cast<std::size_t>(c)]);
    }
  }
  if (!dropped.empty()) {
    std::string msg = "degenerate variance: constant feature columns dropped:";
    for (const auto& d : dropped) msg += " " + d;
    warnings.push_back(msg);
  }
  const auto table = class_distance_table(proj);
  const auto km = kmeans(proj.coordinates, config.kmeans_k, config.kmeans_seed, config.kmeans);
  const auto eval = evaluate_clustering(km.assignment, truth);

  json report;
  report["rows"] = features.rows();
  report["feature_names"] = feature_names;
  report["dropped_constant_columns"] = dropped;
  report["pca"] = {{"components", components},
                   {"explained_variance_ratio",
                    rounded(std::span<const double>(proj.explained_variance_ratio.data(),
                                                    static_cast<std::size_t>(proj.explained_variance_ratio.size())))}};
  report["class_distance"] = {{"classes", table.classes}, {"matrix", rounded(table.distance)}};
  report["kmeans"] = {{"k", config.kmeans_k},
                      {"seed", config.kmeans_seed},
                      {"restarts", config.kmeans.restarts},
                      {"best_restart", km.best_restart},
                      {"wcss", rounded(km.wcss)}};
  report["clustering"] = {{"ari", rounded(eval.ari)},
                          {"accuracy", rounded(eval.accuracy)},
                          {"misclustered_fraction", rounded(eval.misclustered_fraction)},
                          {"confusion_rows_classes", {"RT", "SW", "SP"}},
                          {"confusion", int_matrix(eval.confusion)}};

  io::CsvTable scatter{{"id", "class", "cluster"}, {}};
  for (Eigen::Index c = 0; c < proj.coordinates.cols(); ++c) scatter.header.push_back("pc" + std::to_string(c + 1));
  for (Eigen::Index r = 0; r < proj.coordinates.rows(); ++r) {
    io::CsvRow row{ids[static_cast<std::size_t>(r)], labels[static_cast<std::size_t>(r)],
                   std::to_string(km.assignment[static_cast<std::size_t>(r)])};
    for (Eigen::Index c = 0; c < proj.coordinates.cols(); ++c) row.push_back(io::format_number(proj.coordinates(r, c)));
    scatter.rows.push_back(std::move(row));
  }
  return {std::move(report), io::to_csv(scatter)};
}

struct DocBuild {
  bool ok = false;
  std::string error;
  json entry;
  Diagnostics diag;
};

}  // namespace

CommandResult cmd_build(const RunConfig& config) {
  validate(config);
  const Normalizer normalizer(io::load_stopwords(config.stopwords), io::load_lemmas(config.lemmas));
  const NetworkSettings settings{config.delta, config.prune, config.idf_unit};

  std::vector<DocBuild> results(config.documents.size());
  std::vector<OutputSet> outputs(config.documents.size(), OutputSet(config.output_dir));
  detail::parallel_for(config.documents.size(), config.workers, [&](std::size_t i) {
    const auto& doc = config.documents[i];
    auto& r = results[i];
    auto& out = outputs[i];
    try {
      RawDocument raw{doc.id, doc.language, io::read_file(doc.path)};
      const auto paragraphs = segment_paragraphs(raw, doc.segmentation);
      OrganizedText rt = normalizer(paragraphs, doc.id);
      std::vector<int> raw_chapters;
      if (!doc.chapter_pattern.empty()) {
        raw_chapters = chapter_of_paragraphs(paragraphs, std::regex(doc.chapter_pattern));
        if (std::all_of(raw_chapters.begin(), raw_chapters.end(), [](int c) { return c == 0; })) {
          r.diag.warn(doc.id + ": chapter_pattern matched no paragraph");
          raw_chapters.clear();
        }
      }
      const auto texts = make_class_texts(rt, config.shuffle_seed);
      json classes;
      for (auto c : kAllClasses) {
        const auto& text = texts.get(c);
        WeightedSimilarityGraph weights;
        auto net = text_to_network(text, settings, &r.diag, &weights);
        if (!raw_chapters.empty()) net.chapter = window_chapters(text, raw_chapters, net.node_count());
        const auto dir = class_dir(doc.id, c);
        out.write(dir + "organized.json", io::organized_text_to_json(text));
        out.write(dir + "nodes.csv", nodes_csv(net));
        out.write(dir + "edges.csv", edges_csv(net.graph));
        out.write(dir + "network.graphml", io::to_graphml(net));
        out.write(dir + "long_range.csv", long_range_csv(long_range_profile(weights, net)));
        if (config.write_similarity) out.write(dir + "similarity.csv", similarity_csv(weights));
        classes[std::string(to_string(c))] = {{"nodes", net.node_count()},
                                              {"edges", net.graph.edge_count()},
                                              {"threshold", rounded(net.provenance.threshold)},
                                              {"retention_fraction", rounded(net.provenance.retention_fraction)}};
      }
      r.entry = {{"id", doc.id},
                 {"status", "ok"},
                 {"paragraphs", rt.paragraph_count()},
                 {"tokens", rt.token_count()},
                 {"classes", classes}};
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = doc.id + ": " + e.what();
      r.entry = {{"id", doc.id}, {"status", "failed"}, {"error", e.what()}};
    }
  });

  CommandResult result;
  OutputSet all(config.output_dir);
  json docs = json::array();
  Diagnostics diag;
  for (std::size_t i = 0; i < results.size(); ++i) {
    all.merge(outputs[i]);
    docs.push_back(results[i].entry);
    diag.merge(results[i].diag);
    if (!results[i].ok) result.errors.push_back(results[i].error);
  }
  result.warnings = diag.warnings;
  write_manifest(all, "manifest.json", "build", config,
                 {{"documents", docs},
                  {"networks", 3 * (results.size() - result.errors.size())},
                  {"diagnostics", {{"zero_vector_pairs", diag.zero_vector_pairs}, {"warnings", diag.warnings}}}});
  result.exit_code = result.errors.empty() ? 0 : 1;
  return result;
}

CommandResult cmd_analyze(const RunConfig& config) {
  validate(config);
  CommandResult result;
  const auto docs = built_documents(config, result);

  struct DocFeatures {
    bool ok = false;
    std::string error;
    std::array<FeatureVector, 3> features;
    Diagnostics diag;
  };
  std::vector<DocFeatures> per_doc(docs.size());
  detail::parallel_for(docs.size(), config.workers, [&](std::size_t i) {
    auto& r = per_doc[i];
    try {
      for (auto c : kAllClasses) {
        const auto net = read_network(config.output_dir, docs[i]->id, c);
        r.features[static_cast<std::size_t>(c)] = network_features(net, config.deltas, &r.diag);
      }
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = docs[i]->id + ": " + e.what();
    }
  });

  const auto names = feature_names(config.deltas);
  io::CsvTable table{{"id", "class"}, {}};
  table.header.insert(table.header.end(), names.begin(), names.end());
  std::vector<std::string> ids;
  std::vector<TextClass> classes;
  std::vector<std::vector<double>> rows;
  Diagnostics diag;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    diag.merge(per_doc[i].diag);
    if (!per_doc[i].ok) {
      result.errors.push_back(per_doc[i].error);
      continue;
    }
    for (auto c : kAllClasses) {
      const auto& fv = per_doc[i].features[static_cast<std::size_t>(c)];
      io::CsvRow row{docs[i]->id, std::string(to_string(c))};
      for (double v : fv.values) row.push_back(io::format_number(v));
      table.rows.push_back(std::move(row));
      ids.push_back(docs[i]->id);
      classes.push_back(c);
      rows.push_back(fv.values);
    }
  }
  if (rows.empty()) throw std::runtime_error("no document produced features");

  OutputSet out(config.output_dir);
  out.write("analysis/features.csv", io::to_csv(table));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      // Round-trip through the CSV precision so the report matches the file.
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::stod(io::format_number(rows[r][c]));
    }
  }
  std::vector<std::string> warnings = diag.warnings;
  auto exp = run_experiment(x, ids, classes, names, config.pca_components, config, warnings);
  exp.report["documents"] = rows.size() / 3;
  exp.report["diagnostics"] = {{"skipped_cv_windows", diag.skipped_cv_windows}};
  exp.report["warnings"] = warnings;
  exp.report["errors"] = result.errors;
  out.write("analysis/scatter.csv", exp.scatter_csv);
  out.write("analysis/report.json", exp.report.dump(2) + "\n");
  write_manifest(out, "analysis/manifest.json", "analyze", config, json::object());
  result.warnings = warnings;
  result.exit_code = result.errors.empty() ? 0 : 1;
  return result;
}

CommandResult cmd_cooccurrence(const RunConfig& config) {
  validate(config);
  CommandResult result;
  std::vector<const DocumentSpec*> docs;
  for (const auto* d : built_documents(config, result)) {
    if (d->language == "en") {
      docs.push_back(d);
    } else {
      result.warnings.push_back("document '" + d->id + "' is not English; left out of the co-occurrence baseline");
    }
  }

  std::vector<OrganizedText> texts;
  std::vector<std::string> ids;
  std::vector<TextClass> classes;
  for (const auto* d : docs) {
    std::array<OrganizedText, 3> loaded;
    try {
      for (auto c : kAllClasses) {
        const fs::path p = config.output_dir / class_dir(d->id, c) / "organized.json";
        if (!fs::is_regular_file(p)) {
          throw std::runtime_error("missing " + p.string() + "; run `mesotext build` with this config first");
        }
        loaded[static_cast<std::size_t>(c)] = io::organized_text_from_json(io::read_file(p));
        loaded[static_cast<std::size_t>(c)].source_id = d->id;
        loaded[static_cast<std::size_t>(c)].class_label = c;
      }
    } catch (const std::exception& e) {
      result.errors.push_back(d->id + ": " + e.what());
      continue;
    }
    for (auto c : kAllClasses) {
      texts.push_back(std::move(loaded[static_cast<std::size_t>(c)]));
      ids.push_back(d->id);
      classes.push_back(c);
    }
  }
  if (texts.empty()) throw std::runtime_error("no organized texts available for the co-occurrence baseline");
  const auto trimmed = trim_to_common_length(texts);

  std::vector<std::vector<double>> summaries(trimmed.size());
  detail::parallel_for(trimmed.size(), config.workers, [&](std::size_t i) {
    summaries[i] = centrality_summary(build_cooccurrence(trimmed[i])).values();
  });

  const auto names = CentralitySummary::names();
  io::CsvTable table{{"id", "class"}, {}};
  table.header.insert(table.header.end(), names.begin(), names.end());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(summaries.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t r = 0; r < summaries.size(); ++r) {
    io::CsvRow row{ids[r], std::string(to_string(classes[r]))};
    for (std::size_t c = 0; c < names.size(); ++c) {
      row.push_back(io::format_number(summaries[r][c]));
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::stod(row.back());
    }
    table.rows.push_back(std::move(row));
  }

  OutputSet out(config.output_dir);
  out.write("cooccurrence/summaries.csv", io::to_csv(table));
  std::vector<std::string> warnings;
  auto exp = run_experiment(x, ids, classes, names, config.cooccurrence_pca_components, config, warnings);
  exp.report["documents"] = summaries.size() / 3;
  exp.report["tokens_per_text"] = trimmed.front().token_count();
  exp.report["warnings"] = warnings;
  exp.report["errors"] = result.errors;
  out.write("cooccurrence/scatter.csv", exp.scatter_csv);
  out.write("cooccurrence/report.json", exp.report.dump(2) + "\n");
  write_manifest(out, "cooccurrence/manifest.json", "cooccurrence", config, json::object());
  result.warnings.insert(result.warnings.end(), warnings.begin(), warnings.end());
  result.exit_code = result.errors.empty() ? 0 : 1;
  return result;
}

CommandResult cmd_layout(const RunConfig& config, const LayoutRequest& request) {
  validate(config);
  const auto it = std::find_if(config.documents.begin(), config.documents.end(),
                               [&](const DocumentSpec& d) { return d.id == request.document_id; });
  if (it == config.documents.end()) throw ConfigError("unknown document '" + request.document_id + "'");
  Coloring coloring;
  const auto net = read_network(config.output_dir, request.document_id, request.class_label);
  if (request.coloring == "position") {
    coloring = Coloring::position();
  } else if (request.coloring == "chapter") {
    coloring = Coloring::chapter();
  } else if (request.coloring == "clustering") {
    coloring = Coloring::node_values(clustering_coefficient(net));
  } else {
    throw ConfigError("coloring must be position, chapter or clustering");
  }
  LayoutOptions options;
  options.iterations = config.layout_iterations;
  options.seed = derive_seed(config.layout_seed,
                             request.document_id + "/" + std::string(to_string(request.class_label)));
  options.workers = config.workers;
  const auto layout = fr_layout(net, options);
  const std::string svg = export_svg(net, layout, coloring);

  io::CsvTable positions{{"node", "x", "y"}, {}};
  for (std::size_t v = 0; v < layout.positions.size(); ++v) {
    positions.rows.push_back(
        {std::to_string(v), io::format_number(layout.positions[v].x), io::format_number(layout.positions[v].y)});
  }
  const std::string stem = "layout/" + request.document_id + "_" + std::string(to_string(request.class_label));
  OutputSet out(config.output_dir);
  out.write(stem + "_positions.csv", io::to_csv(positions));
  out.write(stem + "_" + request.coloring + ".svg", svg);
  write_manifest(out, stem + "_" + request.coloring + "_manifest.json", "layout", config,
                 {{"iterations", layout.iterations},
                  {"max_displacement", rounded(layout.max_displacement)},
                  {"seed", options.seed}});
  return {};
}

std::string cmd_report(const RunConfig& config) {
  std::ostringstream s;
  auto section = [&](const std::string& title, const fs::path& path) {
    s << title << "\n";
    if (!fs::is_regular_file(path)) {
      s << "  (no report at " << path.string() << ")\n";
      return;
    }
    const auto r = json::parse(io::read_file(path));
    s << "  rows: " << r.at("rows") << " (" << r.at("documents") << " documents x 3 classes)\n";
    s << "  PCA components: " << r.at("pca").at("components") << ", explained variance ratio:";
    for (const auto& v : r.at("pca").at("explained_variance_ratio")) s << " " << io::format_number(v.get<double>());
    s << "\n  mean distance on PC1-PC2:\n";
    const auto& cls = r.at("class_distance").at("classes");
    const auto& m = r.at("class_distance").at("matrix");
    for (std::size_t a = 0; a < cls.size(); ++a) {
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        s << "    " << cls[a].get<std::string>() << "-" << cls[b].get<std::string>() << ": "
          << io::format_number(m[a][b].get<double>()) << "\n";
      }
    }
    const auto& c = r.at("clustering");
    s << "  K-means: ARI " << io::format_number(c.at("ari").get<double>()) << ", accuracy "
      << io::format_number(c.at("accuracy").get<double>()) << ", misclustered "
      << io::format_number(c.at("misclustered_fraction").get<double>()) << "\n";
    for (const auto& w : r.at("warnings")) s << "  warning: " << w.get<std::string>() << "\n";
    for (const auto& e : r.at("errors")) s << "  error: " << e.get<std::string>() << "\n";
  };
  section("Mesoscopic networks", config.output_dir / "analysis/report.json");
  section("Co-occurrence baseline", config.output_dir / "cooccurrence/report.json");
  return s.str();
}

}  // namespace mesotext
