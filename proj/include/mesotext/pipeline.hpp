#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mesotext/analysis.hpp"
#include "mesotext/common.hpp"
#include "mesotext/corpus.hpp"
#include "mesotext/features.hpp"
#include "mesotext/mesonet.hpp"
#include "mesotext/vectorizer.hpp"

namespace mesotext {

namespace fs = std::filesystem;

/// Raised for configuration problems (maps to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DocumentSpec {
  std::string id;
  fs::path path;
  std::string language = "en";
  Segmentation segmentation;
  std::string chapter_pattern;  // ECMAScript regex; empty means no chapter labels
};

struct RunConfig {
  std::vector<DocumentSpec> documents;
  fs::path stopwords;
  fs::path lemmas;
  std::size_t delta = 20;
  PruneRule prune = PruneRule::retention(0.05);
  std::vector<std::size_t> deltas = kDefaultDeltas;
  IdfUnit idf_unit = IdfUnit::Window;
  std::uint64_t shuffle_seed = 1;
  std::uint64_t kmeans_seed = 1;
  std::uint64_t layout_seed = 1;
  std::size_t pca_components = 6;
  std::size_t kmeans_k = 3;
  KMeansOptions kmeans;
  std::size_t cooccurrence_pca_components = 10;
  std::size_t layout_iterations = 2000;
  bool write_similarity = false;
  std::size_t workers = 1;
  fs::path output_dir = "mesotext-out";
};

/// Parses a JSON run configuration. Relative paths are resolved against
/// `base_dir`. Throws ConfigError on malformed input; does not touch files.
RunConfig parse_config(const std::string& json_text, const fs::path& base_dir);
RunConfig load_config(const fs::path& path);

/// Checks value ranges and that every referenced input file exists.
/// Throws ConfigError.
void validate(const RunConfig& config);

/// JSON form with every default filled in.
std::string config_to_json(const RunConfig& config);

struct NetworkSettings {
  std::size_t delta = 20;
  PruneRule prune = PruneRule::retention(0.05);
  IdfUnit idf_unit = IdfUnit::Window;
};

/// Windows, tf-idf vectors, cosine similarity graph and pruning in one step.
/// `weights_out` receives the complete weighted graph when non-null.
MesoscopicNetwork text_to_network(const OrganizedText& text, const NetworkSettings& settings,
                                  Diagnostics* diag = nullptr,
                                  WeightedSimilarityGraph* weights_out = nullptr);

/// Chapter label of every window: the chapter of its first paragraph, where
/// raw paragraphs before the first heading count as part of the first
/// chapter. `raw_chapters` comes from chapter_of_paragraphs.
std::vector<std::string> window_chapters(const OrganizedText& text, const std::vector<int>& raw_chapters,
                                         std::size_t node_count);

/// Windowed c_v features of a pruned network.
FeatureVector network_features(const MesoscopicNetwork& net, std::span<const std::size_t> deltas,
                               Diagnostics* diag = nullptr);

/// The three texts of the discrimination experiment for one document.
struct ClassTexts {
  OrganizedText rt;
  OrganizedText sw;
  OrganizedText sp;

  const OrganizedText& get(TextClass c) const;
};

/// RT plus its two null models, seeded per document and class.
ClassTexts make_class_texts(const OrganizedText& rt, std::uint64_t shuffle_seed);

/// Outcome of a subcommand: 0 success, 1 partial failure.
struct CommandResult {
  int exit_code = 0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

CommandResult cmd_build(const RunConfig& config);
CommandResult cmd_analyze(const RunConfig& config);
CommandResult cmd_cooccurrence(const RunConfig& config);

struct LayoutRequest {
  std::string document_id;
  TextClass class_label = TextClass::RT;
  std::string coloring = "position";  // position | chapter | clustering
};

CommandResult cmd_layout(const RunConfig& config, const LayoutRequest& request);

/// Human-readable summary of the analysis and co-occurrence reports.
std::string cmd_report(const RunConfig& config);

}  // namespace mesotext
