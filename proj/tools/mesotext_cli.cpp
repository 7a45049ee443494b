#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mesotext/pipeline.hpp"

namespace {

struct Overrides {
  std::optional<std::size_t> delta;
  std::optional<double> retention;
  std::optional<double> threshold;
  std::optional<std::string> idf_unit;
  std::optional<std::uint64_t> shuffle_seed;
  std::optional<std::uint64_t> kmeans_seed;
  std::optional<std::uint64_t> layout_seed;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> iterations;
  std::optional<std::string> output_dir;
  bool write_similarity = false;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--delta", o.delta, "Paragraphs per window");
  auto* ret = cmd->add_option("--retention", o.retention, "Keep this fraction of the heaviest pairs");
  auto* thr = cmd->add_option("--threshold", o.threshold, "Keep pairs with similarity above this value");
  ret->excludes(thr);
  cmd->add_option("--idf-unit", o.idf_unit, "Document unit for idf: window or paragraph");
  cmd->add_option("--shuffle-seed", o.shuffle_seed, "Seed for the SW/SP null models");
  cmd->add_option("--kmeans-seed", o.kmeans_seed, "Seed for K-means");
  cmd->add_option("--layout-seed", o.layout_seed, "Seed for the force-directed layout");
  cmd->add_option("--workers", o.workers, "Maximum worker threads");
  cmd->add_option("--iterations", o.iterations, "Layout iterations");
  cmd->add_option("--output-dir", o.output_dir, "Output directory");
  cmd->add_flag("--write-similarity", o.write_similarity, "Also write the complete similarity matrix");
}

void apply(mesotext::RunConfig& c, const Overrides& o) {
  if (o.delta) c.delta = *o.delta;
  if (o.retention) c.prune = mesotext::PruneRule::retention(*o.retention);
  if (o.threshold) c.prune = mesotext::PruneRule::threshold(*o.threshold);
  if (o.idf_unit) {
    try {
      c.idf_unit = mesotext::parse_idf_unit(*o.idf_unit);
    } catch (const std::invalid_argument& e) {
      throw mesotext::ConfigError(e.what());
    }
  }
  if (o.shuffle_seed) c.shuffle_seed = *o.shuffle_seed;
  if (o.kmeans_seed) c.kmeans_seed = *o.kmeans_seed;
  if (o.layout_seed) c.layout_seed = *o.layout_seed;
  if (o.workers) c.workers = *o.workers;
  if (o.iterations) c.layout_iterations = *o.iterations;
  if (o.output_dir) c.output_dir = std::filesystem::absolute(*o.output_dir);
  if (o.write_similarity) c.write_similarity = true;
}

int finish(const mesotext::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& e : r.errors) std::cerr << "error: " << e << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesoscopic text networks: build, analyze and draw"};
  app.require_subcommand(1);
  std::string config_path;
  Overrides overrides;
  mesotext::LayoutRequest layout;
  std::string layout_class = "RT";

  std::vector<CLI::App*> commands;
  for (const auto& [name, help] : std::initializer_list<std::pair<const char*, const char*>>{
           {"build", "Preprocess documents and write RT/SW/SP networks"},
           {"analyze", "Windowed c_v features, PCA, K-means and clustering scores"},
           {"cooccurrence", "Word co-occurrence baseline on the built texts"},
           {"layout", "Force-directed layout and SVG of one network"},
           {"report", "Print a summary of the analysis reports"}}) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("-c,--config", config_path, "Run configuration (JSON)")->required();
    add_overrides(cmd, overrides);
    commands.push_back(cmd);
  }
  auto* layout_cmd = commands[3];
  layout_cmd->add_option("--document", layout.document_id, "Document id")->required();
  layout_cmd->add_option("--class", layout_class, "RT, SW or SP");
  layout_cmd->add_option("--coloring", layout.coloring, "position, chapter or clustering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto config = mesotext::load_config(config_path);
    apply(config, overrides);
    if (commands[0]->parsed()) return finish(mesotext::cmd_build(config));
    if (commands[1]->parsed()) return finish(mesotext::cmd_analyze(config));
    if (commands[2]->parsed()) return finish(mesotext::cmd_cooccurrence(config));
    if (commands[3]->parsed()) {
      try {
        layout.class_label = mesotext::parse_text_class(layout_class);
      } catch (const std::invalid_argument& e) {
        throw mesotext::ConfigError(e.what());
      }
      return finish(mesotext::cmd_layout(config, layout));
    }
    std::cout << mesotext::cmd_report(config);
    return 0;
  } catch (const mesotext::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
