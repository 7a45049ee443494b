#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mesotext/corpus.hpp"
#include "mesotext/mesonet.hpp"

namespace mesotext::io {

namespace fs = std::filesystem;

/// Whole file as bytes. Throws std::runtime_error when unreadable.
std::string read_file(const fs::path& path);

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories as needed.
void write_file_atomic(const fs::path& path, std::string_view content);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// One word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const fs::path& path);

/// Tab-separated "form<TAB>lemma" lines; '#' comments allowed.
LemmaMap load_lemmas(const fs::path& path);

/// printf "%.12g".
std::string format_number(double v);

using CsvRow = std::vector<std::string>;

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;

  /// Column index by name; throws std::runtime_error when absent.
  std::size_t column(std::string_view name) const;
};

/// RFC 4180 style: fields containing a comma, quote or newline are quoted.
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// JSON array of paragraphs, each an array of tokens.
std::string organized_text_to_json(const OrganizedText& text);
OrganizedText organized_text_from_json(std::string_view json);

/// GraphML with node attributes start_paragraph and chapter and graph
/// attributes delta, threshold, retention_fraction and class_label.
std::string to_graphml(const MesoscopicNetwork& net);

}  // namespace mesotext::io
