#include "mesotext/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

namespace mesotext::io {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error while reading " + path.string());
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("error while writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> content_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

StopwordSet load_stopwords(const fs::path& path) {
  StopwordSet out;
  for (const auto& line : content_lines(path)) out.insert(trim(line));
  return out;
}

LemmaMap load_lemmas(const fs::path& path) {
  LemmaMap out;
  std::size_t lineno = 0;
  for (const auto& line : content_lines(path)) {
    ++lineno;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error(path.string() + ": entry " + std::to_string(lineno) + " lacks a tab");
    }
    out[trim(line.substr(0, tab))] = trim(line.substr(tab + 1));
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("CSV has no column '" + std::string(name) + "'");
}

namespace {

void append_field(std::string& out, const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) {
    out += f;
    return;
  }
  out += '"';
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& r : table.rows) append_row(out, r);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; any = true; break;
      case ',': row.push_back(std::move(field)); field.clear(); any = true; break;
      case '\r': break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        any = false;
        break;
      default: field += c; any = true;
    }
  }
  if (quoted) throw std::runtime_error("CSV: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  CsvTable t;
  if (rows.empty()) return t;
  t.header = std::move(rows.front());
  t.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw std::runtime_error("CSV: row width differs from header");
  }
  return t;
}

std::string organized_text_to_json(const OrganizedText& text) {
  nlohmann::json j = text.paragraphs;
  return j.dump() + "\n";
}

OrganizedText organized_text_from_json(std::string_view json) {
  const auto j = nlohmann::json::parse(json);
  OrganizedText t;
  t.paragraphs = j.get<std::vector<Paragraph>>();
  return t;
}

namespace {

std::string xml_escape(std::string_view s) {
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

std::string to_graphml(const MesoscopicNetwork& net) {
  const auto& p = net.provenance;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out += "  <key id=\"delta\" for=\"graph\" attr.name=\"delta\" attr.type=\"int\"/>\n";
  out += "  <key id=\"threshold\" for=\"graph\" attr.name=\"threshold\" attr.type=\"double\"/>\n";
  out += "  <key id=\"retention\" for=\"graph\" attr.name=\"retention_fraction\" attr.type=\"double\"/>\n";
  out += "  <key id=\"class\" for=\"graph\" attr.name=\"class_label\" attr.type=\"string\"/>\n";
  out += "  <key id=\"source\" for=\"graph\" attr.name=\"source_id\" attr.type=\"string\"/>\n";
  out += "  <key id=\"start\" for=\"node\" attr.name=\"start_paragraph\" attr.type=\"int\"/>\n";
  out += "  <key id=\"chapter\" for=\"node\" attr.name=\"chapter\" attr.type=\"string\"/>\n";
  out += "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  out += "    <data key=\"delta\">" + std::to_string(p.delta) + "</data>\n";
  out += "    <data key=\"threshold\">" + format_number(p.threshold) + "</data>\n";
  out += "    <data key=\"retention\">" + format_number(p.retention_fraction) + "</data>\n";
  out += "    <data key=\"class\">" + std::string(to_string(p.class_label)) + "</data>\n";
  out += "    <data key=\"source\">" + xml_escape(p.source_id) + "</data>\n";
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    out += "    <node id=\"n" + std::to_string(v) + "\">";
    if (v < net.start_paragraph.size()) {
      out += "<data key=\"start\">" + std::to_string(net.start_paragraph[v]) + "</data>";
    }
    if (v < net.chapter.size()) out += "<data key=\"chapter\">" + xml_escape(net.chapter[v]) + "</data>";
    out += "</node>\n";
  }
  for (auto [i, j] : net.graph.edges()) {
    out += "    <edge source=\"n" + std::to_string(i) + "\" target=\"n" + std::to_string(j) + "\"/>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

}  // namespace mesotext::io
