#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "mesotext/io.hpp"
#include "mesotext/mesonet.hpp"

using namespace mesotext;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "mesotext-unit-io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("SHA-256 known digests") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("numbers print with 12 significant digits") {
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(2.0) == "2");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(1234567.891234567) == "1234567.89123");
}

TEST_CASE("CSV round trip with quoting") {
  io::CsvTable t{{"id", "text"}, {{"a", "plain"}, {"b", "has, comma"}, {"c", "say \"hi\"\nthere"}}};
  const auto csv = io::to_csv(t);
  CHECK(csv.find("\"has, comma\"") != std::string::npos);
  const auto back = io::parse_csv(csv);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.column("text") == 1);
  CHECK_THROWS_AS(back.column("missing"), std::runtime_error);
}

TEST_CASE("atomic write creates directories and leaves no temporary file") {
  const auto p = scratch("nested/dir/out.txt");
  fs::remove_all(p.parent_path());
  io::write_file_atomic(p, "first");
  io::write_file_atomic(p, "second");
  CHECK(io::read_file(p) == "second");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  CHECK_THROWS_AS(io::read_file(scratch("does-not-exist")), std::runtime_error);
}

TEST_CASE("stopword and lemma files skip comments and blank lines") {
  const auto sw = scratch("stop.txt");
  io::write_file_atomic(sw, "# comment\nthe\n\nA\n");
  const auto stop = io::load_stopwords(sw);
  CHECK(stop.count("the") == 1);
  CHECK(stop.size() == 2);
  const auto lm = scratch("lemmas.tsv");
  io::write_file_atomic(lm, "# form\tlemma\nmice\tmouse\nsaid\tsay\n");
  const auto lemmas = io::load_lemmas(lm);
  CHECK(lemmas.at("mice") == "mouse");
  CHECK(lemmas.size() == 2);
}

TEST_CASE("organized text JSON round trip") {
  OrganizedText t;
  t.paragraphs = {{"a", "b"}, {"\"quoted\""}};
  const auto back = io::organized_text_from_json(io::organized_text_to_json(t));
  CHECK(back.paragraphs == t.paragraphs);
}

TEST_CASE("GraphML lists nodes, edges and attributes") {
  MesoscopicNetwork net;
  net.graph = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  net.start_paragraph = {0, 1, 2};
  net.chapter = {"1", "1", "2"};
  net.provenance.delta = 20;
  const auto xml = io::to_graphml(net);
  CHECK(xml.find("<graphml") != std::string::npos);
  std::size_t nodes = 0, edges = 0;
  for (auto p = xml.find("<node "); p != std::string::npos; p = xml.find("<node ", p + 1)) ++nodes;
  for (auto p = xml.find("<edge "); p != std::string::npos; p = xml.find("<edge ", p + 1)) ++edges;
  CHECK(nodes == 3);
  CHECK(edges == 2);
  CHECK(xml.find("start_paragraph") != std::string::npos);
  CHECK(xml.find("retention_fraction") != std::string::npos);
}
