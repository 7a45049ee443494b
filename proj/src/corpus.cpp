#include "mesotext/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "mesotext/rng.hpp"

namespace mesotext {
namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
  });
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// A lemma table key/value is usable only if it is exactly one letter token.
std::optional<std::string> single_token(std::string_view s) {
  auto toks = letter_tokens(s);
  if (toks.size() != 1) return std::nullopt;
  return std::move(toks.front());
}

LemmaMap close_lemma_table(const LemmaMap& raw) {
  LemmaMap cleaned;
  for (const auto& [key, value] : raw) {
    auto k = single_token(key);
    auto v = single_token(value);
    if (!k || !v || *k == *v) continue;
    // Several raw spellings can collapse to one key; keep the smallest target.
    auto [it, inserted] = cleaned.emplace(*k, *v);
    if (!inserted && *v < it->second) it->second = *v;
  }

  LemmaMap closed;
  closed.reserve(cleaned.size());
  std::vector<std::string> path;
  for (const auto& [key, value] : cleaned) {
    path.assign({key});
    std::string target;
    while (true) {
      const auto it = cleaned.find(path.back());
      if (it == cleaned.end()) {
        target = path.back();
        break;
      }
      const auto seen = std::find(path.begin(), path.end(), it->second);
      if (seen != path.end()) {
        target = *std::min_element(seen, path.end());
        break;
      }
      path.push_back(it->second);
    }
    if (target != key) closed.emplace(key, std::move(target));
  }
  return closed;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::vector<std::string> segment_paragraphs(const RawDocument& doc, const Segmentation& seg) {
  if (trim(doc.text).empty()) throw std::invalid_argument("empty document: '" + doc.id + "'");

  std::vector<std::string> out;
  if (seg.mode == Segmentation::Mode::FixedWordCount) {
    if (seg.words == 0) throw std::invalid_argument("fixed-word-count segmentation needs n >= 1");
    std::istringstream in(doc.text);
    std::string word;
    std::string chunk;
    std::size_t count = 0;
    while (in >> word) {
      if (count > 0) chunk += ' ';
      chunk += word;
      if (++count == seg.words) {
        out.push_back(std::move(chunk));
        chunk.clear();
        count = 0;
      }
    }
    if (count > 0) out.push_back(std::move(chunk));
    return out;
  }

  std::string current;
  auto flush = [&] {
    const auto t = trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  std::string_view text = doc.text;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) {
      flush();
    } else {
      if (!current.empty()) current += '\n';
      current.append(line);
    }
    pos = nl + 1;
  }
  flush();
  return out;
}

std::size_t OrganizedText::token_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.size();
  return n;
}

std::vector<std::string> letter_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c >= 0 && u_isalpha(c)) {
      append_utf8(current, u_tolower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Normalizer::Normalizer(StopwordSet stopwords, const LemmaMap& lemmas)
    : lemmas_(close_lemma_table(lemmas)) {
  for (const auto& w : stopwords) {
    for (auto& t : letter_tokens(w)) stopwords_.insert(std::move(t));
  }
}

Paragraph Normalizer::tokens(std::string_view paragraph) const {
  Paragraph out;
  for (auto& tok : letter_tokens(paragraph)) {
    if (stopwords_.contains(tok)) continue;
    if (const auto it = lemmas_.find(tok); it != lemmas_.end()) {
      if (stopwords_.contains(it->second)) continue;
      out.push_back(it->second);
    } else {
      out.push_back(std::move(tok));
    }
  }
  return out;
}

OrganizedText Normalizer::operator()(const std::vector<std::string>& paragraphs,
                                     std::string source_id) const {
  OrganizedText text;
  text.source_id = std::move(source_id);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    auto toks = tokens(paragraphs[i]);
    if (toks.empty()) continue;
    text.paragraphs.push_back(std::move(toks));
    text.origin.push_back(i);
  }
  return text;
}

OrganizedText normalize(const std::vector<std::string>& paragraphs, const StopwordSet& stopwords,
                        const LemmaMap& lemmas) {
  return Normalizer(stopwords, lemmas)(paragraphs);
}

OrganizedText shuffle_words(const OrganizedText& text, std::uint64_t seed) {
  if (text.paragraphs.empty()) throw std::invalid_argument("shuffle_words: text has no paragraphs");
  std::vector<std::string> pool;
  pool.reserve(text.token_count());
  for (const auto& p : text.paragraphs) pool.insert(pool.end(), p.begin(), p.end());

  Rng rng(seed);
  shuffle(std::span(pool), rng);

  OrganizedText out;
  out.source_id = text.source_id;
  out.class_label = TextClass::SW;
  out.origin = text.origin;
  out.paragraphs.reserve(text.paragraphs.size());
  auto next = pool.begin();
  for (const auto& p : text.paragraphs) {
    const auto len = static_cast<std::ptrdiff_t>(p.size());
    out.paragraphs.emplace_back(std::make_move_iterator(next), std::make_move_iterator(next + len));
    next += len;
  }
  return out;
}

OrganizedText shuffle_paragraphs(const OrganizedText& text, std::uint64_t seed) {
  if (text.paragraphs.empty()) {
    throw std::invalid_argument("shuffle_paragraphs: text has no paragraphs");
  }
  std::vector<std::size_t> order(text.paragraphs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(std::span(order), rng);

  OrganizedText out;
  out.source_id = text.source_id;
  out.class_label = TextClass::SP;
  out.paragraphs.reserve(order.size());
  for (auto k : order) {
    out.paragraphs.push_back(text.paragraphs[k]);
    if (k < text.origin.size()) out.origin.push_back(text.origin[k]);
  }
  if (out.origin.size() != out.paragraphs.size()) out.origin.clear();
  return out;
}

std::vector<int> chapter_of_paragraphs(const std::vector<std::string>& raw_paragraphs,
                                       const std::regex& heading) {
  std::vector<int> out;
  out.reserve(raw_paragraphs.size());
  int chapter = 0;
  for (const auto& p : raw_paragraphs) {
    if (std::regex_search(p, heading)) ++chapter;
    out.push_back(chapter);
  }
  return out;
}

}  // namespace mesotext
