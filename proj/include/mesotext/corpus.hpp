#pragma once

#include <cstddef>
#include <cstdint>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mesotext/common.hpp"

namespace mesotext {

struct RawDocument {
  std::string id;
  std::string language = "en";
  std::string text;
};

/// How raw text is cut into paragraphs.
struct Segmentation {
  enum class Mode { BlankLine, FixedWordCount };

  Mode mode = Mode::BlankLine;
  std::size_t words = 0;  // chunk size in FixedWordCount mode

  static Segmentation blank_line() { return {}; }
  static Segmentation fixed_word_count(std::size_t n) { return {Mode::FixedWordCount, n}; }
};

/// Splits a document into paragraph strings.
///
/// BlankLine mode breaks on runs of one or more empty (whitespace-only)
/// lines; lines inside a paragraph are kept joined by '\n' and CR characters
/// are dropped. FixedWordCount mode emits consecutive chunks of exactly `n`
/// whitespace-separated words, the last chunk possibly shorter.
/// Throws std::invalid_argument on empty text or n == 0.
std::vector<std::string> segment_paragraphs(const RawDocument& doc, const Segmentation& seg);

using Paragraph = std::vector<std::string>;
using StopwordSet = std::unordered_set<std::string>;
using LemmaMap = std::unordered_map<std::string, std::string>;

/// A document after preprocessing: an ordered sequence of paragraphs of
/// normalized tokens.
struct OrganizedText {
  std::vector<Paragraph> paragraphs;
  std::string source_id;
  TextClass class_label = TextClass::RT;
  /// Index of the raw paragraph each entry of `paragraphs` was produced from.
  std::vector<std::size_t> origin;

  std::size_t paragraph_count() const { return paragraphs.size(); }
  std::size_t token_count() const;
};

/// Lowercased runs of Unicode letters in `text`. Every other code point
/// (digits, punctuation, hyphens, apostrophes, symbols, whitespace) separates
/// tokens. Invalid UTF-8 bytes are treated as separators.
std::vector<std::string> letter_tokens(std::string_view text);

/// Stopword removal and lemma lookup over letter tokens.
///
/// The lemma table is normalized on construction: keys and values are
/// lowercased, entries whose key or value is not a single letter token are
/// dropped, and chains (a -> b -> c) are collapsed to their fixed point so
/// that applying the table twice equals applying it once. Members of a cycle
/// all map to the cycle's smallest member.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(StopwordSet stopwords, const LemmaMap& lemmas);

  /// Tokens of one paragraph after lemma mapping and stopword removal.
  Paragraph tokens(std::string_view paragraph) const;

  /// Normalizes every paragraph, dropping those that end up empty.
  OrganizedText operator()(const std::vector<std::string>& paragraphs,
                           std::string source_id = {}) const;

  const StopwordSet& stopwords() const { return stopwords_; }
  const LemmaMap& lemmas() const { return lemmas_; }

 private:
  StopwordSet stopwords_;
  LemmaMap lemmas_;
};

OrganizedText normalize(const std::vector<std::string>& paragraphs, const StopwordSet& stopwords,
                        const LemmaMap& lemmas);

/// Shuffled-words null model: the global token multiset is permuted
/// uniformly and poured back into paragraphs of the original lengths.
/// Throws std::invalid_argument when `text` has no paragraphs.
OrganizedText shuffle_words(const OrganizedText& text, std::uint64_t seed);

/// Shuffled-paragraphs null model: a uniform permutation of whole
/// paragraphs. Throws std::invalid_argument when `text` has no paragraphs.
OrganizedText shuffle_paragraphs(const OrganizedText& text, std::uint64_t seed);

/// Chapter number for every raw paragraph: paragraphs matching `heading`
/// open a new chapter (numbered from 1). Paragraphs before the first heading
/// get chapter 0.
std::vector<int> chapter_of_paragraphs(const std::vector<std::string>& raw_paragraphs,
                                       const std::regex& heading);

}  // namespace mesotext
