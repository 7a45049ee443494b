#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mesotext/common.hpp"
#include "mesotext/corpus.hpp"

namespace mesotext {

/// Stride-1 windows of `delta` consecutive paragraphs over an OrganizedText.
/// Window k covers paragraphs k .. k+delta-1. The corpus refers to `source`,
/// which must outlive it.
class WindowCorpus {
 public:
  WindowCorpus(const OrganizedText& source, std::size_t delta);

  std::size_t delta() const { return delta_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const OrganizedText& source() const { return *source_; }

  /// Paragraphs of window k.
  std::span<const Paragraph> window(std::size_t k) const;

 private:
  const OrganizedText* source_;
  std::size_t delta_;
  std::size_t count_;
};

/// Throws std::invalid_argument when delta == 0. When the text has fewer
/// than `delta` paragraphs the corpus is empty and a warning is recorded.
WindowCorpus build_windows(const OrganizedText& text, std::size_t delta,
                           Diagnostics* diag = nullptr);

class Vocabulary {
 public:
  /// Index of `word`, adding it if unseen. Indices are contiguous from 0 in
  /// order of first insertion.
  std::uint32_t intern(const std::string& word);
  std::optional<std::uint32_t> find(std::string_view word) const;
  const std::string& word(std::uint32_t index) const { return words_.at(index); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> words_;
};

struct TermWeight {
  std::uint32_t term;
  double weight;
};

/// Sparse tf-idf weights sorted by term index; only strictly positive
/// weights are stored.
struct TfIdfVector {
  std::vector<TermWeight> entries;

  double weight(std::uint32_t term) const;
  double norm() const;
  bool is_zero() const { return entries.empty(); }
};

/// Collection over which document frequencies are counted.
enum class IdfUnit { Window, Paragraph };

IdfUnit parse_idf_unit(std::string_view s);
std::string_view to_string(IdfUnit unit);

struct TfIdfModel {
  Vocabulary vocabulary;
  std::vector<double> idf;              // per term, natural log
  std::vector<TfIdfVector> vectors;     // one per window
};

/// weight(w, P) = count(w in P) * ln(|D| / f_w). With IdfUnit::Window, D is
/// the set of windows and f_w the number of windows containing w; with
/// IdfUnit::Paragraph, D is the set of paragraphs of the source text.
/// Throws std::invalid_argument on an empty corpus.
TfIdfModel compute_tfidf(const WindowCorpus& corpus, IdfUnit unit = IdfUnit::Window);

/// Cosine of the angle between two weight vectors, clamped to [0, 1].
/// If either vector is all zero the similarity is 0 and
/// `diag->zero_vector_pairs` is incremented.
double cosine_similarity(const TfIdfVector& a, const TfIdfVector& b, Diagnostics* diag = nullptr);

}  // namespace mesotext
