#include "mesotext/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "similarity_kernels.hpp"

namespace mesotext {

WindowCorpus::WindowCorpus(const OrganizedText& source, std::size_t delta)
    : source_(&source),
      delta_(delta),
      count_(source.paragraphs.size() >= delta && delta > 0
                 ? source.paragraphs.size() - delta + 1
                 : 0) {}

std::span<const Paragraph> WindowCorpus::window(std::size_t k) const {
  if (k >= count_) throw std::out_of_range("window index out of range");
  return std::span<const Paragraph>(source_->paragraphs).subspan(k, delta_);
}

WindowCorpus build_windows(const OrganizedText& text, std::size_t delta, Diagnostics* diag) {
  if (delta == 0) throw std::invalid_argument("invalid parameter: window size delta must be >= 1");
  WindowCorpus corpus(text, delta);
  if (corpus.empty()) {
    warn(diag, "text '" + text.source_id + "' has " + std::to_string(text.paragraphs.size()) +
                   " paragraphs, fewer than delta=" + std::to_string(delta) + "; no windows built");
  }
  return corpus;
}

std::uint32_t Vocabulary::intern(const std::string& word) {
  const auto [it, inserted] = index_.emplace(word, static_cast<std::uint32_t>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double TfIdfVector::weight(std::uint32_t term) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), term,
                                   [](const TermWeight& e, std::uint32_t t) { return e.term < t; });
  return (it != entries.end() && it->term == term) ? it->weight : 0.0;
}

double TfIdfVector::norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight * e.weight;
  return std::sqrt(s);
}

IdfUnit parse_idf_unit(std::string_view s) {
  if (s == "window") return IdfUnit::Window;
  if (s == "paragraph") return IdfUnit::Paragraph;
  throw std::invalid_argument("unknown idf unit '" + std::string(s) + "' (expected window|paragraph)");
}

std::string_view to_string(IdfUnit unit) {
  return unit == IdfUnit::Window ? "window" : "paragraph";
}

TfIdfModel compute_tfidf(const WindowCorpus& corpus, IdfUnit unit) {
  if (corpus.empty()) throw std::invalid_argument("compute_tfidf: empty window corpus");
  const auto& text = corpus.source();
  const std::size_t n_par = text.paragraphs.size();
  const std::size_t n_win = corpus.size();
  const std::size_t delta = corpus.delta();

  TfIdfModel model;
  // Paragraph-level term counts, sorted by term.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> par_counts(n_par);
  for (std::size_t p = 0; p < n_par; ++p) {
    std::vector<std::uint32_t> ids;
    ids.reserve(text.paragraphs[p].size());
    for (const auto& w : text.paragraphs[p]) ids.push_back(model.vocabulary.intern(w));
    std::sort(ids.begin(), ids.end());
    auto& counts = par_counts[p];
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      counts.emplace_back(ids[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }
  const std::size_t n_terms = model.vocabulary.size();

  // Raw counts per window via a sliding accumulator.
  std::vector<std::uint32_t> running(n_terms, 0);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> win_counts(n_win);
  std::vector<std::uint32_t> doc_freq(n_terms, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t p = 0; p < delta; ++p) {
    for (auto [t, c] : par_counts[p]) running[t] += c;
  }
  for (std::size_t k = 0; k < n_win; ++k) {
    if (k > 0) {
      for (auto [t, c] : par_counts[k - 1]) running[t] -= c;
      for (auto [t, c] : par_counts[k + delta - 1]) running[t] += c;
    }
    touched.clear();
    for (std::size_t p = k; p < k + delta; ++p) {
      for (auto [t, c] : par_counts[p]) touched.push_back(t);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    auto& wc = win_counts[k];
    wc.reserve(touched.size());
    for (auto t : touched) {
      wc.emplace_back(t, running[t]);
      if (unit == IdfUnit::Window) ++doc_freq[t];
    }
  }
  std::size_t n_docs = n_win;
  if (unit == IdfUnit::Paragraph) {
    n_docs = n_par;
    for (const auto& counts : par_counts) {
      for (auto [t, c] : counts) ++doc_freq[t];
    }
  }

  model.idf.resize(n_terms);
  for (std::size_t t = 0; t < n_terms; ++t) {
    // Every interned term occurs in some paragraph; in window mode a term can
    // still be absent from all windows only if n_win == 0, which is excluded.
    model.idf[t] = doc_freq[t] > 0
                       ? std::log(static_cast<double>(n_docs) / static_cast<double>(doc_freq[t]))
                       : 0.0;
  }

  model.vectors.resize(n_win);
  for (std::size_t k = 0; k < n_win; ++k) {
    auto& entries = model.vectors[k].entries;
    for (auto [t, c] : win_counts[k]) {
      const double w = static_cast<double>(c) * model.idf[t];
      if (w > 0.0) entries.push_back({t, w});
    }
  }
  return model;
}

namespace detail {
double sparse_dot(const TfIdfVector& a, const TfIdfVector& b) {
  double dot = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->term < ib->term) {
      ++ia;
    } else if (ib->term < ia->term) {
      ++ib;
    } else {
      dot += ia->weight * ib->weight;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

double cosine_from_parts(double dot, double norm_a, double norm_b) {
  const double s = dot / (norm_a * norm_b);
  return std::clamp(s, 0.0, 1.0);
}
}  // namespace detail

double cosine_similarity(const TfIdfVector& a, const TfIdfVector& b, Diagnostics* diag) {
  if (a.is_zero() || b.is_zero()) {
    if (diag) ++diag->zero_vector_pairs;
    return 0.0;
  }
  return detail::cosine_from_parts(detail::sparse_dot(a, b), a.norm(), b.norm());
}

}  // namespace mesotext
