#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mesotext {

/// Class of a text in the discrimination experiment: real text, shuffled
/// words, or shuffled paragraphs.
enum class TextClass { RT, SW, SP };

std::string_view to_string(TextClass c);

/// Parses "RT", "SW" or "SP". Throws std::invalid_argument otherwise.
TextClass parse_text_class(std::string_view s);

inline constexpr TextClass kAllClasses[] = {TextClass::RT, TextClass::SW, TextClass::SP};

/// Counters and warnings collected along a pipeline run. Operations that
/// take a `Diagnostics*` accept nullptr when the caller does not care.
struct Diagnostics {
  std::size_t zero_vector_pairs = 0;   // cosine pairs involving an all-zero vector
  std::size_t skipped_cv_windows = 0;  // zero-mean subsequences skipped by windowed_cv
  std::vector<std::string> warnings;

  void warn(std::string message);
  void merge(const Diagnostics& other);
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag) diag->warn(std::move(message));
}

}  // namespace mesotext
