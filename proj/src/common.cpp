#include "mesotext/common.hpp"

#include <stdexcept>

namespace mesotext {

std::string_view to_string(TextClass c) {
  switch (c) {
    case TextClass::RT: return "RT";
    case TextClass::SW: return "SW";
    case TextClass::SP: return "SP";
  }
  return "RT";
}

TextClass parse_text_class(std::string_view s) {
  if (s == "RT") return TextClass::RT;
  if (s == "SW") return TextClass::SW;
  if (s == "SP") return TextClass::SP;
  throw std::invalid_argument("unknown text class '" + std::string(s) + "'");
}

void Diagnostics::warn(std::string message) { warnings.push_back(std::move(message)); }

void Diagnostics::merge(const Diagnostics& other) {
  zero_vector_pairs += other.zero_vector_pairs;
  skipped_cv_windows += other.skipped_cv_windows;
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

}  // namespace mesotext
