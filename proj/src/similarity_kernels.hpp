#pragma once

#include "mesotext/vectorizer.hpp"

namespace mesotext::detail {

double sparse_dot(const TfIdfVector& a, const TfIdfVector& b);
double cosine_from_parts(double dot, double norm_a, double norm_b);

}  // namespace mesotext::detail
