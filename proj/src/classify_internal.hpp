#pragma once

#include <vector>

#include "qiraa/classify.hpp"

namespace qiraa::detail {

/// Labels occurring in y, canonical order.
std::vector<Label> present_classes(const std::vector<Label>& y);

/// Throws std::invalid_argument on empty input, size mismatch or ragged dims.
void check_training_input(const std::vector<SparseVector>& X,
                          const std::vector<Label>& y);

} // namespace qiraa::detail
