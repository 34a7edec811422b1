#include "poiname/matrix.hpp"

#include <algorithm>

#include "poiname/error.hpp"

namespace poiname {

LabeledMatrix::LabeledMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {}

LabeledMatrix::LabeledMatrix(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (values_.size() != labels_.size() * labels_.size()) {
    throw InputError("matrix has " + std::to_string(values_.size()) + " values for " +
                     std::to_string(labels_.size()) + " labels");
  }
}

std::optional<std::size_t> LabeledMatrix::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

bool LabeledMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

}  // namespace poiname
