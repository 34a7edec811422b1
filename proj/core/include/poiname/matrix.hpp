#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poiname {

/// Square matrix whose rows and columns share one list of region labels.
class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  explicit LabeledMatrix(std::vector<std::string> labels);
  LabeledMatrix(std::vector<std::string> labels, std::vector<double> values);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::size_t row, std::size_t col) const { return values_[row * size() + col]; }
  double& at(std::size_t row, std::size_t col) { return values_[row * size() + col]; }

  std::optional<std::size_t> index_of(std::string_view label) const;

  bool is_symmetric() const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

}  // namespace poiname
