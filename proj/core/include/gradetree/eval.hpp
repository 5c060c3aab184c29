#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gradetree/dataset.hpp"
#include "gradetree/tree.hpp"

namespace gradetree {

/// Rows are actual classes, columns predicted classes, in class-domain order.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> classes);

  void add(std::size_t actual, std::size_t predicted, std::size_t n = 1);

  std::size_t at(std::size_t actual, std::size_t predicted) const;
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t total() const { return total_; }
  std::size_t diagonal() const;
  std::size_t row_sum(std::size_t actual) const;
  std::size_t column_sum(std::size_t predicted) const;
  double accuracy() const;

  std::string to_text() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

double accuracy(const DecisionTree& tree, const Dataset& dataset);
ConfusionMatrix confusion(const DecisionTree& tree, const Dataset& dataset);

struct LeaveOneOutResult {
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

/// Trains on all records but one and predicts the held-out one, for every
/// record. Requires at least two records.
LeaveOneOutResult leave_one_out(const Dataset& dataset, const TreeConfig& config = {});

}  // namespace gradetree
