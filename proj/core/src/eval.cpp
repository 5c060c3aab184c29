#include "gradetree/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "gradetree/error.hpp"

namespace gradetree {

namespace {

void require_compatible(const DecisionTree& tree, const Dataset& dataset) {
  if (!(tree.schema() == dataset.schema())) {
    throw ArgumentError("dataset schema does not match the tree");
  }
  if (dataset.empty()) throw ArgumentError("cannot evaluate on an empty dataset");
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), counts_(classes_.size() * classes_.size(), 0) {}

void ConfusionMatrix::add(std::size_t actual, std::size_t predicted, std::size_t n) {
  if (actual >= classes_.size() || predicted >= classes_.size()) {
    throw ArgumentError("confusion matrix: class index out of range");
  }
  counts_[actual * classes_.size() + predicted] += n;
  total_ += n;
}

std::size_t ConfusionMatrix::at(std::size_t actual, std::size_t predicted) const {
  return counts_.at(actual * classes_.size() + predicted);
}

std::size_t ConfusionMatrix::diagonal() const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) sum += at(c, c);
  return sum;
}

std::size_t ConfusionMatrix::row_sum(std::size_t actual) const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) sum += at(actual, c);
  return sum;
}

std::size_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) sum += at(c, predicted);
  return sum;
}

double ConfusionMatrix::accuracy() const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(diagonal()) / static_cast<double>(total_);
}

std::string ConfusionMatrix::to_text() const {
  std::size_t width = 8;
  for (const auto& c : classes_) width = std::max(width, c.size() + 2);
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "actual\\pred";
  for (const auto& c : classes_) out << std::right << std::setw(static_cast<int>(width)) << c;
  out << '\n';
  for (std::size_t a = 0; a < classes_.size(); ++a) {
    out << std::left << std::setw(static_cast<int>(width)) << classes_[a];
    for (std::size_t p = 0; p < classes_.size(); ++p) {
      out << std::right << std::setw(static_cast<int>(width)) << at(a, p);
    }
    out << '\n';
  }
  return out.str();
}

ConfusionMatrix confusion(const DecisionTree& tree, const Dataset& dataset) {
  require_compatible(tree, dataset);
  ConfusionMatrix matrix(dataset.schema().class_attribute().domain);
  for (const auto& record : dataset.records()) {
    matrix.add(record.label, tree.predict(record.values).label);
  }
  return matrix;
}

double accuracy(const DecisionTree& tree, const Dataset& dataset) {
  return confusion(tree, dataset).accuracy();
}

LeaveOneOutResult leave_one_out(const Dataset& dataset, const TreeConfig& config) {
  if (dataset.size() < 2) throw ArgumentError("leave-one-out needs at least two records");
  ConfusionMatrix matrix(dataset.schema().class_attribute().domain);
  const auto records = dataset.records();
  for (std::size_t held_out = 0; held_out < records.size(); ++held_out) {
    std::vector<Record> training;
    training.reserve(records.size() - 1);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (i != held_out) training.push_back(records[i]);
    }
    const auto tree = id3_build(dataset.with_records(std::move(training)), config);
    matrix.add(records[held_out].label, tree.predict(records[held_out].values).label);
  }
  const double acc = matrix.accuracy();
  return {acc, std::move(matrix)};
}

}  // namespace gradetree
