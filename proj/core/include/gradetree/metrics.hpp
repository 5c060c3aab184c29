#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradetree/dataset.hpp"

namespace gradetree {

enum class ImpurityKind { Entropy, Gini, ClassificationError };

/// Entropy uses log base 2 with 0*log2(0) = 0. The empty distribution has
/// impurity 0 under every kind.
double impurity(const ClassDistribution& dist, ImpurityKind kind);

double entropy(std::span<const std::size_t> counts);
inline double entropy(const ClassDistribution& dist) { return entropy(dist.counts()); }

struct AttributeScore {
  std::string attribute;
  double gain = 0.0;
  double split_information = 0.0;
  double gain_ratio = 0.0;
};

/// Entropy(S) minus the size-weighted entropy of the parts of S split on
/// `attribute`. Slightly negative rounding (>= -1e-12) is clamped to 0.
double information_gain(const Dataset& dataset, std::string_view attribute);
/// Entropy of the part-size distribution of the split.
double split_information(const Dataset& dataset, std::string_view attribute);
/// gain / split_information, or 0 when split_information is 0.
double gain_ratio(const Dataset& dataset, std::string_view attribute);

/// All three criteria for one attribute from a single partition pass.
AttributeScore score_attribute(const Dataset& dataset, std::size_t attribute_index);
AttributeScore score_attribute(const AttributeSchema& schema, std::span<const Record> records,
                               std::size_t attribute_index);

/// Scores for `available`, reported in schema order.
std::vector<AttributeScore> score_all(const Dataset& dataset,
                                      std::span<const std::string> available);
std::vector<AttributeScore> score_all(const Dataset& dataset);

}  // namespace gradetree
