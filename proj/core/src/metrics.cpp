#include "gradetree/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gradetree/error.hpp"

namespace gradetree {

namespace {

constexpr double kGainSlack = 1e-12;

// Entropy of a count vector whose sum is `total`.
double entropy_of(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

void require_non_empty(std::span<const Record> records) {
  if (records.empty()) throw ArgumentError("attribute scores need a non-empty dataset");
}

}  // namespace

double entropy(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return entropy_of(counts, total);
}

double impurity(const ClassDistribution& dist, ImpurityKind kind) {
  if (dist.total() == 0) return 0.0;
  switch (kind) {
    case ImpurityKind::Entropy:
      return entropy_of(dist.counts(), dist.total());
    case ImpurityKind::Gini: {
      double sum_sq = 0.0;
      for (double p : dist.probabilities()) sum_sq += p * p;
      return 1.0 - sum_sq;
    }
    case ImpurityKind::ClassificationError: {
      const auto counts = dist.counts();
      const auto top = *std::max_element(counts.begin(), counts.end());
      return 1.0 - static_cast<double>(top) / static_cast<double>(dist.total());
    }
  }
  return 0.0;
}

AttributeScore score_attribute(const AttributeSchema& schema, std::span<const Record> records,
                               std::size_t attribute_index) {
  require_non_empty(records);
  const auto& attribute = schema.predictor(attribute_index);
  const std::size_t classes = schema.class_count();

  // tallies[v * classes + c] = records with value v and class c
  std::vector<std::size_t> tallies(attribute.cardinality() * classes, 0);
  std::vector<std::size_t> part_sizes(attribute.cardinality(), 0);
  std::vector<std::size_t> class_counts(classes, 0);
  for (const auto& record : records) {
    const auto v = record.values[attribute_index];
    ++tallies[v * classes + record.label];
    ++part_sizes[v];
    ++class_counts[record.label];
  }

  const double n = static_cast<double>(records.size());
  double remainder = 0.0;
  for (std::size_t v = 0; v < attribute.cardinality(); ++v) {
    if (part_sizes[v] == 0) continue;
    std::span<const std::size_t> part(tallies.data() + v * classes, classes);
    remainder += static_cast<double>(part_sizes[v]) / n * entropy_of(part, part_sizes[v]);
  }

  AttributeScore score;
  score.attribute = attribute.name;
  score.gain = entropy_of(class_counts, records.size()) - remainder;
  if (score.gain < 0.0 && score.gain >= -kGainSlack) score.gain = 0.0;
  score.split_information = entropy_of(part_sizes, records.size());
  score.gain_ratio = score.split_information > 0.0 ? score.gain / score.split_information : 0.0;
  return score;
}

AttributeScore score_attribute(const Dataset& dataset, std::size_t attribute_index) {
  return score_attribute(dataset.schema(), dataset.records(), attribute_index);
}

double information_gain(const Dataset& dataset, std::string_view attribute) {
  return score_attribute(dataset, dataset.schema().require_predictor(attribute)).gain;
}

double split_information(const Dataset& dataset, std::string_view attribute) {
  return score_attribute(dataset, dataset.schema().require_predictor(attribute)).split_information;
}

double gain_ratio(const Dataset& dataset, std::string_view attribute) {
  return score_attribute(dataset, dataset.schema().require_predictor(attribute)).gain_ratio;
}

std::vector<AttributeScore> score_all(const Dataset& dataset,
                                      std::span<const std::string> available) {
  if (available.empty()) throw ArgumentError("score_all: no attributes given");
  std::vector<std::size_t> indices;
  for (const auto& name : available) indices.push_back(dataset.schema().require_predictor(name));
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  std::vector<AttributeScore> scores;
  scores.reserve(indices.size());
  for (auto index : indices) scores.push_back(score_attribute(dataset, index));
  return scores;
}

std::vector<AttributeScore> score_all(const Dataset& dataset) {
  std::vector<std::string> names;
  for (const auto& attribute : dataset.schema().predictors()) names.push_back(attribute.name);
  return score_all(dataset, names);
}

}  // namespace gradetree
