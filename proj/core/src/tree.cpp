#include "gradetree/tree.hpp"

#include <algorithm>

#include "gradetree/error.hpp"
#include "gradetree/metrics.hpp"

namespace gradetree {

namespace {

// Scores closer than this are treated as tied so that rounding noise in
// the last bits cannot override the lowest-index rule.
constexpr double kTieEpsilon = 1e-12;

class Builder {
 public:
  Builder(const AttributeSchema& schema, const TreeConfig& config)
      : schema_(schema), config_(config), used_(schema.predictor_count(), false) {}

  DecisionNode build(std::vector<Record> records, std::size_t depth) {
    auto dist = class_distribution(schema_, records);
    const auto support = records.size();
    const bool exhausted = std::all_of(used_.begin(), used_.end(), [](bool u) { return u; });
    const bool depth_reached = config_.max_depth && depth >= *config_.max_depth;
    if (dist.is_pure() || exhausted || depth_reached) {
      return DecisionNode::make_leaf(support, std::move(dist));
    }

    const auto attribute = best_attribute(records);
    const auto cardinality = schema_.predictor(attribute).cardinality();
    std::vector<std::vector<Record>> parts(cardinality);
    for (auto& record : records) parts[record.values[attribute]].push_back(std::move(record));

    SplitNode split;
    split.attribute = attribute;
    split.branches.reserve(cardinality);
    used_[attribute] = true;
    for (auto& part : parts) {
      if (part.empty()) {
        split.branches.push_back(DecisionNode::make_leaf(0, dist));
      } else {
        split.branches.push_back(build(std::move(part), depth + 1));
      }
    }
    used_[attribute] = false;
    return DecisionNode{std::move(split), support, std::move(dist)};
  }

 private:
  std::size_t best_attribute(std::span<const Record> records) const {
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t a = 0; a < used_.size(); ++a) {
      if (used_[a]) continue;
      const auto score = score_attribute(schema_, records, a);
      const double value =
          config_.criterion == Criterion::Gain ? score.gain : score.gain_ratio;
      if (!best || value > best_score + kTieEpsilon) {
        best = a;
        best_score = value;
      }
    }
    return *best;
  }

  const AttributeSchema& schema_;
  const TreeConfig& config_;
  std::vector<bool> used_;
};

void collect_stats(const DecisionNode& node, std::size_t depth, TreeStats& stats) {
  ++stats.nodes;
  stats.depth = std::max(stats.depth, depth);
  if (node.is_leaf()) {
    ++stats.leaves;
    return;
  }
  for (const auto& child : node.split().branches) collect_stats(child, depth + 1, stats);
}

DecisionNode prune_node(const DecisionNode& node, std::size_t min_support) {
  if (node.is_leaf()) return node;
  // A split none of whose children reaches the threshold collapses too; this
  // includes every node that is itself below the threshold.
  const auto& branches = node.split().branches;
  const bool all_below = std::all_of(branches.begin(), branches.end(),
                                     [&](const DecisionNode& c) { return c.support < min_support; });
  if (all_below) return DecisionNode::make_leaf(node.support, node.distribution);
  SplitNode split;
  split.attribute = node.split().attribute;
  for (const auto& child : node.split().branches) {
    split.branches.push_back(prune_node(child, min_support));
  }
  return DecisionNode{std::move(split), node.support, node.distribution};
}

}  // namespace

std::string_view to_string(Criterion criterion) {
  return criterion == Criterion::Gain ? "gain" : "gain-ratio";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "gain") return Criterion::Gain;
  if (text == "gain-ratio") return Criterion::GainRatio;
  throw ArgumentError("unknown criterion '" + std::string(text) + "' (expected gain or gain-ratio)");
}

void TreeConfig::validate() const {
  if (max_depth && *max_depth == 0) throw ArgumentError("max_depth must be at least 1");
}

bool SplitNode::operator==(const SplitNode& other) const {
  return attribute == other.attribute && branches == other.branches;
}

DecisionNode DecisionNode::make_leaf(std::size_t support, ClassDistribution distribution) {
  const auto label = distribution.majority();
  return DecisionNode{LeafNode{label}, support, std::move(distribution)};
}

DecisionTree::DecisionTree(DecisionNode root, SchemaPtr schema, TreeConfig config,
                           std::size_t training_size)
    : root_(std::move(root)),
      schema_(std::move(schema)),
      config_(config),
      training_size_(training_size) {
  if (!schema_) throw ArgumentError("decision tree requires a schema");
}

Prediction DecisionTree::predict(std::span<const std::size_t> values) const {
  const DecisionNode* node = &root_;
  while (!node->is_leaf()) {
    const auto& split = node->split();
    const auto& attribute = schema_->predictor(split.attribute);
    if (split.attribute >= values.size()) {
      throw ArgumentError("no value supplied for attribute '" + attribute.name + "'");
    }
    const auto value = values[split.attribute];
    if (value >= attribute.cardinality()) {
      throw ArgumentError("value index " + std::to_string(value) + " outside domain of '" +
                          attribute.name + "'");
    }
    if (value >= split.branches.size()) break;  // branch absent: answer from this node
    node = &split.branches[value];
  }
  Prediction prediction;
  prediction.label = node->is_leaf() ? node->leaf().label : node->distribution.majority();
  prediction.distribution = node->distribution;
  const auto total = prediction.distribution.total();
  prediction.confidence =
      total == 0 ? 0.0
                 : static_cast<double>(prediction.distribution.count(prediction.label)) /
                       static_cast<double>(total);
  return prediction;
}

Prediction DecisionTree::predict(const std::map<std::string, std::string>& values) const {
  // Attributes the traversal never reaches may be omitted.
  std::vector<std::size_t> indices(schema_->predictor_count(), 0);
  for (const auto& [name, value] : values) {
    const auto a = schema_->require_predictor(name);
    const auto v = schema_->predictor(a).value_index(value);
    if (!v) {
      throw ArgumentError("value '" + value + "' outside domain of '" + name + "'");
    }
    indices[a] = *v;
  }
  const DecisionNode* node = &root_;
  while (!node->is_leaf()) {
    const auto& name = schema_->predictor(node->split().attribute).name;
    if (!values.contains(name)) {
      throw ArgumentError("no value supplied for attribute '" + name + "'");
    }
    node = &node->split().branches[indices[node->split().attribute]];
  }
  return predict(indices);
}

bool DecisionTree::operator==(const DecisionTree& other) const {
  return root_ == other.root_ && *schema_ == *other.schema_ && config_ == other.config_ &&
         training_size_ == other.training_size_;
}

DecisionTree id3_build(const Dataset& dataset, const TreeConfig& config) {
  config.validate();
  if (dataset.empty()) throw ArgumentError("id3_build: empty dataset");
  if (dataset.schema().predictor_count() == 0) throw ArgumentError("id3_build: no predictors");

  Builder builder(dataset.schema(), config);
  auto root = builder.build({dataset.records().begin(), dataset.records().end()}, 0);
  DecisionTree tree(std::move(root), dataset.schema_ptr(), config, dataset.size());
  if (config.min_leaf_support > 0) return prune(tree, config.min_leaf_support);
  return tree;
}

TreeStats tree_stats(const DecisionNode& node) {
  TreeStats stats;
  collect_stats(node, 0, stats);
  return stats;
}

TreeStats tree_stats(const DecisionTree& tree) { return tree_stats(tree.root()); }

DecisionTree prune(const DecisionTree& tree, std::size_t min_support) {
  if (min_support == 0) throw ArgumentError("prune: min_support must be at least 1");
  auto config = tree.config();
  config.min_leaf_support = std::max(config.min_leaf_support, min_support);
  return DecisionTree(prune_node(tree.root(), min_support), tree.schema_ptr(), config,
                      tree.training_size());
}

}  // namespace gradetree
