#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gradetree/dataset.hpp"

namespace gradetree {

enum class Criterion { Gain, GainRatio };

std::string_view to_string(Criterion criterion);
/// Accepts "gain" and "gain-ratio".
Criterion parse_criterion(std::string_view text);

struct TreeConfig {
  Criterion criterion = Criterion::Gain;
  /// Subtrees routed fewer records than this become majority leaves; 0 disables.
  std::size_t min_leaf_support = 0;
  std::optional<std::size_t> max_depth;

  void validate() const;
  bool operator==(const TreeConfig&) const = default;
};

struct DecisionNode;

struct LeafNode {
  std::size_t label = 0;
  bool operator==(const LeafNode&) const = default;
};

/// Internal node; `branches[v]` is the child for domain value v of `attribute`.
struct SplitNode {
  std::size_t attribute = 0;
  std::vector<DecisionNode> branches;
  bool operator==(const SplitNode&) const;
};

/// Every node carries the number of training records routed to it and a
/// class distribution. For a branch that received no records the support is
/// 0 and the distribution is copied from the parent.
struct DecisionNode {
  std::variant<LeafNode, SplitNode> body;
  std::size_t support = 0;
  ClassDistribution distribution;

  bool is_leaf() const { return std::holds_alternative<LeafNode>(body); }
  const LeafNode& leaf() const { return std::get<LeafNode>(body); }
  const SplitNode& split() const { return std::get<SplitNode>(body); }

  static DecisionNode make_leaf(std::size_t support, ClassDistribution distribution);

  bool operator==(const DecisionNode&) const = default;
};

struct Prediction {
  std::size_t label = 0;
  ClassDistribution distribution;
  /// Share of the reached node's distribution carried by `label`.
  double confidence = 0.0;
};

struct TreeStats {
  std::size_t leaves = 0;
  std::size_t nodes = 0;
  std::size_t depth = 0;
  bool operator==(const TreeStats&) const = default;
};

class DecisionTree {
 public:
  DecisionTree(DecisionNode root, SchemaPtr schema, TreeConfig config, std::size_t training_size);

  const DecisionNode& root() const { return root_; }
  const AttributeSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  const TreeConfig& config() const { return config_; }
  std::size_t training_size() const { return training_size_; }

  /// `values[i]` is a domain index of predictor i. Throws ArgumentError when
  /// a value is outside its domain.
  Prediction predict(std::span<const std::size_t> values) const;
  /// Name-keyed variant; only attributes actually tested need be present.
  Prediction predict(const std::map<std::string, std::string>& values) const;

  bool operator==(const DecisionTree& other) const;

 private:
  DecisionNode root_;
  SchemaPtr schema_;
  TreeConfig config_;
  std::size_t training_size_;
};

/// ID3 induction. Splits on the best unused attribute under
/// `config.criterion` (ties to the lowest schema index) until a node is
/// pure, no attributes remain, or max_depth is reached. Applies
/// min-support pruning afterwards when configured.
DecisionTree id3_build(const Dataset& dataset, const TreeConfig& config = {});

TreeStats tree_stats(const DecisionTree& tree);
TreeStats tree_stats(const DecisionNode& node);

/// Replaces every subtree with support < min_support by a leaf labeled with
/// that subtree's majority class. A split whose children all fall below
/// min_support is collapsed the same way. Throws ArgumentError if
/// min_support is 0.
DecisionTree prune(const DecisionTree& tree, std::size_t min_support);

}  // namespace gradetree
