#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gradetree/dataset.hpp"
#include "gradetree/tree.hpp"

namespace gradetree {

inline constexpr int kModelFormatVersion = 1;

/// JSON model document:
///   format "gradetree-model", version, schema, schema_digest, config,
///   training_size, root.
/// Nodes are {"kind": "leaf"|"split", "support", "distribution"} plus
/// "label" for leaves and "attribute" + "branches" (value -> node) for splits.
std::string model_to_json(const DecisionTree& tree);

/// Throws DataError on malformed input, an unsupported version, or when the
/// stored digest disagrees with the embedded schema or with `expected`.
DecisionTree model_from_json(std::string_view text,
                             const AttributeSchema* expected = nullptr);

void save_model(const std::filesystem::path& path, const DecisionTree& tree);
DecisionTree load_model(const std::filesystem::path& path,
                        const AttributeSchema* expected = nullptr);

/// Graphviz digraph: splits are boxes labeled with the attribute, edges with
/// the branch value, leaves with label and support.
std::string to_dot(const DecisionTree& tree);

}  // namespace gradetree
