#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gradetree/dataset.hpp"
#include "gradetree/tree.hpp"

namespace gradetree {

struct Condition {
  std::string attribute;
  std::string value;
  bool operator==(const Condition&) const = default;
};

struct Rule {
  std::vector<Condition> conditions;  // root first
  std::string class_attribute;
  std::string consequent;
  std::size_t support = 0;
  double confidence = 0.0;
  bool operator==(const Rule&) const = default;
};

/// One rule per leaf in depth-first, domain order. Support and confidence
/// are counted over `training`, which must share the tree's schema.
std::vector<Rule> extract_rules(const DecisionTree& tree, const Dataset& training);

/// `IF a = 'v' AND ... THEN C = 'label' [support=N, confidence=X.XXX]`, one
/// line per rule.
std::string render_rules(const std::vector<Rule>& rules);
std::string render_rule(const Rule& rule);

std::string rules_to_json(const std::vector<Rule>& rules);

}  // namespace gradetree
