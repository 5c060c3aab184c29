#include "gradetree/rules.hpp"

#include <cstdio>

#include <json.hpp>

#include "gradetree/error.hpp"

namespace gradetree {

namespace {

using Path = std::vector<std::pair<std::size_t, std::size_t>>;  // (attribute, value)

void walk(const DecisionNode& node, Path& path, const Dataset& training,
          std::vector<Rule>& rules) {
  if (!node.is_leaf()) {
    const auto& split = node.split();
    for (std::size_t v = 0; v < split.branches.size(); ++v) {
      path.emplace_back(split.attribute, v);
      walk(split.branches[v], path, training, rules);
      path.pop_back();
    }
    return;
  }
  const auto& schema = training.schema();
  Rule rule;
  for (const auto& [a, v] : path) {
    rule.conditions.push_back({schema.predictor(a).name, schema.predictor(a).domain[v]});
  }
  const auto label = node.leaf().label;
  rule.class_attribute = schema.class_attribute().name;
  rule.consequent = schema.class_attribute().domain[label];

  std::size_t hits = 0;
  for (const auto& record : training.records()) {
    bool matches = true;
    for (const auto& [a, v] : path) {
      if (record.values[a] != v) {
        matches = false;
        break;
      }
    }
    if (!matches) continue;
    ++rule.support;
    if (record.label == label) ++hits;
  }
  rule.confidence =
      rule.support == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(rule.support);
  rules.push_back(std::move(rule));
}

}  // namespace

std::vector<Rule> extract_rules(const DecisionTree& tree, const Dataset& training) {
  if (!(tree.schema() == training.schema())) {
    throw ArgumentError("extract_rules: training data schema does not match the tree");
  }
  std::vector<Rule> rules;
  Path path;
  walk(tree.root(), path, training, rules);
  return rules;
}

std::string render_rule(const Rule& rule) {
  std::string out = "IF ";
  if (rule.conditions.empty()) {
    out += "TRUE";
  } else {
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      if (i) out += " AND ";
      out += rule.conditions[i].attribute + " = '" + rule.conditions[i].value + "'";
    }
  }
  out += " THEN " + rule.class_attribute + " = '" + rule.consequent + "'";
  char tail[64];
  std::snprintf(tail, sizeof tail, " [support=%zu, confidence=%.3f]", rule.support,
                rule.confidence);
  return out + tail;
}

std::string render_rules(const std::vector<Rule>& rules) {
  std::string out;
  for (const auto& rule : rules) out += render_rule(rule) + "\n";
  return out;
}

std::string rules_to_json(const std::vector<Rule>& rules) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& rule : rules) {
    nlohmann::ordered_json r;
    r["conditions"] = nlohmann::ordered_json::array();
    for (const auto& c : rule.conditions) {
      r["conditions"].push_back({{"attribute", c.attribute}, {"value", c.value}});
    }
    r["class_attribute"] = rule.class_attribute;
    r["consequent"] = rule.consequent;
    r["support"] = rule.support;
    r["confidence"] = rule.confidence;
    j.push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

}  // namespace gradetree
