#include "gradetree/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gradetree/error.hpp"

namespace gradetree {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

ordered_json distribution_to_json(const ClassDistribution& dist, const AttributeSchema& schema) {
  ordered_json j = ordered_json::object();
  for (std::size_t c = 0; c < dist.size(); ++c) {
    j[schema.class_attribute().domain[c]] = dist.count(c);
  }
  return j;
}

ordered_json node_to_json(const DecisionNode& node, const AttributeSchema& schema) {
  ordered_json j;
  if (node.is_leaf()) {
    j["kind"] = "leaf";
    j["label"] = schema.class_attribute().domain[node.leaf().label];
  } else {
    const auto& split = node.split();
    const auto& attribute = schema.predictor(split.attribute);
    j["kind"] = "split";
    j["attribute"] = attribute.name;
    ordered_json branches = ordered_json::object();
    for (std::size_t v = 0; v < split.branches.size(); ++v) {
      branches[attribute.domain[v]] = node_to_json(split.branches[v], schema);
    }
    j["branches"] = std::move(branches);
  }
  j["support"] = node.support;
  j["distribution"] = distribution_to_json(node.distribution, schema);
  return j;
}

class NodeReader {
 public:
  explicit NodeReader(const AttributeSchema& schema)
      : schema_(schema), on_path_(schema.predictor_count(), false) {}

  DecisionNode read(const json& j, const std::string& where) {
    if (!j.is_object()) throw DataError(where + ": node must be an object");
    DecisionNode node;
    node.support = j.at("support").get<std::size_t>();
    node.distribution = read_distribution(j.at("distribution"), where);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "leaf") {
      const auto label = j.at("label").get<std::string>();
      const auto index = schema_.class_attribute().value_index(label);
      if (!index) throw DataError(where + ": unknown class label '" + label + "'");
      if (*index != node.distribution.majority()) {
        throw DataError(where + ": leaf label '" + label + "' is not the distribution majority");
      }
      node.body = LeafNode{*index};
      return node;
    }
    if (kind != "split") throw DataError(where + ": unknown node kind '" + kind + "'");

    const auto name = j.at("attribute").get<std::string>();
    const auto a = schema_.predictor_index(name);
    if (!a) throw DataError(where + ": unknown attribute '" + name + "'");
    if (on_path_[*a]) throw DataError(where + ": attribute '" + name + "' repeats on a path");
    const auto& attribute = schema_.predictor(*a);
    const auto& branches = j.at("branches");
    if (!branches.is_object() || branches.size() != attribute.cardinality()) {
      throw DataError(where + ": branches of '" + name + "' must cover its whole domain");
    }
    SplitNode split;
    split.attribute = *a;
    on_path_[*a] = true;
    for (const auto& value : attribute.domain) {
      if (!branches.contains(value)) {
        throw DataError(where + ": split on '" + name + "' lacks branch '" + value + "'");
      }
      split.branches.push_back(read(branches.at(value), where + "/" + name + "=" + value));
    }
    on_path_[*a] = false;
    node.body = std::move(split);
    return node;
  }

 private:
  ClassDistribution read_distribution(const json& j, const std::string& where) const {
    const auto& classes = schema_.class_attribute().domain;
    if (!j.is_object() || j.size() != classes.size()) {
      throw DataError(where + ": distribution must list every class");
    }
    std::vector<std::size_t> counts;
    for (const auto& label : classes) {
      if (!j.contains(label)) throw DataError(where + ": distribution lacks class '" + label + "'");
      counts.push_back(j.at(label).get<std::size_t>());
    }
    return ClassDistribution(std::move(counts));
  }

  const AttributeSchema& schema_;
  std::vector<bool> on_path_;
};

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void emit_dot(const DecisionNode& node, const AttributeSchema& schema, std::size_t& next_id,
              std::ostringstream& out) {
  const auto id = next_id++;
  if (node.is_leaf()) {
    out << "  n" << id << " [shape=ellipse, label=\""
        << dot_escape(schema.class_attribute().domain[node.leaf().label])
        << "\\nsupport=" << node.support << "\"];\n";
    return;
  }
  const auto& split = node.split();
  const auto& attribute = schema.predictor(split.attribute);
  out << "  n" << id << " [shape=box, label=\"" << dot_escape(attribute.name) << "\"];\n";
  for (std::size_t v = 0; v < split.branches.size(); ++v) {
    const auto child = next_id;
    out << "  n" << id << " -> n" << child << " [label=\"" << dot_escape(attribute.domain[v])
        << "\"];\n";
    emit_dot(split.branches[v], schema, next_id, out);
  }
}

}  // namespace

std::string model_to_json(const DecisionTree& tree) {
  const auto& schema = tree.schema();
  ordered_json j;
  j["format"] = "gradetree-model";
  j["version"] = kModelFormatVersion;
  j["schema"] = ordered_json::parse(schema_to_json(schema));
  j["schema_digest"] = schema.digest();
  ordered_json config;
  config["criterion"] = std::string(to_string(tree.config().criterion));
  config["min_leaf_support"] = tree.config().min_leaf_support;
  config["max_depth"] = tree.config().max_depth ? ordered_json(*tree.config().max_depth)
                                                 : ordered_json(nullptr);
  j["config"] = std::move(config);
  j["training_size"] = tree.training_size();
  j["root"] = node_to_json(tree.root(), schema);
  return j.dump(2) + "\n";
}

DecisionTree model_from_json(std::string_view text, const AttributeSchema* expected) {
  try {
    const auto j = json::parse(text);
    if (!j.is_object() || j.value("format", "") != "gradetree-model") {
      throw DataError("model: not a gradetree model document");
    }
    const auto version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model: unsupported format version " + std::to_string(version));
    }
    auto schema = std::make_shared<const AttributeSchema>(parse_schema_json(j.at("schema").dump()));
    const auto digest = j.at("schema_digest").get<std::string>();
    if (digest != schema->digest()) {
      throw DataError("model: schema digest " + digest + " does not match embedded schema (" +
                      schema->digest() + ")");
    }
    if (expected && expected->digest() != digest) {
      throw DataError("model: schema digest mismatch (model " + digest + ", supplied schema " +
                      expected->digest() + ")");
    }
    TreeConfig config;
    const auto& c = j.at("config");
    config.criterion = parse_criterion(c.at("criterion").get<std::string>());
    config.min_leaf_support = c.at("min_leaf_support").get<std::size_t>();
    if (!c.at("max_depth").is_null()) config.max_depth = c.at("max_depth").get<std::size_t>();
    config.validate();
    NodeReader reader(*schema);
    auto root = reader.read(j.at("root"), "root");
    return DecisionTree(std::move(root), std::move(schema), config,
                        j.at("training_size").get<std::size_t>());
  } catch (const json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const DecisionTree& tree) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  out << model_to_json(tree);
  if (!out) throw DataError(path.string() + ": write failed");
}

DecisionTree load_model(const std::filesystem::path& path, const AttributeSchema* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open model file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return model_from_json(buffer.str(), expected);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string to_dot(const DecisionTree& tree) {
  std::ostringstream out;
  out << "digraph DecisionTree {\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  std::size_t next_id = 0;
  emit_dot(tree.root(), tree.schema(), next_id, out);
  out << "}\n";
  return out.str();
}

}  // namespace gradetree
