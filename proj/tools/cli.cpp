#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gradetree/gradetree.hpp"

namespace gradetree::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string data;
  std::string schema;
  std::string model;
  std::string out;
  std::string criterion = "gain";
  std::size_t min_support = 0;
  std::optional<std::size_t> max_depth;
  std::string format = "text";
  double tolerance = kDefaultPublishedTolerance;
};

fs::path data_path(const Options& o) { return o.data.empty() ? fixture_csv_path() : fs::path(o.data); }

// Explicit --schema, else a "<name>.schema.json" sidecar next to the data,
// else the bundled fixture schema.
fs::path schema_path(const Options& o) {
  if (!o.schema.empty()) return o.schema;
  if (!o.data.empty()) {
    auto sidecar = fs::path(o.data);
    sidecar.replace_extension(".schema.json");
    if (fs::exists(sidecar)) return sidecar;
  }
  return fixture_schema_path();
}

Dataset load_data(const Options& o) { return load_csv(data_path(o), load_schema(schema_path(o))); }

TreeConfig config_from(const Options& o) {
  TreeConfig config;
  config.criterion = parse_criterion(o.criterion);
  config.min_leaf_support = o.min_support;
  config.max_depth = o.max_depth;
  return config;
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw DataError(o.out + ": cannot open for writing");
  file << text;
  if (!file) throw DataError(o.out + ": write failed");
}

std::string root_name(const DecisionTree& tree) {
  return tree.root().is_leaf() ? std::string("(leaf)")
                               : tree.schema().predictor(tree.root().split().attribute).name;
}

// A model from --model when given, otherwise one trained on --data.
DecisionTree model_or_train(const Options& o, const Dataset* training) {
  if (!o.model.empty()) {
    auto tree = load_model(o.model, training ? &training->schema() : nullptr);
    if (o.min_support > 0) tree = prune(tree, o.min_support);
    return tree;
  }
  if (training) return id3_build(*training, config_from(o));
  return id3_build(load_data(o), config_from(o));
}

int cmd_train(const Options& o, std::ostream& out) {
  const auto dataset = load_data(o);
  const auto tree = id3_build(dataset, config_from(o));
  save_model(o.model, tree);
  const auto stats = tree_stats(tree);
  const auto matrix = confusion(tree, dataset);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = o.model;
    j["criterion"] = std::string(to_string(tree.config().criterion));
    j["min_support"] = tree.config().min_leaf_support;
    j["root"] = root_name(tree);
    j["leaves"] = stats.leaves;
    j["nodes"] = stats.nodes;
    j["depth"] = stats.depth;
    j["training_accuracy"] = matrix.accuracy();
    out << j.dump(2) << "\n";
    return kOk;
  }
  char acc[32];
  std::snprintf(acc, sizeof acc, "%.6f", matrix.accuracy());
  out << "model written to " << o.model << "\n"
      << "criterion: " << to_string(tree.config().criterion)
      << ", min-support: " << tree.config().min_leaf_support << "\n"
      << "root attribute: " << root_name(tree) << "\n"
      << "leaves: " << stats.leaves << ", nodes: " << stats.nodes << ", depth: " << stats.depth
      << "\n"
      << "training accuracy: " << acc << " (" << matrix.diagonal() << "/" << matrix.total()
      << ")\n";
  return kOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  std::optional<AttributeSchema> expected;
  if (!o.schema.empty()) expected = load_schema(o.schema);
  const auto tree = load_model(o.model, expected ? &*expected : nullptr);

  const auto input = data_path(o);
  std::ifstream in(input);
  if (!in) throw DataError(input.string() + ": cannot open file");
  const auto table = parse_unlabeled_csv(in, tree.schema(), {}, input.string());

  std::ostringstream csv;
  auto row_out = [&](const std::vector<std::string>& cells) {
    for (const auto& cell : cells) csv << cell << ',';
  };
  row_out(table.header);
  csv << "predicted_" << tree.schema().class_attribute().name << ",confidence\n";
  for (std::size_t r = 0; r < table.values.size(); ++r) {
    const auto prediction = tree.predict(table.values[r]);
    char conf[32];
    std::snprintf(conf, sizeof conf, "%.6f", prediction.confidence);
    row_out(table.cells[r]);
    csv << tree.schema().class_attribute().domain[prediction.label] << ',' << conf << '\n';
  }
  write_output(o, csv.str(), out);
  return kOk;
}

int cmd_rules(const Options& o, std::ostream& out) {
  const auto dataset = load_data(o);
  const auto tree = model_or_train(o, &dataset);
  const auto rules = extract_rules(tree, dataset);
  write_output(o, o.format == "json" ? rules_to_json(rules) : render_rules(rules), out);
  return kOk;
}

int cmd_gains(const Options& o, std::ostream& out) {
  const auto dataset = load_data(o);
  const auto dist = class_distribution(dataset);
  const auto scores = score_all(dataset);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["records"] = dataset.size();
    j["entropy"] = impurity(dist, ImpurityKind::Entropy);
    j["gini"] = impurity(dist, ImpurityKind::Gini);
    j["classification_error"] = impurity(dist, ImpurityKind::ClassificationError);
    j["attributes"] = nlohmann::ordered_json::array();
    for (const auto& s : scores) {
      j["attributes"].push_back({{"attribute", s.attribute},
                                 {"gain", s.gain},
                                 {"split_information", s.split_information},
                                 {"gain_ratio", s.gain_ratio}});
    }
    write_output(o, j.dump(2) + "\n", out);
    return kOk;
  }
  std::ostringstream text;
  char line[160];
  std::snprintf(line, sizeof line, "records: %zu\nentropy: %.6f  gini: %.6f  classification error: %.6f\n\n",
                dataset.size(), impurity(dist, ImpurityKind::Entropy),
                impurity(dist, ImpurityKind::Gini),
                impurity(dist, ImpurityKind::ClassificationError));
  text << line;
  std::snprintf(line, sizeof line, "%-10s  %10s  %17s  %10s\n", "attribute", "gain",
                "split information", "gain ratio");
  text << line;
  for (const auto& s : scores) {
    std::snprintf(line, sizeof line, "%-10s  %10.6f  %17.6f  %10.6f\n", s.attribute.c_str(),
                  s.gain, s.split_information, s.gain_ratio);
    text << line;
  }
  write_output(o, text.str(), out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto dataset = load_data(o);
  const auto report = verify_published(dataset, published_values(), o.tolerance);
  write_output(o, o.format == "json" ? report.to_json() : report.to_text(), out);
  return report.oracle_agrees() ? kOk : kVerifyFailure;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  std::optional<Dataset> dataset;
  if (o.model.empty()) dataset = load_data(o);
  const auto tree = model_or_train(o, dataset ? &*dataset : nullptr);
  write_output(o, to_dot(tree), out);
  return kOk;
}

void add_data_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--data", o.data, "Dataset CSV (defaults to the bundled fixture)");
  cmd.add_option("--schema", o.schema, "Schema sidecar JSON");
}

void add_training_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--criterion", o.criterion, "Split criterion")
      ->check(CLI::IsMember({"gain", "gain-ratio"}));
  cmd.add_option("--min-support", o.min_support, "Prune subtrees with fewer records")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--max-depth", o.max_depth, "Maximum tree depth")->check(CLI::PositiveNumber);
}

void add_format_option(CLI::App& cmd, Options& o) {
  cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-tree induction for categorical student-performance data", "gradetree"};
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "Build a tree and save it as a JSON model");
  add_data_options(*train, o);
  add_training_options(*train, o);
  add_format_option(*train, o);
  train->add_option("--out,--model", o.model, "Model output path")->required();

  auto* predict = app.add_subcommand("predict", "Append predicted class and confidence to a CSV");
  predict->add_option("--model", o.model, "Model JSON")->required();
  predict->add_option("--data", o.data, "Input CSV (class column optional)")->required();
  predict->add_option("--schema", o.schema, "Reject the model unless its schema matches");
  predict->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* rules = app.add_subcommand("rules", "Print IF-THEN rules, one per leaf");
  add_data_options(*rules, o);
  add_training_options(*rules, o);
  add_format_option(*rules, o);
  rules->add_option("--model", o.model, "Model JSON (default: train on --data)");
  rules->add_option("--out", o.out, "Output file (default stdout)");

  auto* gains = app.add_subcommand("gains", "Entropy, gain, split information and gain ratio");
  add_data_options(*gains, o);
  add_format_option(*gains, o);
  gains->add_option("--out", o.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Audit the published tables against recomputation");
  add_data_options(*verify, o);
  add_format_option(*verify, o);
  verify->add_option("--tolerance", o.tolerance, "Published-vs-oracle tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out, "Output file (default stdout)");

  auto* dot = app.add_subcommand("export-dot", "Write the tree as a Graphviz digraph");
  add_data_options(*dot, o);
  add_training_options(*dot, o);
  dot->add_option("--model", o.model, "Model JSON (default: train on --data)");
  dot->add_option("--out", o.out, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (train->parsed()) return cmd_train(o, out);
    if (predict->parsed()) return cmd_predict(o, out);
    if (rules->parsed()) return cmd_rules(o, out);
    if (gains->parsed()) return cmd_gains(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (dot->parsed()) return cmd_export_dot(o, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace gradetree::cli
