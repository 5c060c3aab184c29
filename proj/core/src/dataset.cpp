#include "gradetree/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "digest.hpp"
#include "gradetree/error.hpp"

namespace gradetree {

namespace {

void validate_attribute(const Attribute& attribute, std::string_view role) {
  if (attribute.name.empty()) {
    throw DataError(std::string(role) + " attribute has an empty name");
  }
  if (attribute.domain.empty()) {
    throw DataError("attribute '" + attribute.name + "' has an empty domain");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& value : attribute.domain) {
    if (!seen.insert(value).second) {
      throw DataError("attribute '" + attribute.name + "' lists value '" + value + "' twice");
    }
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

struct CsvHeader {
  std::vector<std::string> names;
  // Column position of each predictor, in schema order.
  std::vector<std::size_t> predictor_columns;
  std::optional<std::size_t> class_column;
};

CsvHeader read_header(std::istream& in, const AttributeSchema& schema, std::string_view source,
                      bool require_class, bool allow_extra) {
  std::string line;
  while (std::getline(in, line) && is_blank(line)) {
  }
  if (is_blank(line)) {
    throw DataError(std::string(source) + ": empty file (no header row)");
  }
  CsvHeader header;
  header.names = split_line(line);
  std::unordered_set<std::string_view> seen;
  for (const auto& name : header.names) {
    if (!seen.insert(name).second) {
      throw DataError(std::string(source) + ": duplicate header column '" + name + "'");
    }
  }
  auto column_of = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.names.begin(), header.names.end(), name);
    if (it == header.names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.names.begin());
  };
  for (const auto& attribute : schema.predictors()) {
    auto column = column_of(attribute.name);
    if (!column) {
      throw DataError(std::string(source) + ": missing column '" + attribute.name + "'");
    }
    header.predictor_columns.push_back(*column);
  }
  header.class_column = column_of(schema.class_attribute().name);
  if (require_class && !header.class_column) {
    throw DataError(std::string(source) + ": missing class column '" +
                    schema.class_attribute().name + "'");
  }
  if (!allow_extra) {
    for (const auto& name : header.names) {
      if (!schema.predictor_index(name) && name != schema.class_attribute().name) {
        throw DataError(std::string(source) + ": unknown column '" + name + "'");
      }
    }
  }
  return header;
}

std::size_t resolve_value(const Attribute& attribute, std::string cell, std::size_t row,
                          std::string_view source, const CsvOptions& options) {
  if (cell.empty()) {
    if (options.missing == MissingPolicy::Reject) {
      throw DataError(std::string(source) + ": row " + std::to_string(row) + ", column " +
                      attribute.name + ": missing value");
    }
    cell = kMissingPlaceholder;
  }
  auto index = attribute.value_index(cell);
  if (!index) {
    throw DataError(std::string(source) + ": row " + std::to_string(row) + ", column " +
                    attribute.name + ": unknown value '" + cell + "' (expected one of " +
                    join(attribute.domain) + ")");
  }
  return *index;
}

// Reads the next non-blank line and splits it, checking the field count.
bool next_row(std::istream& in, const CsvHeader& header, std::size_t& row, std::string_view source,
              std::vector<std::string>& cells) {
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    ++row;
    cells = split_line(line);
    if (cells.size() != header.names.size()) {
      throw DataError(std::string(source) + ": row " + std::to_string(row) + ": expected " +
                      std::to_string(header.names.size()) + " fields, found " +
                      std::to_string(cells.size()));
    }
    return true;
  }
  return false;
}

}  // namespace

std::optional<std::size_t> Attribute::value_index(std::string_view value) const {
  auto it = std::find(domain.begin(), domain.end(), value);
  if (it == domain.end()) return std::nullopt;
  return static_cast<std::size_t>(it - domain.begin());
}

AttributeSchema::AttributeSchema(std::vector<Attribute> predictors, Attribute class_attribute)
    : predictors_(std::move(predictors)), class_attribute_(std::move(class_attribute)) {
  std::unordered_set<std::string_view> names;
  for (const auto& attribute : predictors_) {
    validate_attribute(attribute, "predictor");
    if (!names.insert(attribute.name).second) {
      throw DataError("duplicate attribute name '" + attribute.name + "'");
    }
  }
  validate_attribute(class_attribute_, "class");
  if (names.contains(class_attribute_.name)) {
    throw DataError("class attribute '" + class_attribute_.name + "' collides with a predictor");
  }
}

std::optional<std::size_t> AttributeSchema::predictor_index(std::string_view name) const {
  for (std::size_t i = 0; i < predictors_.size(); ++i) {
    if (predictors_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t AttributeSchema::require_predictor(std::string_view name) const {
  auto index = predictor_index(name);
  if (!index) throw ArgumentError("unknown attribute '" + std::string(name) + "'");
  return *index;
}

std::string AttributeSchema::digest() const {
  detail::Fnv1a64 h;
  auto feed = [&](const Attribute& attribute) {
    h.update(attribute.name);
    h.separator();
    for (const auto& value : attribute.domain) {
      h.update(value);
      h.separator();
    }
    h.update("\n");
  };
  for (const auto& attribute : predictors_) feed(attribute);
  h.update("class:");
  feed(class_attribute_);
  return h.hex();
}

namespace {

Attribute attribute_from_json(const nlohmann::json& j, std::string_view where) {
  if (!j.is_object() || !j.contains("name") || !j.contains("values")) {
    throw DataError(std::string(where) + ": attribute entries need \"name\" and \"values\"");
  }
  Attribute attribute;
  attribute.name = j.at("name").get<std::string>();
  attribute.domain = j.at("values").get<std::vector<std::string>>();
  return attribute;
}

nlohmann::ordered_json attribute_to_json(const Attribute& attribute) {
  return {{"name", attribute.name}, {"values", attribute.domain}};
}

}  // namespace

AttributeSchema parse_schema_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("attributes") || !j.contains("class")) {
      throw DataError("schema: expected keys \"attributes\" and \"class\"");
    }
    std::vector<Attribute> predictors;
    for (const auto& entry : j.at("attributes")) {
      predictors.push_back(attribute_from_json(entry, "schema"));
    }
    return AttributeSchema(std::move(predictors), attribute_from_json(j.at("class"), "schema"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("schema: ") + e.what());
  }
}

AttributeSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open schema file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_schema_json(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string schema_to_json(const AttributeSchema& schema) {
  nlohmann::ordered_json j;
  j["attributes"] = nlohmann::ordered_json::array();
  for (const auto& attribute : schema.predictors()) {
    j["attributes"].push_back(attribute_to_json(attribute));
  }
  j["class"] = attribute_to_json(schema.class_attribute());
  return j.dump(2) + "\n";
}

ClassDistribution::ClassDistribution(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) total_ += c;
}

std::vector<double> ClassDistribution::probabilities() const {
  std::vector<double> p(counts_.size(), 0.0);
  if (total_ == 0) return p;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    p[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }
  return p;
}

std::size_t ClassDistribution::majority() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts_.size(); ++i) {
    if (counts_[i] > counts_[best]) best = i;
  }
  return best;
}

bool ClassDistribution::is_pure() const {
  return std::count_if(counts_.begin(), counts_.end(), [](auto c) { return c > 0; }) <= 1;
}

Dataset::Dataset(SchemaPtr schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  if (!schema_) throw ArgumentError("dataset requires a schema");
  for (std::size_t r = 0; r < records_.size(); ++r) {
    const auto& record = records_[r];
    if (record.values.size() != schema_->predictor_count()) {
      throw DataError("record " + std::to_string(r + 1) + ": expected " +
                      std::to_string(schema_->predictor_count()) + " values");
    }
    for (std::size_t a = 0; a < record.values.size(); ++a) {
      if (record.values[a] >= schema_->predictor(a).cardinality()) {
        throw DataError("record " + std::to_string(r + 1) + ": value out of domain for '" +
                        schema_->predictor(a).name + "'");
      }
    }
    if (record.label >= schema_->class_count()) {
      throw DataError("record " + std::to_string(r + 1) + ": class label out of domain");
    }
  }
}

Dataset::Dataset(AttributeSchema schema, std::vector<Record> records)
    : Dataset(std::make_shared<const AttributeSchema>(std::move(schema)), std::move(records)) {}

Dataset Dataset::with_records(std::vector<Record> records) const {
  return Dataset(schema_, std::move(records));
}

bool Dataset::operator==(const Dataset& other) const {
  return *schema_ == *other.schema_ && records_ == other.records_;
}

Dataset load_csv(const std::filesystem::path& path, const AttributeSchema& schema,
                 CsvOptions options) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open file");
  return parse_csv(in, std::make_shared<const AttributeSchema>(schema), options, path.string());
}

Dataset parse_csv(std::istream& in, SchemaPtr schema, CsvOptions options,
                  std::string_view source_name) {
  const auto header = read_header(in, *schema, source_name, /*require_class=*/true,
                                  /*allow_extra=*/false);
  std::vector<Record> records;
  std::vector<std::string> cells;
  std::size_t row = 0;
  while (next_row(in, header, row, source_name, cells)) {
    Record record;
    record.values.reserve(schema->predictor_count());
    for (std::size_t a = 0; a < schema->predictor_count(); ++a) {
      record.values.push_back(resolve_value(schema->predictor(a),
                                            cells[header.predictor_columns[a]], row,
                                            source_name, options));
    }
    record.label = resolve_value(schema->class_attribute(), cells[*header.class_column], row,
                                 source_name, options);
    records.push_back(std::move(record));
  }
  return Dataset(std::move(schema), std::move(records));
}

void write_csv(std::ostream& out, const Dataset& dataset) {
  const auto& schema = dataset.schema();
  for (const auto& attribute : schema.predictors()) out << attribute.name << ',';
  out << schema.class_attribute().name << '\n';
  for (const auto& record : dataset.records()) {
    for (std::size_t a = 0; a < record.values.size(); ++a) {
      out << schema.predictor(a).domain[record.values[a]] << ',';
    }
    out << schema.class_attribute().domain[record.label] << '\n';
  }
}

std::string to_csv(const Dataset& dataset) {
  std::ostringstream out;
  write_csv(out, dataset);
  return out.str();
}

UnlabeledTable parse_unlabeled_csv(std::istream& in, const AttributeSchema& schema,
                                   CsvOptions options, std::string_view source_name) {
  const auto header = read_header(in, schema, source_name, /*require_class=*/false,
                                  /*allow_extra=*/true);
  UnlabeledTable table;
  table.header = header.names;
  std::vector<std::string> cells;
  std::size_t row = 0;
  while (next_row(in, header, row, source_name, cells)) {
    std::vector<std::size_t> values;
    values.reserve(schema.predictor_count());
    for (std::size_t a = 0; a < schema.predictor_count(); ++a) {
      values.push_back(resolve_value(schema.predictor(a), cells[header.predictor_columns[a]], row,
                                     source_name, options));
    }
    table.values.push_back(std::move(values));
    table.cells.push_back(cells);
  }
  return table;
}

ClassDistribution class_distribution(const AttributeSchema& schema,
                                     std::span<const Record> records) {
  ClassDistribution dist(schema.class_count());
  for (const auto& record : records) dist.add(record.label);
  return dist;
}

ClassDistribution class_distribution(const Dataset& dataset) {
  return class_distribution(dataset.schema(), dataset.records());
}

std::vector<Dataset> partition(const Dataset& dataset, std::size_t attribute_index) {
  const auto& attribute = dataset.schema().predictors()[attribute_index];
  std::vector<std::vector<Record>> parts(attribute.cardinality());
  for (const auto& record : dataset.records()) {
    parts[record.values[attribute_index]].push_back(record);
  }
  std::vector<Dataset> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.push_back(dataset.with_records(std::move(part)));
  return out;
}

std::vector<Dataset> partition(const Dataset& dataset, std::string_view attribute) {
  return partition(dataset, dataset.schema().require_predictor(attribute));
}

GradeBands::GradeBands(std::vector<GradeBand> bands) : bands_(std::move(bands)) {
  if (bands_.empty()) throw ArgumentError("grade bands: at least one band required");
  if (bands_.front().lower != 0.0) throw ArgumentError("grade bands: first band must start at 0");
  if (bands_.back().upper != 100.0) throw ArgumentError("grade bands: last band must end at 100");
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    if (!(bands_[i].lower < bands_[i].upper)) {
      throw ArgumentError("grade bands: band '" + bands_[i].label + "' is empty");
    }
    if (i > 0 && bands_[i].lower != bands_[i - 1].upper) {
      throw ArgumentError("grade bands: gap or overlap before band '" + bands_[i].label + "'");
    }
  }
}

const GradeBands& default_grade_bands() {
  static const GradeBands bands({{"Fail", 0.0, 36.0},
                                 {"Third", 36.0, 45.0},
                                 {"Second", 45.0, 60.0},
                                 {"First", 60.0, 100.0}});
  return bands;
}

const std::string& bin_marks(double percent, const GradeBands& bands) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw ArgumentError("marks percentage " + std::to_string(percent) + " outside [0, 100]");
  }
  for (const auto& band : bands.bands()) {
    if (percent >= band.lower && percent < band.upper) return band.label;
  }
  return bands.bands().back().label;  // percent == 100
}

}  // namespace gradetree
