#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gradetree {

/// A named categorical variable with a closed, ordered value domain.
struct Attribute {
  std::string name;
  std::vector<std::string> domain;

  std::optional<std::size_t> value_index(std::string_view value) const;
  std::size_t cardinality() const { return domain.size(); }

  bool operator==(const Attribute&) const = default;
};

/// Ordered predictor attributes plus a separately designated class attribute.
///
/// Construction validates that names are unique (case-sensitive), every
/// domain is non-empty with unique labels, and the class name does not
/// collide with a predictor.
class AttributeSchema {
 public:
  AttributeSchema(std::vector<Attribute> predictors, Attribute class_attribute);

  std::span<const Attribute> predictors() const { return predictors_; }
  const Attribute& predictor(std::size_t index) const { return predictors_.at(index); }
  const Attribute& class_attribute() const { return class_attribute_; }
  std::size_t predictor_count() const { return predictors_.size(); }
  std::size_t class_count() const { return class_attribute_.domain.size(); }

  std::optional<std::size_t> predictor_index(std::string_view name) const;
  /// Throws ArgumentError when `name` is not a predictor.
  std::size_t require_predictor(std::string_view name) const;

  /// Stable 64-bit fingerprint of names and ordered domains, rendered as
  /// "fnv1a64:<16 hex digits>".
  std::string digest() const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<Attribute> predictors_;
  Attribute class_attribute_;
};

using SchemaPtr = std::shared_ptr<const AttributeSchema>;

/// Schema sidecar (JSON). Keys: "attributes": [{"name", "values"}...],
/// "class": {"name", "values"}.
AttributeSchema parse_schema_json(std::string_view text);
AttributeSchema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const AttributeSchema& schema);

/// One labeled example, stored as value indices into the schema domains.
/// `values[i]` is the value of predictor i.
struct Record {
  std::vector<std::size_t> values;
  std::size_t label = 0;

  bool operator==(const Record&) const = default;
};

/// Counts per class label, aligned with the class attribute's domain order.
class ClassDistribution {
 public:
  ClassDistribution() = default;
  explicit ClassDistribution(std::size_t class_count) : counts_(class_count, 0) {}
  explicit ClassDistribution(std::vector<std::size_t> counts);

  void add(std::size_t label, std::size_t n = 1) { counts_.at(label) += n; total_ += n; }

  std::span<const std::size_t> counts() const { return counts_; }
  std::size_t count(std::size_t label) const { return counts_.at(label); }
  std::size_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return total_ == 0; }

  /// p_j = count_j / total; all zero when total is 0.
  std::vector<double> probabilities() const;
  /// Index of the largest count; ties resolve to the lowest index.
  std::size_t majority() const;
  /// True when at most one class has a nonzero count.
  bool is_pure() const;

  bool operator==(const ClassDistribution&) const = default;

 private:
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

/// An immutable schema-validated collection of records.
class Dataset {
 public:
  explicit Dataset(SchemaPtr schema, std::vector<Record> records = {});
  Dataset(AttributeSchema schema, std::vector<Record> records = {});

  const AttributeSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  std::span<const Record> records() const { return records_; }
  const Record& record(std::size_t i) const { return records_.at(i); }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  /// Same schema, a subset (or reordering) of records.
  Dataset with_records(std::vector<Record> records) const;

  bool operator==(const Dataset& other) const;

 private:
  SchemaPtr schema_;
  std::vector<Record> records_;
};

enum class MissingPolicy {
  /// Empty cells are an error.
  Reject,
  /// Empty cells become the reserved category "?", which still has to be
  /// declared in the attribute's domain to validate.
  Placeholder,
};

inline constexpr std::string_view kMissingPlaceholder = "?";

struct CsvOptions {
  MissingPolicy missing = MissingPolicy::Reject;
};

/// Reads a comma-separated file whose header names every schema attribute
/// (any column order) including the class column. Row order is preserved.
/// Rows are numbered from 1 for the first data line in error messages.
Dataset load_csv(const std::filesystem::path& path, const AttributeSchema& schema,
                 CsvOptions options = {});
Dataset parse_csv(std::istream& in, SchemaPtr schema, CsvOptions options = {},
                  std::string_view source_name = "<stream>");

/// Writes the header in schema order followed by the class column.
void write_csv(std::ostream& out, const Dataset& dataset);
std::string to_csv(const Dataset& dataset);

/// Rows of predictor values read from a CSV that need not carry the class
/// column. Extra columns are kept verbatim so they can be echoed back.
struct UnlabeledTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<std::size_t>> values;
};

UnlabeledTable parse_unlabeled_csv(std::istream& in, const AttributeSchema& schema,
                                   CsvOptions options = {},
                                   std::string_view source_name = "<stream>");

ClassDistribution class_distribution(const Dataset& dataset);
ClassDistribution class_distribution(const AttributeSchema& schema,
                                     std::span<const Record> records);

/// One part per domain value of `attribute`, in domain order; parts may be
/// empty. Throws ArgumentError for an unknown attribute.
std::vector<Dataset> partition(const Dataset& dataset, std::string_view attribute);
std::vector<Dataset> partition(const Dataset& dataset, std::size_t attribute_index);

/// Half-open percentage band [lower, upper); the topmost band also admits 100.
struct GradeBand {
  std::string label;
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const GradeBand&) const = default;
};

class GradeBands {
 public:
  /// Bands must be ordered, contiguous, and cover [0, 100] exactly.
  explicit GradeBands(std::vector<GradeBand> bands);

  std::span<const GradeBand> bands() const { return bands_; }

 private:
  std::vector<GradeBand> bands_;
};

/// Fail [0,36), Third [36,45), Second [45,60), First [60,100].
const GradeBands& default_grade_bands();

/// Label of the band containing `percent`. Throws ArgumentError outside [0,100].
const std::string& bin_marks(double percent, const GradeBands& bands = default_grade_bands());

}  // namespace gradetree
