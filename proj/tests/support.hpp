#pragma once

// Shared helpers for the test binaries: a brute-force metrics oracle over raw
// string rows, random dataset generators, and a DOT grammar checker.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradetree/gradetree.hpp"

namespace testing {

// Rows of raw cells keyed by column name, read without the library's loader.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};

inline RawTable read_raw_csv(const std::string& path) {
  RawTable table;
  std::ifstream in(path);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = cells;
      first = false;
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[table.header[i]] = cells[i];
    table.rows.push_back(row);
  }
  return table;
}

inline double brute_entropy(const std::vector<std::string>& labels) {
  std::map<std::string, int> counts;
  for (const auto& l : labels) counts[l]++;
  double h = 0;
  for (const auto& [_, c] : counts) {
    double p = double(c) / double(labels.size());
    h -= p * std::log2(p);
  }
  return h;
}

struct BruteScores {
  double gain;
  double split;
  double ratio;
};

inline BruteScores brute_scores(const std::vector<std::map<std::string, std::string>>& rows,
                                const std::string& attribute, const std::string& cls) {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& r : rows) {
    labels.push_back(r.at(cls));
    groups[r.at(attribute)].push_back(r.at(cls));
  }
  double remainder = 0, split = 0;
  for (const auto& [_, g] : groups) {
    double w = double(g.size()) / double(rows.size());
    remainder += w * brute_entropy(g);
    split -= w * std::log2(w);
  }
  double gain = brute_entropy(labels) - remainder;
  return {gain, split, split > 0 ? gain / split : 0.0};
}

inline std::vector<std::map<std::string, std::string>> as_rows(const gradetree::Dataset& d) {
  std::vector<std::map<std::string, std::string>> rows;
  const auto& s = d.schema();
  for (const auto& rec : d.records()) {
    std::map<std::string, std::string> row;
    for (std::size_t a = 0; a < rec.values.size(); ++a) {
      row[s.predictor(a).name] = s.predictor(a).domain[rec.values[a]];
    }
    row[s.class_attribute().name] = s.class_attribute().domain[rec.label];
    rows.push_back(row);
  }
  return rows;
}

// Random schema with up to `max_attributes` predictors of 2..4 values and
// 2..4 classes.
inline gradetree::SchemaPtr random_schema(std::mt19937& rng, std::size_t max_attributes) {
  std::uniform_int_distribution<std::size_t> n_attr(1, max_attributes);
  std::uniform_int_distribution<std::size_t> card(2, 4);
  std::vector<gradetree::Attribute> predictors;
  const auto n = n_attr(rng);
  for (std::size_t a = 0; a < n; ++a) {
    gradetree::Attribute attr{"A" + std::to_string(a), {}};
    const auto k = card(rng);
    for (std::size_t v = 0; v < k; ++v) attr.domain.push_back("v" + std::to_string(v));
    predictors.push_back(attr);
  }
  gradetree::Attribute cls{"Y", {}};
  const auto k = card(rng);
  for (std::size_t c = 0; c < k; ++c) cls.domain.push_back("c" + std::to_string(c));
  return std::make_shared<const gradetree::AttributeSchema>(predictors, cls);
}

// Records drawn uniformly. When `contradiction_free`, a record whose
// predictor vector was already drawn reuses the first label seen.
inline gradetree::Dataset random_dataset(std::mt19937& rng, std::size_t max_attributes,
                                         std::size_t max_records, bool contradiction_free) {
  auto schema = random_schema(rng, max_attributes);
  std::uniform_int_distribution<std::size_t> n_rec(1, max_records);
  const auto n = n_rec(rng);
  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<gradetree::Record> records;
  for (std::size_t i = 0; i < n; ++i) {
    gradetree::Record r;
    for (const auto& attr : schema->predictors()) {
      r.values.push_back(std::uniform_int_distribution<std::size_t>(0, attr.cardinality() - 1)(rng));
    }
    r.label = std::uniform_int_distribution<std::size_t>(0, schema->class_count() - 1)(rng);
    if (contradiction_free) {
      auto [it, inserted] = seen.emplace(r.values, r.label);
      r.label = it->second;
    }
    records.push_back(r);
  }
  return gradetree::Dataset(schema, records);
}

inline bool has_contradictions(const gradetree::Dataset& d) {
  std::map<std::vector<std::size_t>, std::set<std::size_t>> labels;
  for (const auto& r : d.records()) labels[r.values].insert(r.label);
  for (const auto& [_, ls] : labels) {
    if (ls.size() > 1) return true;
  }
  return false;
}

// Recursive-descent check of the Graphviz DOT grammar subset (graph header,
// node/edge/attr statements, attribute lists, quoted or bare IDs).
class DotChecker {
 public:
  explicit DotChecker(std::string text) : s_(std::move(text)) {}

  bool parse() {
    try {
      skip();
      keyword("strict");
      if (!keyword("digraph") && !keyword("graph")) return fail("graph keyword");
      skip();
      if (peek() != '{') id();
      expect('{');
      stmt_list();
      expect('}');
      skip();
      return pos_ == s_.size() || fail("trailing input");
    } catch (const std::runtime_error& e) {
      error_ = e.what();
      return false;
    }
  }

  const std::string& error() const { return error_; }
  const std::set<std::string>& nodes() const { return nodes_; }
  std::size_t edges() const { return edges_; }

 private:
  bool fail(const std::string& what) { throw std::runtime_error("expected " + what + " at " + std::to_string(pos_)); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }
  bool keyword(const std::string& k) {
    skip();
    if (s_.compare(pos_, k.size(), k) == 0 &&
        (pos_ + k.size() == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + k.size()])))) {
      pos_ += k.size();
      return true;
    }
    return false;
  }
  std::string id() {
    skip();
    std::string out;
    if (peek() == '"') {
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
          out += s_[pos_++];
        }
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) fail("closing quote");
      ++pos_;
      return out;
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '.')) {
      out += s_[pos_++];
    }
    if (out.empty()) fail("ID");
    return out;
  }
  void attr_list() {
    while (peek() == '[') {
      ++pos_;
      while (peek() != ']') {
        id();
        expect('=');
        id();
        if (peek() == ',' || peek() == ';') ++pos_;
      }
      expect(']');
    }
  }
  void stmt_list() {
    while (peek() != '}' && peek() != '\0') {
      if (keyword("node") || keyword("edge") || keyword("graph")) {
        attr_list();
      } else {
        auto first = id();
        if (peek() == '=') {
          ++pos_;
          id();
        } else {
          nodes_.insert(first);
          while (s_.compare(pos_, 2, "->") == 0 || (skip(), s_.compare(pos_, 2, "->") == 0)) {
            pos_ += 2;
            nodes_.insert(id());
            ++edges_;
          }
          attr_list();
        }
      }
      if (peek() == ';') ++pos_;
    }
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::string error_;
  std::set<std::string> nodes_;
  std::size_t edges_ = 0;
};

}  // namespace testing
