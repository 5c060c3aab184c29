#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gradetree/dataset.hpp"

namespace gradetree {

/// One published value for a predictor attribute.
struct PublishedScore {
  std::string_view attribute;
  double gain;
  double split_information;
  double gain_ratio;
};

/// Values printed for the 50-student fixture, with the claimed root
/// attribute and the seven printed rules as published (typos included).
struct PublishedValues {
  double entropy;
  std::array<PublishedScore, 7> scores;
  std::string_view claimed_root;
  std::array<std::string_view, 7> rules;
};

const PublishedValues& published_values();

/// Naive recomputation that tallies raw category strings, kept separate
/// from the metrics module so the two paths can be checked against each other.
struct OracleScores {
  double entropy = 0.0;
  std::vector<std::string> attributes;
  std::vector<double> gains;
  std::vector<double> split_informations;
  std::vector<double> gain_ratios;
};

OracleScores oracle_scores(const Dataset& dataset);

enum class Verdict { Match, Mismatch };
std::string_view to_string(Verdict verdict);

struct QuantityRow {
  std::string name;
  double published = 0.0;
  double implementation = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Mismatch;

  double published_delta() const;
  double oracle_delta() const;
};

struct RootCheck {
  std::string claimed;
  std::string built;
  std::string oracle_argmax;
  bool built_matches_oracle = false;
  bool claim_holds = false;
};

struct PublishedRuleCheck {
  std::size_t number = 0;
  std::string text;
  bool reproduced = false;
  std::vector<std::string> flags;
};

struct RuleSetDiff {
  std::size_t generated = 0;
  std::size_t published = 0;
  std::size_t reproduced = 0;
  std::vector<PublishedRuleCheck> rules;
};

struct VerifyReport {
  double tol_published = 0.0;
  double tol_entropy = 0.0;
  double tol_oracle = 0.0;
  std::vector<QuantityRow> rows;
  RootCheck root;
  RuleSetDiff rule_diff;

  /// False when any implementation-vs-oracle difference exceeds tol_oracle.
  bool oracle_agrees() const;
  std::size_t mismatches() const;

  std::string to_text() const;
  std::string to_json() const;
};

inline constexpr double kDefaultPublishedTolerance = 1e-5;
inline constexpr double kEntropyTolerance = 1e-3;
inline constexpr double kOracleTolerance = 1e-9;

/// Fingerprint of schema and record contents ("fnv1a64:<hex>").
std::string dataset_digest(const Dataset& dataset);
/// Digest of the bundled fixture; verify_published refuses any other dataset.
inline constexpr std::string_view kFixtureDigest = "fnv1a64:a877bf749a7844e9";

/// Recomputes entropy and all 21 attribute quantities with both the metrics
/// module and the oracle, grades them against `constants`, checks the root
/// choice, and diffs the extracted rule set against the printed one.
/// Throws DataError if `dataset` is not the bundled fixture.
VerifyReport verify_published(const Dataset& dataset,
                              const PublishedValues& constants = published_values(),
                              double tol_published = kDefaultPublishedTolerance);

}  // namespace gradetree
