#include "gradetree/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "digest.hpp"
#include "gradetree/error.hpp"
#include "gradetree/metrics.hpp"
#include "gradetree/rules.hpp"
#include "gradetree/tree.hpp"

namespace gradetree {

const PublishedValues& published_values() {
  // Published values for the 50-student table, transcribed as printed.
  static const PublishedValues constants{
      // Entropy(S) for 14/15/13/8 of 50, printed to three decimals.
      1.964,
      {{
          // attribute, gain, split information, gain ratio
          {"PSM", 0.577036, 1.386579, 0.416158},
          {"CTG", 0.515173, 1.448442, 0.355674},
          {"SEM", 0.365881, 1.597734, 0.229},
          {"ASS", 0.218628, 1.744987, 0.125289},
          {"GP", 0.043936, 1.91968, 0.022887},
          {"ATT", 0.451942, 1.511673, 0.298968},
          {"LW", 0.453513, 1.510102, 0.30032},
      }},
      // Claimed root attribute.
      "PSM",
      // Printed rule set, verbatim including its quoting and consequent slips.
      {{
          "IF PSM = 'First' AND ATT = 'Good' AND CTG = 'Good' or 'Average' THEN ESM = First",
          "IF PSM = 'First' AND CTG = 'Good' AND ATT = \"Good\" OR 'Average' THEN ESM = 'First'",
          "IF PSM = 'Second' AND ATT = 'Good' AND ASS = 'Yes' THEN ESM = 'First'",
          "IF PSM = 'Second' AND CTG = 'Average' AND LW = 'Yes' THEN ESM = 'Second'",
          "IF PSM = 'Third' AND CTG = 'Good' OR 'Average' AND ATT = \"Good\" OR 'Average' THEN "
          "PSM = 'Second'",
          "IF PSM = 'Third' AND ASS = 'No' AND ATT = 'Average' THEN PSM = 'Third'",
          "IF PSM = 'Fail' AND CTG = 'Poor' AND ATT = 'Poor' THEN PSM = 'Fail'",
      }},
  };
  return constants;
}

// ---------------------------------------------------------------------------
// Oracle: string tallies in ordered maps, natural log divided by ln 2.

namespace {

using Tally = std::map<std::string, std::size_t>;

double naive_entropy(const Tally& tally) {
  double n = 0.0;
  for (const auto& [_, c] : tally) n += static_cast<double>(c);
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (const auto& [_, c] : tally) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h += -p * (std::log(p) / std::log(2.0));
  }
  return h;
}

}  // namespace

OracleScores oracle_scores(const Dataset& dataset) {
  const auto& schema = dataset.schema();
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::string> labels;
  for (const auto& record : dataset.records()) {
    std::map<std::string, std::string> row;
    for (std::size_t a = 0; a < record.values.size(); ++a) {
      row[schema.predictor(a).name] = schema.predictor(a).domain[record.values[a]];
    }
    rows.push_back(std::move(row));
    labels.push_back(schema.class_attribute().domain[record.label]);
  }

  Tally all;
  for (const auto& label : labels) ++all[label];

  OracleScores out;
  out.entropy = naive_entropy(all);
  const double n = static_cast<double>(rows.size());
  for (const auto& attribute : schema.predictors()) {
    std::map<std::string, Tally> groups;
    Tally sizes;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& value = rows[i].at(attribute.name);
      ++groups[value][labels[i]];
      ++sizes[value];
    }
    double expected = 0.0;
    for (const auto& [value, group] : groups) {
      expected += (static_cast<double>(sizes[value]) / n) * naive_entropy(group);
    }
    const double gain = rows.empty() ? 0.0 : out.entropy - expected;
    const double split = naive_entropy(sizes);
    out.attributes.push_back(attribute.name);
    out.gains.push_back(gain);
    out.split_informations.push_back(split);
    out.gain_ratios.push_back(split > 0.0 ? gain / split : 0.0);
  }
  return out;
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::Match ? "MATCH" : "MISMATCH";
}

double QuantityRow::published_delta() const { return std::fabs(published - oracle); }
double QuantityRow::oracle_delta() const { return std::fabs(implementation - oracle); }

bool VerifyReport::oracle_agrees() const {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const QuantityRow& r) { return r.oracle_delta() <= tol_oracle; });
}

std::size_t VerifyReport::mismatches() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const QuantityRow& r) { return r.verdict == Verdict::Mismatch; }));
}

std::string dataset_digest(const Dataset& dataset) {
  detail::Fnv1a64 h;
  h.update(dataset.schema().digest());
  h.separator();
  h.update(to_csv(dataset));
  return h.hex();
}

// ---------------------------------------------------------------------------
// Published rule parsing.

namespace {

struct ParsedRule {
  std::map<std::string, std::set<std::string>> conditions;
  std::string consequent_attribute;
  std::string consequent;
};

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string unquote(std::string_view s) {
  auto t = strip(s);
  if (t.size() >= 2 && (t.front() == '\'' || t.front() == '"') && (t.back() == '\'' || t.back() == '"')) {
    return t.substr(1, t.size() - 2);
  }
  return t;
}

std::vector<std::string> split_on(std::string_view text, std::string_view sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(std::string(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return parts;
}

std::pair<std::string, std::string> split_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) return {strip(text), ""};
  return {strip(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

ParsedRule parse_published_rule(std::string_view text) {
  ParsedRule rule;
  auto body = strip(text);
  if (body.rfind("IF ", 0) == 0) body = body.substr(3);
  const auto then = body.find(" THEN ");
  const auto antecedent = body.substr(0, then);
  const auto consequent = then == std::string::npos ? std::string() : body.substr(then + 6);

  for (const auto& clause : split_on(antecedent, " AND ")) {
    auto [attribute, rhs] = split_assignment(clause);
    // Disjunctions appear as both "or" and "OR".
    std::string normalized = rhs;
    for (std::size_t pos; (pos = normalized.find(" or ")) != std::string::npos;) {
      normalized.replace(pos, 4, " OR ");
    }
    for (const auto& value : split_on(normalized, " OR ")) {
      rule.conditions[attribute].insert(unquote(value));
    }
  }
  auto [attribute, value] = split_assignment(consequent);
  rule.consequent_attribute = attribute;
  rule.consequent = unquote(value);
  return rule;
}

bool could_overlap(const ParsedRule& a, const ParsedRule& b) {
  for (const auto& [attribute, values] : a.conditions) {
    auto it = b.conditions.find(attribute);
    if (it == b.conditions.end()) continue;
    bool shared = std::any_of(values.begin(), values.end(),
                              [&](const std::string& v) { return it->second.contains(v); });
    if (!shared) return false;
  }
  return true;
}

// A single-path rule matches the published one when it has the same
// attributes, each of its values is among the published alternatives, and
// the consequent value agrees.
bool reproduces(const Rule& generated, const ParsedRule& published) {
  if (generated.consequent != published.consequent) return false;
  if (generated.conditions.size() != published.conditions.size()) return false;
  for (const auto& c : generated.conditions) {
    auto it = published.conditions.find(c.attribute);
    if (it == published.conditions.end() || !it->second.contains(c.value)) return false;
  }
  return true;
}

RuleSetDiff diff_rules(const std::vector<Rule>& generated, const PublishedValues& constants,
                       const AttributeSchema& schema) {
  RuleSetDiff diff;
  diff.generated = generated.size();
  diff.published = constants.rules.size();
  std::vector<ParsedRule> parsed;
  for (const auto& text : constants.rules) parsed.push_back(parse_published_rule(text));

  for (std::size_t i = 0; i < parsed.size(); ++i) {
    PublishedRuleCheck check;
    check.number = i + 1;
    check.text = std::string(constants.rules[i]);
    const auto& rule = parsed[i];
    if (rule.consequent_attribute != schema.class_attribute().name) {
      check.flags.push_back("consequent names " + rule.consequent_attribute + " instead of " +
                            schema.class_attribute().name);
    }
    for (const auto& [attribute, values] : rule.conditions) {
      if (values.size() > 1) {
        check.flags.push_back("disjunction on " + attribute + " spans several tree paths");
      }
      if (!schema.predictor_index(attribute)) {
        check.flags.push_back("unknown attribute " + attribute);
      }
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (could_overlap(parsed[k], rule)) {
        check.flags.push_back("overlaps rule " + std::to_string(k + 1));
      }
    }
    std::vector<std::string> matched;
    for (std::size_t g = 0; g < generated.size(); ++g) {
      if (reproduces(generated[g], rule)) matched.push_back(std::to_string(g + 1));
    }
    check.reproduced = !matched.empty();
    if (check.reproduced) {
      std::string list;
      for (const auto& m : matched) list += (list.empty() ? "" : ",") + m;
      check.flags.push_back("matches generated rule " + list);
    }
    if (check.reproduced) ++diff.reproduced;
    diff.rules.push_back(std::move(check));
  }
  return diff;
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

VerifyReport verify_published(const Dataset& dataset, const PublishedValues& constants,
                              double tol_published) {
  const auto digest = dataset_digest(dataset);
  if (digest != kFixtureDigest) {
    throw DataError("verify: dataset digest " + digest + " is not the bundled fixture (" +
                    std::string(kFixtureDigest) + ")");
  }
  VerifyReport report;
  report.tol_published = tol_published;
  report.tol_entropy = kEntropyTolerance;
  report.tol_oracle = kOracleTolerance;

  const auto& schema = dataset.schema();
  const auto oracle = oracle_scores(dataset);
  const auto scores = score_all(dataset);

  auto add_row = [&](std::string name, double published, double impl, double orc, double tol) {
    QuantityRow row{std::move(name), published, impl, orc, tol, Verdict::Mismatch};
    row.verdict = row.published_delta() <= tol ? Verdict::Match : Verdict::Mismatch;
    report.rows.push_back(std::move(row));
  };

  add_row("Entropy(S)", constants.entropy, entropy(class_distribution(dataset)), oracle.entropy,
          kEntropyTolerance);

  auto published_for = [&](std::string_view attribute) -> const PublishedScore& {
    for (const auto& p : constants.scores) {
      if (p.attribute == attribute) return p;
    }
    throw DataError("verify: no published value for attribute '" + std::string(attribute) + "'");
  };
  const auto& names = oracle.attributes;
  for (std::size_t a = 0; a < names.size(); ++a) {
    add_row("Gain(S," + names[a] + ")", published_for(names[a]).gain, scores[a].gain,
            oracle.gains[a], tol_published);
  }
  for (std::size_t a = 0; a < names.size(); ++a) {
    add_row("SplitInfo(S," + names[a] + ")", published_for(names[a]).split_information,
            scores[a].split_information, oracle.split_informations[a], tol_published);
  }
  for (std::size_t a = 0; a < names.size(); ++a) {
    add_row("GainRatio(S," + names[a] + ")", published_for(names[a]).gain_ratio,
            scores[a].gain_ratio, oracle.gain_ratios[a], tol_published);
  }

  const auto tree = id3_build(dataset, TreeConfig{});
  std::size_t argmax = 0;
  for (std::size_t a = 1; a < oracle.gains.size(); ++a) {
    if (oracle.gains[a] > oracle.gains[argmax]) argmax = a;
  }
  report.root.claimed = std::string(constants.claimed_root);
  report.root.oracle_argmax = names.at(argmax);
  report.root.built = tree.root().is_leaf() ? std::string("(leaf)")
                                            : schema.predictor(tree.root().split().attribute).name;
  report.root.built_matches_oracle = report.root.built == report.root.oracle_argmax;
  report.root.claim_holds = report.root.oracle_argmax == report.root.claimed;

  report.rule_diff = diff_rules(extract_rules(tree, dataset), constants, schema);
  return report;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "Reproduction audit of the bundled 50-student fixture\n";
  out << "tolerances: published " << sci(tol_published) << " (entropy " << sci(tol_entropy)
      << "), implementation vs oracle " << sci(tol_oracle) << "\n\n";

  std::size_t name_width = 10;
  for (const auto& row : rows) name_width = std::max(name_width, row.name.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %10s  %14s  %10s  %14s  %13s  %s\n",
                static_cast<int>(name_width), "quantity", "published", "implementation", "oracle",
                "|publ-oracle|", "|impl-oracle|", "verdict");
  out << line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%-*s  %10s  %14s  %10s  %14s  %13s  %s\n",
                  static_cast<int>(name_width), row.name.c_str(), fixed(row.published, 6).c_str(),
                  fixed(row.implementation, 6).c_str(), fixed(row.oracle, 6).c_str(),
                  sci(row.published_delta()).c_str(), sci(row.oracle_delta()).c_str(),
                  std::string(to_string(row.verdict)).c_str());
    out << line;
  }
  out << "\n" << (rows.size() - mismatches()) << " MATCH, " << mismatches() << " MISMATCH\n";

  out << "\nroot attribute: claimed " << root.claimed << ", oracle gain argmax "
      << root.oracle_argmax << ", built tree " << root.built << "\n";
  out << "  built root agrees with oracle: " << (root.built_matches_oracle ? "yes" : "no") << "\n";
  out << "  published claim holds: " << (root.claim_holds ? "yes" : "no") << "\n";

  out << "\nrule set: " << rule_diff.generated << " generated, " << rule_diff.published
      << " published, " << rule_diff.reproduced << " published rules reproduced\n";
  for (const auto& rule : rule_diff.rules) {
    out << "  [" << rule.number << "] " << (rule.reproduced ? "reproduced" : "not reproduced")
        << ": " << rule.text << "\n";
    for (const auto& flag : rule.flags) out << "      - " << flag << "\n";
  }

  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.oracle_delta());
  out << "\nimplementation vs oracle: " << (oracle_agrees() ? "OK" : "FAILED") << " (max delta "
      << sci(worst) << ")\n";
  return out.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["tolerances"] = {{"published", tol_published}, {"entropy", tol_entropy}, {"oracle", tol_oracle}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"name", row.name},
                         {"published", row.published},
                         {"implementation", row.implementation},
                         {"oracle", row.oracle},
                         {"published_delta", row.published_delta()},
                         {"oracle_delta", row.oracle_delta()},
                         {"tolerance", row.tolerance},
                         {"verdict", std::string(to_string(row.verdict))}});
  }
  j["root"] = {{"claimed", root.claimed},
               {"oracle_argmax", root.oracle_argmax},
               {"built", root.built},
               {"built_matches_oracle", root.built_matches_oracle},
               {"claim_holds", root.claim_holds}};
  auto rules = nlohmann::ordered_json::array();
  for (const auto& rule : rule_diff.rules) {
    rules.push_back({{"number", rule.number},
                     {"text", rule.text},
                     {"reproduced", rule.reproduced},
                     {"flags", rule.flags}});
  }
  j["rule_set"] = {{"generated", rule_diff.generated},
                   {"published", rule_diff.published},
                   {"reproduced", rule_diff.reproduced},
                   {"rules", std::move(rules)}};
  j["oracle_agrees"] = oracle_agrees();
  return j.dump(2) + "\n";
}

}  // namespace gradetree
