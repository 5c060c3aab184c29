#include <doctest.h>

#include <filesystem>
#include <random>

#include <json.hpp>

#include "gradetree/gradetree.hpp"
#include "support.hpp"

using namespace gradetree;

TEST_CASE("model JSON round-trips byte-stably") {
  const auto d = load_fixture();
  for (std::size_t k : {0u, 3u}) {
    TreeConfig config;
    config.min_leaf_support = k;
    const auto tree = id3_build(d, config);
    const auto text = model_to_json(tree);
    const auto back = model_from_json(text);
    CHECK(back == tree);
    CHECK(model_to_json(back) == text);
  }
  TreeConfig depth;
  depth.criterion = Criterion::GainRatio;
  depth.max_depth = 2;
  const auto tree = id3_build(d, depth);
  CHECK(model_from_json(model_to_json(tree)).config() == depth);
}

TEST_CASE("save/load preserves predictions on fuzzed inputs") {
  const auto d = load_fixture();
  const auto tree = prune(id3_build(d), 2);
  const auto path = std::filesystem::temp_directory_path() / "gradetree_model_io_test.json";
  save_model(path, tree);
  const auto loaded = load_model(path);
  std::filesystem::remove(path);

  std::mt19937 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::size_t> values;
    for (const auto& a : d.schema().predictors()) {
      values.push_back(std::uniform_int_distribution<std::size_t>(0, a.cardinality() - 1)(rng));
    }
    const auto p = tree.predict(values);
    const auto q = loaded.predict(values);
    CHECK(p.label == q.label);
    CHECK(p.confidence == q.confidence);
    CHECK(p.distribution == q.distribution);
  }
}

TEST_CASE("model loading rejects schema mismatches and malformed documents") {
  const auto d = load_fixture();
  const auto tree = id3_build(d);
  const auto text = model_to_json(tree);

  auto attrs = std::vector<Attribute>(d.schema().predictors().begin(), d.schema().predictors().end());
  attrs.pop_back();
  const AttributeSchema smaller(attrs, d.schema().class_attribute());
  CHECK_THROWS_AS(model_from_json(text, &smaller), DataError);
  CHECK_NOTHROW(model_from_json(text, &d.schema()));

  auto j = nlohmann::json::parse(text);
  SUBCASE("tampered digest") {
    j["schema_digest"] = "fnv1a64:0123456789abcdef";
    CHECK_THROWS_AS(model_from_json(j.dump()), DataError);
  }
  SUBCASE("future version") {
    j["version"] = 99;
    CHECK_THROWS_AS(model_from_json(j.dump()), DataError);
  }
  SUBCASE("missing branch") {
    j["root"]["branches"].erase("Poor");
    CHECK_THROWS_AS(model_from_json(j.dump()), DataError);
  }
  SUBCASE("unknown label") {
    j["root"]["branches"]["Poor"]["branches"]["Fail"]["label"] = "Distinction";
    CHECK_THROWS_AS(model_from_json(j.dump()), DataError);
  }
  SUBCASE("repeated attribute on a path") {
    j["root"]["branches"]["Poor"]["attribute"] = "ATT";
    CHECK_THROWS_AS(model_from_json(j.dump()), DataError);
  }
  SUBCASE("not JSON") { CHECK_THROWS_AS(model_from_json("{ nope"), DataError); }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_model("/nonexistent/model.json"), DataError); }
}

TEST_CASE("DOT export") {
  const auto d = load_fixture();
  SUBCASE("single leaf") {
    TreeConfig config;
    config.min_leaf_support = 100;
    const auto dot = to_dot(id3_build(d, config));
    testing::DotChecker checker(dot);
    REQUIRE_MESSAGE(checker.parse(), checker.error());
    CHECK(checker.nodes().size() == 1);
    CHECK(checker.edges() == 0);
  }
  SUBCASE("fixture tree") {
    const auto tree = id3_build(d);
    const auto dot = to_dot(tree);
    testing::DotChecker checker(dot);
    REQUIRE_MESSAGE(checker.parse(), checker.error());
    CHECK(checker.nodes().size() == tree_stats(tree).nodes);
    CHECK(checker.edges() == tree_stats(tree).nodes - 1);
    CHECK(dot.find("n0 [shape=box, label=\"ATT\"]") != std::string::npos);
    CHECK(dot.find("-> n1 [label=\"Poor\"]") != std::string::npos);
  }
  SUBCASE("checker rejects broken graphs") {
    CHECK(!testing::DotChecker("digraph { a -> }").parse());
    CHECK(!testing::DotChecker("digraph { a [label=\"x] }").parse());
    CHECK(!testing::DotChecker("tree { }").parse());
  }
}
