#include <doctest.h>

#include <random>

#include "gradetree/gradetree.hpp"
#include "support.hpp"

using namespace gradetree;

namespace {

SchemaPtr tiny_schema() {
  return std::make_shared<const AttributeSchema>(std::vector<Attribute>{{"X", {"a", "b"}}},
                                                 Attribute{"Y", {"First", "Fail"}});
}

DecisionTree constant_first(SchemaPtr schema) {
  ClassDistribution dist(schema->class_count());
  dist.add(0);
  return DecisionTree(DecisionNode::make_leaf(1, dist), schema, {}, 1);
}

}  // namespace

TEST_CASE("accuracy of a constant leaf") {
  auto schema = tiny_schema();
  const auto tree = constant_first(schema);
  std::vector<Record> all_first(10, Record{{0}, 0});
  CHECK(accuracy(tree, Dataset(schema, all_first)) == 1.0);
  std::vector<Record> mixed(10, Record{{1}, 1});
  for (int i = 0; i < 3; ++i) mixed[i].label = 0;
  CHECK(accuracy(tree, Dataset(schema, mixed)) == doctest::Approx(0.3));
  CHECK_THROWS_AS(accuracy(tree, Dataset(schema)), ArgumentError);
}

TEST_CASE("confusion matrices") {
  const auto d = load_fixture();
  SUBCASE("perfect classifier is diagonal") {
    const auto m = confusion(id3_build(d), d);
    CHECK(m.total() == 50);
    CHECK(m.diagonal() == 50);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t p = 0; p < 4; ++p) {
        if (a != p) CHECK(m.at(a, p) == 0);
      }
    }
  }
  SUBCASE("constant-First classifier fills one column") {
    const auto m = confusion(constant_first(d.schema_ptr()), d);
    CHECK(m.column_sum(0) == 50);
    for (std::size_t p = 1; p < 4; ++p) CHECK(m.column_sum(p) == 0);
    CHECK(m.row_sum(0) == 14);
    CHECK(m.row_sum(1) == 15);
    CHECK(m.row_sum(2) == 13);
    CHECK(m.row_sum(3) == 8);
    CHECK(m.accuracy() == doctest::Approx(14.0 / 50.0));
  }
  SUBCASE("text rendering lists every class") {
    const auto text = confusion(id3_build(d), d).to_text();
    for (const auto* c : {"First", "Second", "Third", "Fail"}) CHECK(text.find(c) != std::string::npos);
  }
}

TEST_CASE("accuracy equals the diagonal fraction of the confusion matrix") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto train = testing::random_dataset(rng, 4, 60, false);
    const auto tree = prune(id3_build(train), 4);
    const auto m = confusion(tree, train);
    CHECK(m.total() == train.size());
    CHECK(accuracy(tree, train) == static_cast<double>(m.diagonal()) / static_cast<double>(m.total()));
  }
}

TEST_CASE("leave-one-out") {
  auto schema = tiny_schema();
  SUBCASE("identical records, same label") {
    const auto r = leave_one_out(Dataset(schema, {Record{{0}, 0}, Record{{0}, 0}}));
    CHECK(r.accuracy == 1.0);
    CHECK(r.confusion.total() == 2);
  }
  SUBCASE("identical predictors, different labels") {
    const auto r = leave_one_out(Dataset(schema, {Record{{0}, 0}, Record{{0}, 1}}));
    CHECK(r.accuracy == 0.0);
  }
  SUBCASE("too small") {
    CHECK_THROWS_AS(leave_one_out(Dataset(schema, {Record{{0}, 0}})), ArgumentError);
  }
  SUBCASE("fixture baseline matches a hand-rolled fold loop") {
    const auto d = load_fixture();
    const auto r = leave_one_out(d);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<Record> rest;
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (j != i) rest.push_back(d.record(j));
      }
      if (id3_build(d.with_records(rest)).predict(d.record(i).values).label == d.record(i).label) {
        ++correct;
      }
    }
    CHECK(r.accuracy == static_cast<double>(correct) / 50.0);
    CHECK(r.confusion.total() == 50);
    MESSAGE("fixture leave-one-out accuracy: " << r.accuracy);
  }
}
