#include <benchmark/benchmark.h>

#include <random>

#include "gradetree/gradetree.hpp"

using namespace gradetree;

namespace {

const Dataset& fixture() {
  static const Dataset d = load_fixture();
  return d;
}

Dataset synthetic(std::size_t records, std::size_t attributes) {
  std::mt19937 rng(31);
  std::vector<Attribute> predictors;
  for (std::size_t a = 0; a < attributes; ++a) {
    predictors.push_back({"A" + std::to_string(a), {"x", "y", "z"}});
  }
  auto schema = std::make_shared<const AttributeSchema>(predictors, Attribute{"Y", {"c0", "c1", "c2", "c3"}});
  std::vector<Record> rows;
  for (std::size_t i = 0; i < records; ++i) {
    Record r;
    for (std::size_t a = 0; a < attributes; ++a) r.values.push_back(rng() % 3);
    r.label = (r.values[0] + r.values[1 % attributes] + rng() % 2) % 4;
    rows.push_back(r);
  }
  return Dataset(schema, rows);
}

}  // namespace

static void BM_ScoreAllFixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(score_all(fixture()));
}
BENCHMARK(BM_ScoreAllFixture);

static void BM_BuildFixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(id3_build(fixture()));
}
BENCHMARK(BM_BuildFixture);

static void BM_PredictFixture(benchmark::State& state) {
  const auto tree = id3_build(fixture());
  for (auto _ : state) {
    for (const auto& r : fixture().records()) benchmark::DoNotOptimize(tree.predict(r.values));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fixture().size()));
}
BENCHMARK(BM_PredictFixture);

static void BM_LeaveOneOutFixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(leave_one_out(fixture()));
}
BENCHMARK(BM_LeaveOneOutFixture);

static void BM_BuildSynthetic(benchmark::State& state) {
  const auto d = synthetic(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(id3_build(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildSynthetic)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_VerifyFixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_published(fixture()));
}
BENCHMARK(BM_VerifyFixture);

BENCHMARK_MAIN();
