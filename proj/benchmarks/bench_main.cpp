#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "sporgen/bundle.hpp"
#include "sporgen/census.hpp"
#include "sporgen/character_table.hpp"
#include "sporgen/cyclotomic.hpp"
#include "sporgen/genprob.hpp"
#include "sporgen/perm_io.hpp"
#include "sporgen/random.hpp"
#include "sporgen/wordprog.hpp"

using namespace sporgen;

namespace {

const char* const kGroups[] = {"m11", "m12", "m22", "j1", "j2"};

std::filesystem::path data(const std::string& rel) { return std::filesystem::path(SPORGEN_BENCH_DATA) / rel; }

std::vector<Permutation> gens(const std::string& name) { return load_perm_file(data("groups/" + name + "/gens.txt")); }

void BM_ChainBuild(benchmark::State& state) {
  const auto g = gens(kGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(StabilizerChain::build(g).order());
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_ChainBuild)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_OrderCensus(benchmark::State& state) {
  const auto chain = StabilizerChain::build(gens(kGroups[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(order_census(chain, 100'000'000).counts.size());
  state.SetLabel(kGroups[state.range(0)]);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(to_u64(chain.order())));
}
BENCHMARK(BM_OrderCensus)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

// One generation test per iteration on random pairs of the group.
void BM_PairTester(benchmark::State& state) {
  const auto chain = StabilizerChain::build(gens(kGroups[state.range(0)]));
  PairTester tester(chain);
  Rng rng(3);
  std::vector<std::pair<Permutation, Permutation>> pairs;
  for (int n = 0; n < 256; ++n) pairs.emplace_back(chain.random_element(rng), chain.random_element(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [x, y] = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(tester.generates(x.images(), y.images()));
  }
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_PairTester)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_GenProbM11(benchmark::State& state) {
  const auto chain = StabilizerChain::build(gens("m11"));
  const auto classes = conjugacy_classes(chain, 100'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(gen_probability(chain, classes, 2, 11).probability);
}
BENCHMARK(BM_GenProbM11)->Unit(benchmark::kMillisecond);

void BM_CyclotomicProduct(benchmark::State& state) {
  const auto a = Cyclotomic::parse("E(35)+2*E(35)^3-E(35)^11+1/2");
  const auto b = Cyclotomic::parse("E(21)^4-E(21)^5+3");
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicProduct);

void BM_CmcScanA5(benchmark::State& state) {
  const auto table = load_character_table(data("tables/a5.json"));
  for (auto _ : state) benchmark::DoNotOptimize(cmc_scan(table, 2, 4).entries.size());
}
BENCHMARK(BM_CmcScanA5);

void BM_WordProgramParse(benchmark::State& state) {
  const auto path = data("wordprog/th.slp");
  for (auto _ : state) benchmark::DoNotOptimize(load_program(path).instructions.size());
}
BENCHMARK(BM_WordProgramParse)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
