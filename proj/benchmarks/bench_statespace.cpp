#include <benchmark/benchmark.h>

#include "cmv/model/parse.hpp"
#include "cmv/space/generate.hpp"
#include "cmv/space/reduce.hpp"
#include "cmv/transform/transform.hpp"

namespace {

std::string fixture(const char* name) {
  return std::string(CMV_FIXTURE_DIR) + "/" + name;
}

void BM_ManufacturingReachability(benchmark::State& state) {
  auto composition =
      cmv::model::load_composition_file(fixture("manufacturing-2.cmp"));
  auto net = cmv::transform::composition_to_ptnet(composition).first;
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::space::generate(net));
}
BENCHMARK(BM_ManufacturingReachability);

void BM_FieldArtilleryGeneration(benchmark::State& state) {
  auto composition =
      cmv::model::load_composition_file(fixture("field-artillery.cmp"));
  auto sys = cmv::transform::composition_to_colored(composition);
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::space::generate(sys));
}
BENCHMARK(BM_FieldArtilleryGeneration)->Unit(benchmark::kMillisecond);

void BM_FieldArtilleryReduction(benchmark::State& state) {
  auto composition =
      cmv::model::load_composition_file(fixture("field-artillery.cmp"));
  auto sys = cmv::transform::composition_to_colored(composition);
  auto graph = cmv::space::generate(sys);
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::space::reduce_compositional(graph));
}
BENCHMARK(BM_FieldArtilleryReduction)->Unit(benchmark::kMillisecond);

} // namespace
