#include <benchmark/benchmark.h>

#include <random>

#include "cmv/petri/invariants.hpp"

namespace {

cmv::petri::PlaceTransitionNet ring_net(size_t n) {
  cmv::petri::PlaceTransitionNet net;
  for (size_t p = 0; p < n; ++p)
    net.add_place("P" + std::to_string(p), p == 0 ? 1 : 0);
  for (size_t t = 0; t < n; ++t) net.add_transition("T" + std::to_string(t));
  for (size_t i = 0; i < n; ++i) {
    net.add_arc_pt(static_cast<int>(i), static_cast<int>(i));
    net.add_arc_tp(static_cast<int>(i), static_cast<int>((i + 1) % n));
  }
  return net;
}

cmv::petri::PlaceTransitionNet random_net(size_t places, size_t transitions,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  cmv::petri::PlaceTransitionNet net;
  for (size_t p = 0; p < places; ++p)
    net.add_place("P" + std::to_string(p), rng() % 2);
  for (size_t t = 0; t < transitions; ++t)
    net.add_transition("T" + std::to_string(t));
  for (size_t a = 0; a < places * 2; ++a) {
    int p = static_cast<int>(rng() % places);
    int t = static_cast<int>(rng() % transitions);
    if (rng() % 2)
      net.add_arc_pt(p, t);
    else
      net.add_arc_tp(t, p);
  }
  return net;
}

void BM_PInvariantsRing(benchmark::State& state) {
  auto net = ring_net(static_cast<size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::petri::p_invariants(net));
}
BENCHMARK(BM_PInvariantsRing)->Arg(8)->Arg(16)->Arg(32);

void BM_TInvariantsRandom(benchmark::State& state) {
  auto net = random_net(static_cast<size_t>(state.range(0)),
                        static_cast<size_t>(state.range(0)), 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::petri::t_invariants(net));
}
BENCHMARK(BM_TInvariantsRandom)->Arg(6)->Arg(10);

void BM_Fairness(benchmark::State& state) {
  auto net = ring_net(static_cast<size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(cmv::petri::check_b_fairness(net));
}
BENCHMARK(BM_Fairness)->Arg(8)->Arg(16);

} // namespace
