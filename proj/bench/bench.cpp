#include <benchmark/benchmark.h>

#include "intransit/arena.hpp"
#include "intransit/demos.hpp"

namespace {

using namespace intransit;

const GameTable& rpsls() {
  static const GameTable g = GameTable::from_ints(
      "rpsls", {{0, -1, 1, 1, -1}, {1, 0, -1, -1, 1}, {-1, 1, 0, 1, -1}, {-1, 1, -1, 0, 1},
                {1, -1, 1, -1, 0}},
      true);
  return g;
}

void BM_TournamentSerial(benchmark::State& state) {
  const auto fuel = state.range(0);
  const auto learners = shipped_catalog(rpsls(), fuel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_tournament_serial(rpsls(), learners, fuel));
  }
}
BENCHMARK(BM_TournamentSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TournamentParallel(benchmark::State& state) {
  const auto fuel = state.range(0);
  const auto learners = shipped_catalog(rpsls(), fuel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_tournament(rpsls(), learners, fuel));
  }
}
BENCHMARK(BM_TournamentParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EnumerateSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_game_count_serial(3, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateSerial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EnumerateParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_game_count(3, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateParallel)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
