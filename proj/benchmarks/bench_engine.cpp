#include <benchmark/benchmark.h>

#include "semnav/grounder.h"
#include "semnav/parser.h"
#include "semnav/road_world.h"
#include "semnav/solver.h"

namespace {

const char* kId1Constraints =
    ":-#count{T : cross_left(T)}=0.\n"
    ":-#count{T : cross_left(T)}>1.\n"
    ":-#count{T : cross_straight(T)}=0.\n"
    ":-#count{T : cross_straight(T)}>1.\n"
    ":-#count{T : cross_right(T)}=0.\n"
    ":-#count{T : cross_right(T)}>1.\n"
    ":-cross_left(T1), cross_straight(T2), T1>=T2.\n"
    ":-cross_left(T1), cross_right(T3), T1>=T3.\n"
    ":-cross_straight(T2), cross_right(T3),T2>=T3.\n";

std::string scenario_text(int junctions, bool constrained) {
  std::string text =
      semnav::intrinsic_handbook_text() + "\n" +
      semnav::extrinsic_facts_text(semnav::RoadWorld::all_unknown(junctions));
  if (constrained) text += kId1Constraints;
  return text;
}

void BM_ParseConstraints(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(semnav::parse_program(kId1Constraints, 3));
}
BENCHMARK(BM_ParseConstraints);

void BM_GroundScenario(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  semnav::Program p = semnav::parse_program(scenario_text(n, true), n);
  for (auto _ : state) benchmark::DoNotOptimize(semnav::ground(p));
}
BENCHMARK(BM_GroundScenario)->Arg(3)->Arg(5);

void BM_SolveConstrained(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  semnav::GroundProgram gp =
      semnav::ground(semnav::parse_program(scenario_text(n, true), n));
  for (auto _ : state) benchmark::DoNotOptimize(semnav::solve(gp));
}
BENCHMARK(BM_SolveConstrained)->Arg(3);

void BM_SolveBaseline(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  semnav::GroundProgram gp =
      semnav::ground(semnav::parse_program(scenario_text(n, false), n));
  for (auto _ : state) benchmark::DoNotOptimize(semnav::solve(gp));
}
BENCHMARK(BM_SolveBaseline)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
