#include <benchmark/benchmark.h>

#include "gesturemap/fixtures.hpp"
#include "gesturemap/optimizer.hpp"

using namespace gesturemap;

namespace {

Objective objective_of(const ProblemFixture& f) { return Objective(f.context, f.weights, f.criteria); }

Objective separable_objective(const ProblemFixture& f) {
  std::vector<Criterion> separable;
  for (const Criterion& c : f.criteria) {
    if (c.separable()) separable.push_back(c);
  }
  return Objective(f.context, f.weights, separable);
}

void BM_EnumerateBuiltin(benchmark::State& state) {
  const auto modality = static_cast<Modality>(state.range(0));
  const VocabularySpec spec = builtin_spec(modality);
  const auto relations = default_object_relations();
  const auto multiplicities = default_multiplicities();
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_vocabulary(spec, relations, multiplicities));
  }
  state.SetLabel(std::string(to_string(modality)));
}
BENCHMARK(BM_EnumerateBuiltin)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_EvaluateDemo(benchmark::State& state) {
  const DemoInstance demo = demo_instance();
  const Objective objective(CriterionContext(demo.catalog, demo.vocabulary, demo.familiarity), demo.weights,
                            builtin_criteria());
  const std::vector<std::size_t> assignment{0, 1, 2, 3, 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(objective.evaluate(assignment));
}
BENCHMARK(BM_EvaluateDemo);

void BM_BruteForce5x8(benchmark::State& state) {
  const Objective objective = objective_of(fixture_5x8());
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal(objective));
}
BENCHMARK(BM_BruteForce5x8)->Unit(benchmark::kMillisecond);

void BM_AssignmentExact5x8(benchmark::State& state) {
  const Objective objective = separable_objective(fixture_5x8());
  for (auto _ : state) benchmark::DoNotOptimize(assignment_exact(objective));
}
BENCHMARK(BM_AssignmentExact5x8)->Unit(benchmark::kMicrosecond);

void BM_LocalSearch5x8(benchmark::State& state) {
  const Objective objective = objective_of(fixture_5x8());
  SolverConfig config;
  config.restarts = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local_search(objective, config));
}
BENCHMARK(BM_LocalSearch5x8)->Arg(0)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_Anneal5x8(benchmark::State& state) {
  const Objective objective = objective_of(fixture_5x8());
  const SolverConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(anneal(objective, config));
}
BENCHMARK(BM_Anneal5x8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
