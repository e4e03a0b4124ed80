#include <gtest/gtest.h>

#include "gesturemap/error.hpp"
#include "gesturemap/fixtures.hpp"
#include "gesturemap/optimizer.hpp"

using namespace gesturemap;

namespace {

Objective objective_of(const ProblemFixture& f) { return Objective(f.context, f.weights, f.criteria); }

Objective demo_objective(std::vector<Criterion> criteria = builtin_criteria()) {
  const DemoInstance demo = demo_instance();
  return Objective(CriterionContext(demo.catalog, demo.vocabulary, demo.familiarity), demo.weights,
                   std::move(criteria));
}

ProblemFixture small(std::size_t tasks, std::size_t gestures) {
  ProblemFixture f = fixture_5x8();
  std::vector<Task> kept(f.context.catalog().tasks().begin(), f.context.catalog().tasks().begin() + tasks);
  std::vector<Gesture> chosen(f.context.vocabulary().begin(), f.context.vocabulary().begin() + gestures);
  return {CriterionContext(TaskCatalog(kept), Vocabulary(chosen), f.context.familiarity_table()), f.weights,
          f.criteria};
}

}  // namespace

TEST(InjectiveCount, Values) {
  EXPECT_EQ(injective_mapping_count(3, 2), 6u);
  EXPECT_EQ(injective_mapping_count(10, 0), 1u);
  EXPECT_EQ(injective_mapping_count(2, 3), 0u);
  EXPECT_EQ(injective_mapping_count(20, 20), 2432902008176640000u);
  EXPECT_FALSE(injective_mapping_count(21, 21).has_value());
}

TEST(BruteForce, CountsSixMappings) {
  const auto f = small(2, 3);
  const auto result = brute_force_optimal(objective_of(f));
  EXPECT_EQ(result.evaluations, 6u);
  EXPECT_EQ(result.optimality, Optimality::proven_optimal);
}

TEST(BruteForce, SingleTaskPicksBestTerm) {
  const auto f = small(1, 8);
  const std::vector<Criterion> only = {Criterion::builtin(CriterionKind::familiarity)};
  const Objective objective(f.context, f.weights, only);
  const auto result = brute_force_optimal(objective);
  double best = -1;
  std::size_t arg = 0;
  for (std::size_t g = 0; g < 8; ++g) {
    const double term = pair_term(only[0], 0, g, f.context);
    if (term > best + 1e-9) {
      best = term;
      arg = g;
    }
  }
  EXPECT_EQ(result.assignment, std::vector<std::size_t>{arg});
}

TEST(BruteForce, Errors) {
  const auto f = small(5, 4);
  try {
    brute_force_optimal(objective_of(f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible);
    EXPECT_NE(std::string(e.what()).find("5 tasks"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("only 4"), std::string::npos);
  }
  try {
    brute_force_optimal(objective_of(fixture_5x8()), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::guard_exceeded);
    EXPECT_NE(std::string(e.what()).find("6720"), std::string::npos) << e.what();
  }
}

TEST(BruteForce, ResultVerifiesAndReportsAggregate) {
  const auto f = fixture_4x6();
  const auto result = brute_force_optimal(objective_of(f));
  EXPECT_TRUE(verify_mapping(result.mapping, f.context.catalog(), f.context.vocabulary()).empty());
  EXPECT_EQ(result.report.aggregate, objective_of(f).evaluate(result.assignment));
  EXPECT_EQ(result.report, overall_quality(result.mapping, f.weights, f.context, f.criteria));
}

TEST(AssignmentExact, RejectsNonSeparable) {
  try {
    assignment_exact(objective_of(fixture_4x6()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_separable);
    EXPECT_NE(std::string(e.what()).find("predictability"), std::string::npos);
  }
}

TEST(AssignmentExact, AgreesWithBruteForceOnDemo) {
  std::vector<Criterion> separable;
  for (const Criterion& c : builtin_criteria()) {
    if (c.separable()) separable.push_back(c);
  }
  const Objective objective = demo_objective(separable);
  const auto exact = assignment_exact(objective);
  const auto brute = brute_force_optimal(objective);
  EXPECT_NEAR(exact.report.aggregate, brute.report.aggregate, 1e-9);
  EXPECT_EQ(exact.optimality, Optimality::proven_optimal);
}

TEST(AssignmentExact, WeightSumNormalization) {
  std::vector<Criterion> separable;
  for (const Criterion& c : builtin_criteria()) {
    if (c.separable()) separable.push_back(c);
  }
  const auto f = fixture_5x8();
  WeightVector weights;
  double alpha = 0.2;
  for (const Criterion& c : separable) weights.set(c.name(), alpha += 0.15);
  const Objective objective(f.context, weights, separable, Normalization::weight_sum);
  EXPECT_NEAR(assignment_exact(objective).report.aggregate, brute_force_optimal(objective).report.aggregate, 1e-9);
}

TEST(LocalSearch, SingleTaskReachesOptimum) {
  const auto f = small(1, 8);
  const Objective objective = objective_of(f);
  SolverConfig config;
  const auto result = local_search(objective, config);
  EXPECT_NEAR(result.report.aggregate, brute_force_optimal(objective).report.aggregate, 1e-9);
  EXPECT_EQ(result.optimality, Optimality::heuristic);
}

TEST(LocalSearch, NeverBelowStart) {
  const Objective objective = objective_of(fixture_5x8());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SolverConfig config;
    config.seed = seed;
    const auto result = local_search(objective, config);
    ASSERT_FALSE(result.trace.empty());
    EXPECT_GE(result.report.aggregate, result.trace.front().best);
    for (std::size_t i = 1; i < result.trace.size(); ++i) EXPECT_GT(result.trace[i].best, result.trace[i - 1].best);
  }
}

TEST(LocalSearch, TwentyRestartsMatchOracle) {
  for (const auto& f : {fixture_4x6(), fixture_5x8()}) {
    const Objective objective = objective_of(f);
    SolverConfig config;
    config.restarts = 20;
    EXPECT_NEAR(local_search(objective, config).report.aggregate, brute_force_optimal(objective).report.aggregate,
                1e-9);
  }
}

TEST(LocalSearch, Deterministic) {
  const Objective objective = objective_of(fixture_5x8());
  SolverConfig config;
  config.seed = 42;
  config.restarts = 3;
  EXPECT_EQ(local_search(objective, config), local_search(objective, config));
}

TEST(LocalSearch, Infeasible) {
  SolverConfig config;
  EXPECT_THROW(local_search(objective_of(small(5, 3)), config), Error);
  EXPECT_THROW(anneal(objective_of(small(5, 3)), config), Error);
}

TEST(Anneal, QuenchNeverBelowStart) {
  const Objective objective = objective_of(fixture_5x8());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SolverConfig config;
    config.algorithm = Algorithm::anneal;
    config.seed = seed;
    config.initial_temperature = 0.0;
    config.cooling_rate = 1e-9;
    config.max_iterations = 200;
    const auto result = anneal(objective, config);
    EXPECT_GE(result.report.aggregate, result.trace.front().best);
  }
}

TEST(Anneal, Deterministic) {
  const Objective objective = objective_of(fixture_5x8());
  SolverConfig config;
  config.seed = 9;
  EXPECT_EQ(anneal(objective, config), anneal(objective, config));
}

TEST(Anneal, SeedsMatchOracleMostOfTheTime) {
  const Objective objective = objective_of(fixture_5x8());
  const double optimum = brute_force_optimal(objective).report.aggregate;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SolverConfig config;
    config.seed = seed;
    if (anneal(objective, config).report.aggregate >= optimum - 1e-9) ++hits;
  }
  EXPECT_GE(hits, 95);
}

TEST(SolverConfig, Validation) {
  SolverConfig config;
  config.cooling_rate = 1.0;
  EXPECT_THROW(config.validate(), Error);
  config.cooling_rate = 0.5;
  config.max_iterations = 0;
  EXPECT_THROW(config.validate(), Error);
  config.max_iterations = 1;
  config.initial_temperature = -1;
  EXPECT_THROW(config.validate(), Error);
}

TEST(Optimize, DispatchesAndNames) {
  const Objective objective = objective_of(fixture_4x6());
  SolverConfig config;
  config.algorithm = Algorithm::brute_force;
  EXPECT_EQ(optimize(objective, config).algorithm, Algorithm::brute_force);
  config.algorithm = Algorithm::anneal;
  EXPECT_EQ(optimize(objective, config).optimality, Optimality::heuristic);
  for (Algorithm a : {Algorithm::brute_force, Algorithm::assignment_exact, Algorithm::local_search, Algorithm::anneal}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("greedy").has_value());
}

TEST(Objective, BenefitMatrixSumsToEvaluate) {
  std::vector<Criterion> separable;
  for (const Criterion& c : builtin_criteria()) {
    if (c.separable()) separable.push_back(c);
  }
  const Objective objective = demo_objective(separable);
  const BenefitMatrix benefit = objective.benefit_matrix();
  const std::vector<std::size_t> assignment = {0, 1, 2, 3, 4, 5};
  double total = 0;
  for (std::size_t t = 0; t < 6; ++t) total += benefit.at(t, assignment[t]);
  EXPECT_NEAR(total, objective.evaluate(assignment), 1e-12);
}
