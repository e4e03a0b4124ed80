// Randomized invariants over generated instances. Seeds are fixed so failures
// reproduce; the loop index is printed with each failure.

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "gesturemap/error.hpp"
#include "gesturemap/optimizer.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace gesturemap;
using testgen::Gen;

namespace {

constexpr double kExact = 1e-12;

oracle::Instance as_oracle(const CriterionContext& context) {
  return {&context.catalog(), &context.vocabulary(), &context.familiarity_table()};
}

// Wraps a builtin so its score can be shifted without touching the library.
Criterion shifted(const Criterion& base, double delta) {
  return Criterion::custom(base.name(), [base, delta](std::span<const std::size_t> a, const CriterionContext& c) {
    return std::clamp(score_criterion(a, base, c) + delta, 0.0, 1.0);
  });
}

}  // namespace

TEST(TaskProperties, CatalogRoundTrip) {
  for (int i = 0; i < 50; ++i) {
    Gen gen(100 + i);
    const TaskCatalog catalog = testgen::random_catalog(gen, gen.between(1, 12));
    std::stringstream buffer;
    save_catalog(catalog, buffer);
    EXPECT_EQ(load_catalog(buffer), catalog) << i;
  }
}

TEST(TaskProperties, SimilaritySymmetricAndBounded) {
  Gen gen(7);
  const TaskCatalog catalog = testgen::random_catalog(gen, 30);
  for (const Task& a : catalog) {
    EXPECT_DOUBLE_EQ(task_similarity(a, a), 1.0);
    for (const Task& b : catalog) {
      const double s = task_similarity(a, b);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
      EXPECT_EQ(s, task_similarity(b, a));
      EXPECT_NEAR(s, oracle::similarity(a, b), kExact);
    }
  }
}

TEST(GestureProperties, EnumerationMatchesOracleCount) {
  for (int i = 0; i < 40; ++i) {
    Gen gen(200 + i);
    const testgen::RandomSpec rs = testgen::random_spec(gen);
    const auto result = enumerate_vocabulary(rs.spec, rs.relations, rs.multiplicities);
    EXPECT_EQ(result.vocabulary.size(), oracle::count_gestures(rs.spec, rs.relations, rs.multiplicities)) << i;
    EXPECT_EQ(result.empty_warning, result.vocabulary.empty()) << i;
    for (const Gesture& g : result.vocabulary) {
      EXPECT_TRUE(validate_gesture(g, rs.spec).empty()) << i << " " << fingerprint(g);
    }
  }
}

TEST(GestureProperties, DistanceIsAPseudoMetric) {
  Gen gen(11);
  const Vocabulary vocab = testgen::random_vocabulary(gen, 40);
  for (std::size_t a = 0; a < vocab.size(); ++a) {
    EXPECT_EQ(gesture_distance(vocab[a], vocab[a]), 0.0);
    for (std::size_t b = 0; b < vocab.size(); ++b) {
      const double d = gesture_distance(vocab[a], vocab[b]);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      EXPECT_EQ(d, gesture_distance(vocab[b], vocab[a]));
      if (a != b) EXPECT_GT(d, 0.0);
      EXPECT_NEAR(d, oracle::distance(vocab[a], vocab[b]), kExact);
    }
  }
}

TEST(GestureProperties, TriangleInequalityWithinAModality) {
  for (Modality m : kAllModalities) {
    const auto all = enumerate_vocabulary(builtin_spec(m), default_object_relations(), default_multiplicities());
    Gen gen(50 + static_cast<int>(m));
    std::vector<Gesture> sample;
    for (std::size_t i : testgen::random_assignment(gen, 40, all.vocabulary.size())) {
      sample.push_back(all.vocabulary[i]);
    }
    for (const Gesture& a : sample) {
      for (const Gesture& b : sample) {
        for (const Gesture& c : sample) {
          ASSERT_LE(gesture_distance(a, c), gesture_distance(a, b) + gesture_distance(b, c) + kExact)
              << fingerprint(a) << " " << fingerprint(b) << " " << fingerprint(c);
        }
      }
    }
  }
}

// Slots are the dimensions both gestures carry, so the denominator changes
// with the pair and the triangle inequality can break across modalities.
TEST(GestureProperties, TriangleCanFailAcrossModalities) {
  const VocabularySpec spec = builtin_spec_all();
  const Gesture a = make_gesture(spec, Modality::touch,
                                 {{"continuity", "continuous"}, {"duration", "long"},
                                  {"nature-of-motion", "metaphorical-abstract"}, {"linearity", "direction-changes"},
                                  {"relation-of-movement", "parallel"}, {"composition", "single"}},
                                 ObjectRelation::make(RelationKind::ended_on, TargetClass::node), {2, 1, 1});
  const Gesture b = make_gesture(spec, Modality::tangible,
                                 {{"form", "thick-rigid"}, {"material", "plastic"}, {"role", "data"},
                                  {"single-action", "rotate"}, {"tangible-type", "different-type"},
                                  {"tangible-relation", "coupled"}, {"composition", "single"}},
                                 ObjectRelation::make(RelationKind::ended_on, TargetClass::node), {3, 1, 1});
  const Gesture c = make_gesture(spec, Modality::tangible,
                                 {{"form", "thin-bendable"}, {"material", "plastic"}, {"role", "data"},
                                  {"single-action", "tilt"}, {"tangible-type", "same-type"},
                                  {"tangible-relation", "coupled"}, {"composition", "sequence"}},
                                 ObjectRelation::none(), {3, 2, 2});
  EXPECT_DOUBLE_EQ(gesture_distance(a, c), 1.0);
  EXPECT_DOUBLE_EQ(gesture_distance(a, b), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(gesture_distance(b, c), 7.0 / 12.0);
}

TEST(GestureProperties, EffortAndModeAgreeWithOracle) {
  for (const Gesture& g : testgen::gesture_pool()) {
    const double e = gesture_effort(g);
    ASSERT_GE(e, 0.0);
    ASSERT_LE(e, 1.0);
    ASSERT_NEAR(e, oracle::effort(g), kExact) << fingerprint(g);
    ASSERT_EQ(mode_class(g), oracle::mode_of(g)) << fingerprint(g);
  }
}

TEST(GestureProperties, InverseIsAnInvolution) {
  for (int i = 0; i < 20; ++i) {
    Gen gen(300 + i);
    const Vocabulary vocab = testgen::random_vocabulary(gen, 25);
    for (std::size_t g = 0; g < vocab.size(); ++g) {
      const auto inverse = gesture_inverse(vocab[g], vocab);
      EXPECT_EQ(inverse.has_value(), oracle::has_undo(vocab[g], vocab)) << i;
      if (inverse) EXPECT_EQ(gesture_inverse(vocab[*inverse], vocab), g) << i;
    }
  }
}

TEST(CriterionProperties, ScoresInRangeAndMatchOracle) {
  const auto all = builtin_criteria();
  for (int i = 0; i < 150; ++i) {
    Gen gen(400 + i);
    const int tasks = gen.between(1, 8);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 14));
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    for (const Criterion& c : all) {
      const double q = score_criterion(assignment, c, context);
      EXPECT_GE(q, 0.0) << i << c.name();
      EXPECT_LE(q, 1.0) << i << c.name();
      EXPECT_NEAR(q, oracle::criterion(c.kind(), assignment, as_oracle(context)), kExact) << i << c.name();
    }
  }
}

TEST(CriterionProperties, SeparableScoreIsMeanOfTerms) {
  for (int i = 0; i < 100; ++i) {
    Gen gen(500 + i);
    const int tasks = gen.between(1, 7);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 10));
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    for (const Criterion& c : builtin_criteria()) {
      if (!c.separable()) continue;
      double sum = 0.0;
      for (std::size_t t = 0; t < assignment.size(); ++t) sum += pair_term(c, t, assignment[t], context);
      EXPECT_NEAR(score_criterion(assignment, c, context), sum / static_cast<double>(assignment.size()), kExact)
          << i << c.name();
    }
  }
}

TEST(CriterionProperties, BenefitMatrixReproducesObjective) {
  for (int i = 0; i < 100; ++i) {
    Gen gen(600 + i);
    const int tasks = gen.between(1, 6);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 9));
    const auto criteria = testgen::random_subset(gen, builtin_criteria(), true);
    const auto normalization = gen.coin() ? Normalization::criterion_count : Normalization::weight_sum;
    WeightVector weights = testgen::random_weights(gen, criteria);
    weights.set(criteria.front().name(), 0.5);  // keeps weight_sum away from zero
    const Objective objective(context, weights, criteria, normalization);
    const BenefitMatrix benefit = objective.benefit_matrix();
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    double total = 0.0;
    for (std::size_t t = 0; t < assignment.size(); ++t) total += benefit.at(t, assignment[t]);
    EXPECT_NEAR(total, objective.evaluate(assignment), 1e-12) << i;
  }
}

TEST(QualityProperties, MonotoneInEachScore) {
  for (int i = 0; i < 100; ++i) {
    Gen gen(700 + i);
    const int tasks = gen.between(1, 6);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 9));
    const auto base = builtin_criteria();
    const WeightVector weights = testgen::random_weights(gen, base);
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    const double q = overall_quality(assignment, weights, context, base).aggregate;
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);

    const std::size_t pick = static_cast<std::size_t>(gen.between(0, static_cast<int>(base.size()) - 1));
    auto raised = base;
    raised[pick] = shifted(base[pick], 0.25);
    auto lowered = base;
    lowered[pick] = shifted(base[pick], -0.25);
    EXPECT_GE(overall_quality(assignment, weights, context, raised).aggregate, q - kExact) << i;
    EXPECT_LE(overall_quality(assignment, weights, context, lowered).aggregate, q + kExact) << i;
  }
}

TEST(QualityProperties, ZeroWeightCriterionIsIrrelevant) {
  for (int i = 0; i < 100; ++i) {
    Gen gen(800 + i);
    const int tasks = gen.between(1, 6);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 9));
    const auto base = builtin_criteria();
    WeightVector weights = testgen::random_weights(gen, base);
    const std::size_t pick = static_cast<std::size_t>(gen.between(0, static_cast<int>(base.size()) - 1));
    weights.set(base[pick].name(), 0.0);
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    const double q = overall_quality(assignment, weights, context, base).aggregate;
    for (double delta : {-1.0, -0.3, 0.4, 1.0}) {
      auto changed = base;
      changed[pick] = shifted(base[pick], delta);
      EXPECT_EQ(overall_quality(assignment, weights, context, changed).aggregate, q) << i;
    }
  }
}

TEST(QualityProperties, ObjectiveEqualsOverallQuality) {
  for (int i = 0; i < 50; ++i) {
    Gen gen(900 + i);
    const int tasks = gen.between(1, 6);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 9));
    const auto criteria = testgen::random_subset(gen, builtin_criteria(), false);
    const WeightVector weights = testgen::random_weights(gen, criteria);
    const Objective objective(context, weights, criteria);
    const auto assignment = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
    EXPECT_EQ(objective.evaluate(assignment), overall_quality(assignment, weights, context, criteria).aggregate);
    EXPECT_EQ(objective.report(assignment), overall_quality(assignment, weights, context, criteria));
  }
}

TEST(SolverProperties, ResultsVerifyAndBruteForceDominates) {
  for (int i = 0; i < 40; ++i) {
    Gen gen(1000 + i);
    const int tasks = gen.between(1, 5);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 7));
    const auto criteria = testgen::random_subset(gen, builtin_criteria(), false);
    const Objective objective(context, testgen::random_weights(gen, criteria), criteria);
    const auto exact = brute_force_optimal(objective);
    EXPECT_EQ(exact.optimality, Optimality::proven_optimal);

    SolverConfig config;
    config.seed = static_cast<std::uint64_t>(i);
    config.restarts = 2;
    config.max_iterations = 200;
    const auto ls = local_search(objective, config);
    const auto sa = anneal(objective, config);
    for (const auto* r : {&exact, &ls, &sa}) {
      EXPECT_TRUE(verify_mapping(r->mapping, context.catalog(), context.vocabulary()).empty()) << i;
      EXPECT_EQ(r->report.aggregate, objective.evaluate(r->assignment)) << i;
      EXPECT_LE(r->report.aggregate, exact.report.aggregate + kScoreTolerance) << i;
    }
    for (int s = 0; s < 5; ++s) {
      const auto random = testgen::random_assignment(gen, context.catalog().size(), context.vocabulary().size());
      EXPECT_LE(objective.evaluate(random), exact.report.aggregate + kScoreTolerance) << i;
    }
    EXPECT_EQ(exact.evaluations, *injective_mapping_count(context.vocabulary().size(), context.catalog().size()));
  }
}

TEST(SolverProperties, BruteForceMatchesOracleSearch) {
  for (int i = 0; i < 25; ++i) {
    Gen gen(1100 + i);
    const int tasks = gen.between(1, 4);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 6));
    const auto criteria = builtin_criteria();
    const WeightVector weights = testgen::random_weights(gen, criteria);
    const auto instance = as_oracle(context);
    std::vector<double> alphas;
    for (const Criterion& c : criteria) alphas.push_back(*weights.find(c.name()));
    const auto best = oracle::exhaustive(context.catalog().size(), context.vocabulary().size(),
                                         [&](const std::vector<std::size_t>& a) {
                                           std::vector<double> scores;
                                           for (const Criterion& c : criteria) {
                                             scores.push_back(oracle::criterion(c.kind(), a, instance));
                                           }
                                           return static_cast<double>(oracle::quality(scores, alphas));
                                         });
    const auto result = brute_force_optimal(Objective(context, weights, criteria));
    EXPECT_NEAR(result.report.aggregate, best.score, kExact) << i;
    EXPECT_EQ(result.evaluations, best.visited) << i;
  }
}

TEST(SolverProperties, AssignmentExactMatchesBruteForce) {
  for (int i = 0; i < 60; ++i) {
    Gen gen(1200 + i);
    const int tasks = gen.between(1, 5);
    const CriterionContext context = testgen::random_context(gen, tasks, gen.between(tasks, 8));
    const auto criteria = testgen::random_subset(gen, builtin_criteria(), true);
    const Objective objective(context, testgen::random_weights(gen, criteria), criteria);
    const auto exact = assignment_exact(objective);
    const auto brute = brute_force_optimal(objective);
    EXPECT_NEAR(exact.report.aggregate, brute.report.aggregate, kScoreTolerance) << i;
    EXPECT_EQ(exact.optimality, Optimality::proven_optimal);
    EXPECT_TRUE(verify_mapping(exact.mapping, context.catalog(), context.vocabulary()).empty()) << i;
  }
}

TEST(SolverProperties, SameSeedSameResult) {
  for (int i = 0; i < 10; ++i) {
    Gen gen(1300 + i);
    const CriterionContext context = testgen::random_context(gen, 5, 9);
    const auto criteria = builtin_criteria();
    const Objective objective(context, WeightVector::uniform(criteria), criteria);
    for (Algorithm algorithm : {Algorithm::local_search, Algorithm::anneal}) {
      SolverConfig config;
      config.algorithm = algorithm;
      config.seed = 1000 + static_cast<std::uint64_t>(i);
      config.restarts = 3;
      config.max_iterations = 300;
      EXPECT_EQ(optimize(objective, config), optimize(objective, config)) << i;
    }
  }
}

TEST(SolverProperties, GuardCountMatchesExactArithmetic) {
  for (unsigned l = 0; l <= 40; ++l) {
    for (unsigned k = 0; k <= l + 1; ++k) {
      const auto exact = oracle::falling_factorial(l, k);
      const auto count = injective_mapping_count(l, k);
      if (exact > std::numeric_limits<std::uint64_t>::max()) {
        EXPECT_FALSE(count.has_value()) << l << " " << k;
      } else {
        ASSERT_TRUE(count.has_value()) << l << " " << k;
        EXPECT_EQ(*count, exact.convert_to<std::uint64_t>()) << l << " " << k;
      }
    }
  }
}

TEST(SolverProperties, GuardRejectsBeforeSearching) {
  Gen gen(1400);
  const CriterionContext context = testgen::random_context(gen, 4, 8);
  const auto criteria = builtin_criteria();
  const Objective objective(context, WeightVector::uniform(criteria), criteria);
  try {
    brute_force_optimal(objective, 1679);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::guard_exceeded);
    EXPECT_NE(std::string(e.what()).find("1680"), std::string::npos) << e.what();
  }
  EXPECT_EQ(brute_force_optimal(objective, 1680).evaluations, 1680u);
}
