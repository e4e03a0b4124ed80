#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gesturemap/assignment.hpp"
#include "gesturemap/criteria.hpp"
#include "gesturemap/mapping.hpp"

namespace gesturemap {

// Scores below this difference are treated as equal everywhere in the solvers.
inline constexpr double kScoreTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultBruteForceGuard = 10'000'000;

enum class Algorithm { brute_force, assignment_exact, local_search, anneal };

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text);

struct SolverConfig {
  Algorithm algorithm = Algorithm::local_search;
  std::uint64_t seed = 0;
  std::uint64_t max_iterations = 1000;  // per restart: ascent steps or annealing proposals
  std::uint32_t restarts = 0;           // extra runs beyond the first
  double initial_temperature = 0.05;
  double cooling_rate = 0.995;
  std::uint64_t brute_force_guard = kDefaultBruteForceGuard;

  // Throws Error(invalid_value) for max_iterations == 0, cooling_rate outside
  // (0, 1), negative temperature, or a zero guard.
  void validate() const;
};

enum class Optimality { proven_optimal, heuristic };

std::string_view to_string(Optimality optimality) noexcept;

struct TraceSample {
  std::uint64_t iteration = 0;
  double best = 0.0;

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

struct OptimizationResult {
  Algorithm algorithm = Algorithm::brute_force;
  std::vector<std::size_t> assignment;  // catalog-ordered gesture indices
  Mapping mapping;
  QualityReport report;
  std::uint64_t iterations_used = 0;
  std::uint64_t evaluations = 0;  // objective evaluations, or mappings enumerated
  std::vector<TraceSample> trace;
  Optimality optimality = Optimality::heuristic;

  friend bool operator==(const OptimizationResult&, const OptimizationResult&) = default;
};

// The weighted quality function over one context and criteria list, checked
// once so solvers can evaluate candidate assignments cheaply.
class Objective {
 public:
  // Throws Error(empty_criteria) or Error(invalid_value) for missing weights.
  Objective(CriterionContext context, WeightVector weights, std::vector<Criterion> active,
            Normalization normalization = Normalization::criterion_count);

  const CriterionContext& context() const noexcept { return context_; }
  const WeightVector& weights() const noexcept { return weights_; }
  std::span<const Criterion> active() const noexcept { return active_; }
  Normalization normalization() const noexcept { return normalization_; }
  std::size_t task_count() const noexcept { return context_.catalog().size(); }
  std::size_t gesture_count() const noexcept { return context_.vocabulary().size(); }

  // Aggregate for a total injective assignment; bit-identical to
  // overall_quality(...).aggregate. No validation.
  double evaluate(std::span<const std::size_t> assignment) const;
  QualityReport report(std::span<const std::size_t> assignment) const;

  // First criterion that is not separable, if any.
  const Criterion* first_non_separable() const noexcept;
  // B(t, g) with sum_t B(t, m(t)) equal to evaluate(m) up to rounding, for
  // separable objectives. Throws Error(non_separable).
  BenefitMatrix benefit_matrix() const;

 private:
  CriterionContext context_;
  WeightVector weights_;
  std::vector<Criterion> active_;
  std::vector<double> alphas_;
  Normalization normalization_;
};

// l! / (l - k)!, or nullopt when it does not fit in 64 bits. 0 when k > l.
std::optional<std::uint64_t> injective_mapping_count(std::uint64_t gestures, std::uint64_t tasks);

// Enumerates every injective mapping in lexicographic order of the gesture
// index vector and keeps the first best. Throws Error(infeasible) when the
// vocabulary is smaller than the catalog, Error(guard_exceeded) when the
// mapping count exceeds `guard`.
OptimizationResult brute_force_optimal(const Objective& objective,
                                       std::uint64_t guard = kDefaultBruteForceGuard);

// Exact maximum-weight assignment; every active criterion must be separable
// (Error(non_separable) names the first offender).
OptimizationResult assignment_exact(const Objective& objective);

// Steepest ascent over reassign/swap moves from seeded random starts.
OptimizationResult local_search(const Objective& objective, const SolverConfig& config);

// Metropolis acceptance with geometric cooling; returns the best mapping seen.
OptimizationResult anneal(const Objective& objective, const SolverConfig& config);

// Dispatches on config.algorithm.
OptimizationResult optimize(const Objective& objective, const SolverConfig& config);

}  // namespace gesturemap
