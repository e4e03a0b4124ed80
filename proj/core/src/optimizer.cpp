#include "gesturemap/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "criteria_detail.hpp"
#include "gesturemap/error.hpp"
#include "random.hpp"

namespace gesturemap {

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::brute_force:
      return "brute-force";
    case Algorithm::assignment_exact:
      return "assignment-exact";
    case Algorithm::local_search:
      return "local-search";
    case Algorithm::anneal:
      return "anneal";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (Algorithm algorithm : {Algorithm::brute_force, Algorithm::assignment_exact,
                              Algorithm::local_search, Algorithm::anneal}) {
    if (to_string(algorithm) == text) return algorithm;
  }
  return std::nullopt;
}

std::string_view to_string(Optimality optimality) noexcept {
  return optimality == Optimality::proven_optimal ? "proven-optimal" : "heuristic";
}

void SolverConfig::validate() const {
  if (max_iterations == 0) throw Error(ErrorCode::invalid_value, "solver.max_iterations must be >= 1");
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
    throw Error(ErrorCode::invalid_value,
                fmt::format("solver.cooling_rate must be in (0, 1), got {}", cooling_rate));
  }
  if (!(initial_temperature >= 0.0) || !std::isfinite(initial_temperature)) {
    throw Error(ErrorCode::invalid_value,
                fmt::format("solver.initial_temperature must be >= 0, got {}", initial_temperature));
  }
  if (brute_force_guard == 0) throw Error(ErrorCode::invalid_value, "solver.brute_force_guard must be >= 1");
}

// ---------------------------------------------------------------------------
// Objective

Objective::Objective(CriterionContext context, WeightVector weights, std::vector<Criterion> active,
                     Normalization normalization)
    : context_(std::move(context)),
      weights_(std::move(weights)),
      active_(std::move(active)),
      alphas_(detail::resolve_weights(weights_, active_)),
      normalization_(normalization) {}

double Objective::evaluate(std::span<const std::size_t> assignment) const {
  // Same summation order as overall_quality, so results agree bit for bit.
  double scores[16];
  std::vector<double> spill;
  std::span<double> out;
  if (active_.size() <= std::size(scores)) {
    out = std::span<double>(scores, active_.size());
  } else {
    spill.resize(active_.size());
    out = spill;
  }
  for (std::size_t i = 0; i < active_.size(); ++i) {
    out[i] = detail::score_unchecked(assignment, active_[i], context_);
  }
  return aggregate_scores(out, alphas_, normalization_);
}

QualityReport Objective::report(std::span<const std::size_t> assignment) const {
  return overall_quality(assignment, weights_, context_, active_, normalization_);
}

const Criterion* Objective::first_non_separable() const noexcept {
  for (const Criterion& criterion : active_) {
    if (!criterion.separable()) return &criterion;
  }
  return nullptr;
}

BenefitMatrix Objective::benefit_matrix() const {
  if (const Criterion* offender = first_non_separable()) {
    throw Error(ErrorCode::non_separable,
                fmt::format("criterion '{}' is not separable; exact assignment needs separable criteria",
                            offender->name()));
  }
  const std::size_t tasks = task_count();
  const std::size_t gestures = gesture_count();
  BenefitMatrix benefit(tasks, gestures);
  if (tasks == 0) return benefit;

  double denominator = static_cast<double>(active_.size());
  if (normalization_ == Normalization::weight_sum) {
    denominator = std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
  }
  if (denominator <= 0.0) return benefit;
  const double scale = 1.0 / (static_cast<double>(tasks) * denominator);
  for (std::size_t t = 0; t < tasks; ++t) {
    for (std::size_t g = 0; g < gestures; ++g) {
      double total = 0.0;
      for (std::size_t c = 0; c < active_.size(); ++c) {
        if (alphas_[c] == 0.0) continue;
        total += alphas_[c] * pair_term(active_[c], t, g, context_);
      }
      benefit.at(t, g) = total * scale;
    }
  }
  return benefit;
}

// ---------------------------------------------------------------------------
// Solvers

std::optional<std::uint64_t> injective_mapping_count(std::uint64_t gestures, std::uint64_t tasks) {
  if (tasks > gestures) return 0;
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < tasks; ++i) {
    const std::uint64_t factor = gestures - i;
    if (count > std::numeric_limits<std::uint64_t>::max() / factor) return std::nullopt;
    count *= factor;
  }
  return count;
}

namespace {

void require_feasible(const Objective& objective) {
  if (objective.gesture_count() < objective.task_count()) {
    throw Error(ErrorCode::infeasible,
                fmt::format("infeasible: {} tasks need distinct gestures but the vocabulary has only {}",
                            objective.task_count(), objective.gesture_count()));
  }
}

OptimizationResult finish(const Objective& objective, Algorithm algorithm, Optimality optimality,
                          std::vector<std::size_t> assignment) {
  OptimizationResult result;
  result.algorithm = algorithm;
  result.optimality = optimality;
  result.report = objective.report(assignment);
  result.mapping = Mapping::from_assignment(objective.context().catalog(), assignment);
  result.assignment = std::move(assignment);
  return result;
}

// Better by more than the tolerance, or tied and lexicographically smaller.
bool preferred(double score, std::span<const std::size_t> assignment, double best_score,
               std::span<const std::size_t> best_assignment) {
  if (score > best_score + kScoreTolerance) return true;
  if (score < best_score - kScoreTolerance) return false;
  return std::lexicographical_compare(assignment.begin(), assignment.end(), best_assignment.begin(),
                                      best_assignment.end());
}

std::vector<std::size_t> random_injective(detail::Rng& rng, std::size_t tasks, std::size_t gestures) {
  std::vector<std::size_t> pool(gestures);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < tasks; ++i) {
    const std::size_t j = i + rng.index(gestures - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(tasks);
  return pool;
}

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run) {
  return detail::splitmix64(seed ^ detail::splitmix64(run));
}

struct RunOutcome {
  std::vector<std::size_t> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::uint64_t iterations = 0;
  std::uint64_t evaluations = 0;
  std::vector<TraceSample> trace;  // iterations relative to the run
};

RunOutcome ascend(const Objective& objective, const SolverConfig& config, std::uint64_t seed) {
  const std::size_t tasks = objective.task_count();
  const std::size_t gestures = objective.gesture_count();
  detail::Rng rng(seed);
  RunOutcome run;
  std::vector<std::size_t> current = random_injective(rng, tasks, gestures);
  double current_score = objective.evaluate(current);
  ++run.evaluations;
  run.trace.push_back({0, current_score});

  std::vector<char> used(gestures, 0);
  for (std::size_t g : current) used[g] = 1;

  while (run.iterations < config.max_iterations) {
    double best_score = current_score;
    enum class Move { none, reassign, swap } move = Move::none;
    std::size_t first = 0;
    std::size_t second = 0;

    for (std::size_t t = 0; t < tasks; ++t) {
      const std::size_t original = current[t];
      for (std::size_t g = 0; g < gestures; ++g) {
        if (used[g]) continue;
        current[t] = g;
        const double score = objective.evaluate(current);
        ++run.evaluations;
        if (score > best_score + kScoreTolerance) {
          best_score = score;
          move = Move::reassign;
          first = t;
          second = g;
        }
      }
      current[t] = original;
    }
    for (std::size_t i = 0; i < tasks; ++i) {
      for (std::size_t j = i + 1; j < tasks; ++j) {
        std::swap(current[i], current[j]);
        const double score = objective.evaluate(current);
        ++run.evaluations;
        std::swap(current[i], current[j]);
        if (score > best_score + kScoreTolerance) {
          best_score = score;
          move = Move::swap;
          first = i;
          second = j;
        }
      }
    }

    if (move == Move::none) break;
    if (move == Move::reassign) {
      used[current[first]] = 0;
      used[second] = 1;
      current[first] = second;
    } else {
      std::swap(current[first], current[second]);
    }
    current_score = best_score;
    ++run.iterations;
    run.trace.push_back({run.iterations, current_score});
  }
  run.best = std::move(current);
  run.best_score = current_score;
  return run;
}

RunOutcome anneal_run(const Objective& objective, const SolverConfig& config, std::uint64_t seed) {
  const std::size_t tasks = objective.task_count();
  const std::size_t gestures = objective.gesture_count();
  detail::Rng rng(seed);
  RunOutcome run;
  std::vector<std::size_t> current = random_injective(rng, tasks, gestures);
  double current_score = objective.evaluate(current);
  ++run.evaluations;
  run.best = current;
  run.best_score = current_score;
  run.trace.push_back({0, current_score});

  std::vector<char> used(gestures, 0);
  for (std::size_t g : current) used[g] = 1;
  std::vector<std::size_t> unused;
  for (std::size_t g = 0; g < gestures; ++g) {
    if (!used[g]) unused.push_back(g);
  }

  const bool can_reassign = tasks >= 1 && !unused.empty();
  const bool can_swap = tasks >= 2;
  double temperature = config.initial_temperature;

  while (run.iterations < config.max_iterations && (can_reassign || can_swap)) {
    ++run.iterations;
    const bool reassign = can_reassign && (!can_swap || rng.index(2) == 0);
    std::size_t first;
    std::size_t second;
    double score;
    if (reassign) {
      first = rng.index(tasks);
      second = rng.index(unused.size());
      const std::size_t previous = current[first];
      current[first] = unused[second];
      score = objective.evaluate(current);
      current[first] = previous;
    } else {
      first = rng.index(tasks);
      second = rng.index(tasks - 1);
      if (second >= first) ++second;
      std::swap(current[first], current[second]);
      score = objective.evaluate(current);
      std::swap(current[first], current[second]);
    }
    ++run.evaluations;

    const double delta = score - current_score;
    const bool accept = delta >= 0.0 || (temperature > 0.0 && rng.unit() < std::exp(delta / temperature));
    if (accept) {
      if (reassign) {
        std::swap(current[first], unused[second]);
      } else {
        std::swap(current[first], current[second]);
      }
      current_score = score;
      if (current_score > run.best_score + kScoreTolerance) {
        run.best = current;
        run.best_score = current_score;
        run.trace.push_back({run.iterations, current_score});
      }
    }
    temperature *= config.cooling_rate;
  }
  return run;
}

template <typename RunFn>
OptimizationResult multi_start(const Objective& objective, const SolverConfig& config, Algorithm algorithm,
                               RunFn run_once) {
  config.validate();
  require_feasible(objective);
  std::vector<std::size_t> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::uint64_t iterations = 0;
  std::uint64_t evaluations = 0;
  std::vector<TraceSample> trace;

  // Runs are independent given their seeds; they could be farmed out and merged
  // with the same preference rule.
  for (std::uint64_t r = 0; r <= config.restarts; ++r) {
    RunOutcome run = run_once(objective, config, run_seed(config.seed, r));
    for (const TraceSample& sample : run.trace) {
      if (trace.empty() || sample.best > trace.back().best + kScoreTolerance) {
        trace.push_back({iterations + sample.iteration, sample.best});
      }
    }
    if (r == 0 || preferred(run.best_score, run.best, best_score, best)) {
      best = run.best;
      best_score = run.best_score;
    }
    iterations += run.iterations;
    evaluations += run.evaluations;
  }

  OptimizationResult result = finish(objective, algorithm, Optimality::heuristic, std::move(best));
  result.iterations_used = iterations;
  result.evaluations = evaluations;
  result.trace = std::move(trace);
  return result;
}

}  // namespace

OptimizationResult brute_force_optimal(const Objective& objective, std::uint64_t guard) {
  require_feasible(objective);
  const std::size_t tasks = objective.task_count();
  const std::size_t gestures = objective.gesture_count();
  const auto count = injective_mapping_count(gestures, tasks);
  if (!count || *count > guard) {
    throw Error(ErrorCode::guard_exceeded,
                fmt::format("brute force over {} tasks and {} gestures needs {} mappings; the guard is {}",
                            tasks, gestures, count ? std::to_string(*count) : std::string("more than 2^64"),
                            guard));
  }

  std::vector<std::size_t> current(tasks);
  std::vector<char> used(gestures, 0);
  std::vector<std::size_t> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::uint64_t enumerated = 0;
  std::vector<TraceSample> trace;

  // Depth-first in ascending gesture order visits vectors lexicographically,
  // so keeping the first strict improvement breaks ties toward the smallest.
  auto visit = [&](auto& self, std::size_t t) -> void {
    if (t == tasks) {
      const double score = objective.evaluate(current);
      ++enumerated;
      if (score > best_score + kScoreTolerance) {
        best = current;
        best_score = score;
        trace.push_back({enumerated, score});
      }
      return;
    }
    for (std::size_t g = 0; g < gestures; ++g) {
      if (used[g]) continue;
      used[g] = 1;
      current[t] = g;
      self(self, t + 1);
      used[g] = 0;
    }
  };
  visit(visit, 0);

  OptimizationResult result = finish(objective, Algorithm::brute_force, Optimality::proven_optimal, best);
  result.iterations_used = enumerated;
  result.evaluations = enumerated;
  result.trace = std::move(trace);
  return result;
}

OptimizationResult assignment_exact(const Objective& objective) {
  require_feasible(objective);
  const BenefitMatrix benefit = objective.benefit_matrix();
  AssignmentSolution solution = solve_max_assignment_lexicographic(benefit, kScoreTolerance);
  OptimizationResult result = finish(objective, Algorithm::assignment_exact, Optimality::proven_optimal,
                                     std::move(solution.column_of_row));
  result.iterations_used = 1;
  result.evaluations = 1;
  result.trace.push_back({1, result.report.aggregate});
  return result;
}

OptimizationResult local_search(const Objective& objective, const SolverConfig& config) {
  return multi_start(objective, config, Algorithm::local_search, ascend);
}

OptimizationResult anneal(const Objective& objective, const SolverConfig& config) {
  return multi_start(objective, config, Algorithm::anneal, anneal_run);
}

OptimizationResult optimize(const Objective& objective, const SolverConfig& config) {
  config.validate();
  switch (config.algorithm) {
    case Algorithm::brute_force:
      return brute_force_optimal(objective, config.brute_force_guard);
    case Algorithm::assignment_exact:
      return assignment_exact(objective);
    case Algorithm::local_search:
      return local_search(objective, config);
    case Algorithm::anneal:
      return anneal(objective, config);
  }
  throw Error(ErrorCode::invalid_value, "unknown algorithm");
}

}  // namespace gesturemap
