#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gesturemap/gesture_vocabulary.hpp"
#include "gesturemap/mapping.hpp"
#include "gesturemap/task_catalog.hpp"

namespace gesturemap {

enum class CriterionKind {
  predictability,
  consistency,
  familiarity,
  generalizability,
  viscosity,
  recoverability,
  directness,
  continuity,
  custom,
};

std::string_view to_string(CriterionKind kind) noexcept;
std::optional<CriterionKind> parse_criterion_kind(std::string_view text);

// Familiarity scores keyed by (task id, gesture fingerprint); all in [0, 1].
class FamiliarityTable {
 public:
  static constexpr double kDefaultScore = 0.5;

  // Throws Error(invalid_value) for scores outside [0, 1].
  void set(std::string task_id, std::string gesture_fingerprint, double score);
  double lookup(std::string_view task_id, std::string_view gesture_fingerprint) const;
  std::size_t size() const noexcept { return scores_.size(); }

  const std::map<std::pair<std::string, std::string>, double>& entries() const noexcept {
    return scores_;
  }

 private:
  std::map<std::pair<std::string, std::string>, double> scores_;
};

FamiliarityTable load_familiarity(std::istream& in);
FamiliarityTable load_familiarity_file(const std::string& path);
void save_familiarity(const FamiliarityTable& table, std::ostream& out);

// Everything the criterion definitions read. Immutable; copies share the
// lazily computed vocabulary statistics.
class CriterionContext {
 public:
  CriterionContext(TaskCatalog catalog, Vocabulary vocabulary, FamiliarityTable familiarity = {});

  const TaskCatalog& catalog() const noexcept { return *catalog_; }
  const Vocabulary& vocabulary() const noexcept { return *vocabulary_; }
  const FamiliarityTable& familiarity_table() const noexcept { return *familiarity_; }

  double familiarity(std::size_t task, std::size_t gesture) const;
  // Largest gesture_distance over all vocabulary pairs (0 for fewer than two gestures).
  double max_pairwise_distance() const;
  // Cached gesture_inverse lookups.
  bool has_inverse(std::size_t gesture) const;

  double total_frequency() const noexcept { return total_frequency_; }
  std::size_t mutating_count() const noexcept { return mutating_count_; }
  std::size_t direct_candidate_count() const noexcept { return direct_candidate_count_; }

 private:
  struct Lazy;

  std::shared_ptr<const TaskCatalog> catalog_;
  std::shared_ptr<const Vocabulary> vocabulary_;
  std::shared_ptr<const FamiliarityTable> familiarity_;
  std::shared_ptr<Lazy> lazy_;
  double total_frequency_ = 0.0;
  std::size_t mutating_count_ = 0;
  std::size_t direct_candidate_count_ = 0;
};

// Tasks whose scope touches a node, edge, subgraph or label; these are the
// ones directness asks to be mapped onto object-relative gestures.
bool is_direct_candidate(const Task& task);

// Equal mode, or any gesture when the task's mode varies.
bool mode_compatible(const InteractionModeTag& tag, InteractionMode gesture_mode);

// Whole-mapping score of a custom criterion, given catalog-ordered gesture indices.
using MappingScoreFn =
    std::function<double(std::span<const std::size_t> assignment, const CriterionContext& context)>;
// Per-(task, gesture) term of a separable custom criterion; the score is the mean over tasks.
using PairTermFn =
    std::function<double(std::size_t task, std::size_t gesture, const CriterionContext& context)>;

class Criterion {
 public:
  static Criterion builtin(CriterionKind kind);
  static Criterion custom(std::string name, MappingScoreFn score);
  static Criterion custom_separable(std::string name, PairTermFn term);
  // Custom criterion without a scoring handle; scoring it raises missing_context.
  static Criterion custom_unbound(std::string name);

  CriterionKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  // True iff the score is the mean of independent per-(task, gesture) terms.
  bool separable() const noexcept;

  const MappingScoreFn& score_fn() const noexcept { return score_; }
  const PairTermFn& term_fn() const noexcept { return term_; }

 private:
  Criterion(CriterionKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  CriterionKind kind_;
  std::string name_;
  MappingScoreFn score_;
  PairTermFn term_;
};

// The eight builtin criteria in declaration order.
std::vector<Criterion> builtin_criteria();

// q(m, c) for catalog-ordered gesture indices. Throws Error(invalid_mapping)
// when the assignment is not total and injective, Error(missing_context) for
// an unbound custom criterion, Error(invalid_value) for a custom score outside [0, 1].
double score_criterion(std::span<const std::size_t> assignment, const Criterion& criterion,
                       const CriterionContext& context);
double score_criterion(const Mapping& mapping, const Criterion& criterion,
                       const CriterionContext& context);

// Per-pair term of a separable criterion. Throws Error(non_separable) otherwise.
double pair_term(const Criterion& criterion, std::size_t task, std::size_t gesture,
                 const CriterionContext& context);

class WeightVector {
 public:
  WeightVector() = default;
  // Every criterion gets the same weight.
  static WeightVector uniform(std::span<const Criterion> criteria, double alpha = 1.0);

  // Throws Error(invalid_value) unless alpha is in [0, 1].
  void set(std::string criterion, double alpha);
  std::optional<double> find(std::string_view criterion) const;
  const std::map<std::string, double, std::less<>>& weights() const noexcept { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::map<std::string, double, std::less<>> weights_;
};

WeightVector load_weights(std::istream& in);
WeightVector load_weights_file(const std::string& path);

enum class Normalization {
  criterion_count,  // (sum alpha_i q_i) / n
  weight_sum,       // (sum alpha_i q_i) / (sum alpha_i)
};

std::string_view to_string(Normalization normalization) noexcept;

struct CriterionScore {
  std::string criterion;
  double score = 0.0;
  double weight = 0.0;

  friend bool operator==(const CriterionScore&, const CriterionScore&) = default;
};

struct QualityReport {
  std::vector<CriterionScore> per_criterion;  // in active-criteria order
  double aggregate = 0.0;
  std::size_t n = 0;
  Normalization normalization = Normalization::criterion_count;

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

// Weighted normalized aggregate over `active`, summed in list order.
// Throws Error(empty_criteria) for an empty list and Error(invalid_value)
// when a weight is missing.
QualityReport overall_quality(std::span<const std::size_t> assignment, const WeightVector& weights,
                              const CriterionContext& context, std::span<const Criterion> active,
                              Normalization normalization = Normalization::criterion_count);
QualityReport overall_quality(const Mapping& mapping, const WeightVector& weights,
                              const CriterionContext& context, std::span<const Criterion> active,
                              Normalization normalization = Normalization::criterion_count);

// Aggregation step alone, for callers that already hold the scores.
double aggregate_scores(std::span<const double> scores, std::span<const double> weights,
                        Normalization normalization);

}  // namespace gesturemap
