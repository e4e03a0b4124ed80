#include "gesturemap/criteria.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "criteria_detail.hpp"
#include "gesturemap/error.hpp"

namespace gesturemap {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<std::string_view, CriterionKind>, 8> kCriterionNames{{
    {"predictability", CriterionKind::predictability},
    {"consistency", CriterionKind::consistency},
    {"familiarity", CriterionKind::familiarity},
    {"generalizability", CriterionKind::generalizability},
    {"viscosity", CriterionKind::viscosity},
    {"recoverability", CriterionKind::recoverability},
    {"directness", CriterionKind::directness},
    {"continuity", CriterionKind::continuity},
}};

}  // namespace

std::string_view to_string(CriterionKind kind) noexcept {
  for (const auto& [name, entry] : kCriterionNames) {
    if (entry == kind) return name;
  }
  return "custom";
}

std::optional<CriterionKind> parse_criterion_kind(std::string_view text) {
  for (const auto& [name, entry] : kCriterionNames) {
    if (name == text) return entry;
  }
  return std::nullopt;
}

std::string_view to_string(Normalization normalization) noexcept {
  return normalization == Normalization::criterion_count ? "criterion-count" : "weight-sum";
}

// ---------------------------------------------------------------------------
// Familiarity table

void FamiliarityTable::set(std::string task_id, std::string gesture_fingerprint, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorCode::invalid_value,
                fmt::format("familiarity of ({}, {}) must be in [0, 1], got {}", task_id,
                            gesture_fingerprint, score));
  }
  scores_[{std::move(task_id), std::move(gesture_fingerprint)}] = score;
}

double FamiliarityTable::lookup(std::string_view task_id, std::string_view gesture_fingerprint) const {
  auto it = scores_.find({std::string(task_id), std::string(gesture_fingerprint)});
  return it == scores_.end() ? kDefaultScore : it->second;
}

FamiliarityTable load_familiarity(std::istream& in) {
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, fmt::format("familiarity table: {}", e.what()));
  }
  const json* list = &document;
  if (document.is_object()) {
    auto it = document.find("familiarity");
    if (it == document.end()) throw Error(ErrorCode::parse, "familiarity table: missing field 'familiarity'");
    list = &*it;
  }
  if (!list->is_array()) throw Error(ErrorCode::parse, "familiarity table: expected a list");
  FamiliarityTable table;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const json& entry = (*list)[i];
    if (!entry.is_object() || !entry.contains("task") || !entry["task"].is_string() ||
        !entry.contains("gesture_fingerprint") || !entry["gesture_fingerprint"].is_string() ||
        !entry.contains("score") || !entry["score"].is_number()) {
      throw Error(ErrorCode::parse,
                  fmt::format("familiarity[{}]: expected {{task, gesture_fingerprint, score}}", i));
    }
    try {
      table.set(entry["task"].get<std::string>(), entry["gesture_fingerprint"].get<std::string>(),
                entry["score"].get<double>());
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, fmt::format("familiarity[{}].score: {}", i, e.what()));
    }
  }
  return table;
}

FamiliarityTable load_familiarity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open familiarity file '{}'", path));
  try {
    return load_familiarity(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_familiarity(const FamiliarityTable& table, std::ostream& out) {
  json list = json::array();
  for (const auto& [key, score] : table.entries()) {
    list.push_back({{"task", key.first}, {"gesture_fingerprint", key.second}, {"score", score}});
  }
  out << json{{"familiarity", list}}.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Context

struct CriterionContext::Lazy {
  std::once_flag distance_once;
  double max_distance = 0.0;
  std::once_flag inverse_once;
  std::vector<char> has_inverse;
};

bool is_direct_candidate(const Task& task) {
  static constexpr ObjectScope kObjects{ObjectKind::node, ObjectKind::edge, ObjectKind::subgraph,
                                        ObjectKind::label};
  return !task.object_scope.intersect(kObjects).empty();
}

bool mode_compatible(const InteractionModeTag& tag, InteractionMode gesture_mode) {
  if (tag.frequency() == Frequency::varying_all) return true;
  return tag.mode() == gesture_mode;
}

CriterionContext::CriterionContext(TaskCatalog catalog, Vocabulary vocabulary, FamiliarityTable familiarity)
    : catalog_(std::make_shared<const TaskCatalog>(std::move(catalog))),
      vocabulary_(std::make_shared<const Vocabulary>(std::move(vocabulary))),
      familiarity_(std::make_shared<const FamiliarityTable>(std::move(familiarity))),
      lazy_(std::make_shared<Lazy>()) {
  for (const Task& task : *catalog_) {
    total_frequency_ += task.frequency_weight;
    if (task.mutating) ++mutating_count_;
    if (is_direct_candidate(task)) ++direct_candidate_count_;
  }
}

double CriterionContext::familiarity(std::size_t task, std::size_t gesture) const {
  return familiarity_->lookup((*catalog_)[task].id, vocabulary_->fingerprint(gesture));
}

double CriterionContext::max_pairwise_distance() const {
  std::call_once(lazy_->distance_once, [this] {
    const auto& gestures = vocabulary_->gestures();
    double best = 0.0;
    for (std::size_t i = 0; i < gestures.size() && best < 1.0; ++i) {
      for (std::size_t j = i + 1; j < gestures.size(); ++j) {
        best = std::max(best, gesture_distance(gestures[i], gestures[j]));
      }
    }
    lazy_->max_distance = best;
  });
  return lazy_->max_distance;
}

bool CriterionContext::has_inverse(std::size_t gesture) const {
  std::call_once(lazy_->inverse_once, [this] {
    lazy_->has_inverse.resize(vocabulary_->size());
    for (std::size_t i = 0; i < vocabulary_->size(); ++i) {
      lazy_->has_inverse[i] = gesture_inverse((*vocabulary_)[i], *vocabulary_).has_value();
    }
  });
  return lazy_->has_inverse[gesture] != 0;
}

// ---------------------------------------------------------------------------
// Criteria

Criterion Criterion::builtin(CriterionKind kind) {
  if (kind == CriterionKind::custom) {
    throw Error(ErrorCode::invalid_value, "custom criteria need a name and a scoring handle");
  }
  return Criterion(kind, std::string(to_string(kind)));
}

Criterion Criterion::custom(std::string name, MappingScoreFn score) {
  Criterion criterion(CriterionKind::custom, std::move(name));
  criterion.score_ = std::move(score);
  return criterion;
}

Criterion Criterion::custom_separable(std::string name, PairTermFn term) {
  Criterion criterion(CriterionKind::custom, std::move(name));
  criterion.term_ = std::move(term);
  return criterion;
}

Criterion Criterion::custom_unbound(std::string name) {
  return Criterion(CriterionKind::custom, std::move(name));
}

bool Criterion::separable() const noexcept {
  switch (kind_) {
    case CriterionKind::familiarity:
    case CriterionKind::directness:
    case CriterionKind::continuity:
    case CriterionKind::recoverability:
    case CriterionKind::viscosity:
      return true;
    case CriterionKind::predictability:
    case CriterionKind::consistency:
    case CriterionKind::generalizability:
      return false;
    case CriterionKind::custom:
      return static_cast<bool>(term_);
  }
  return false;
}

std::vector<Criterion> builtin_criteria() {
  std::vector<Criterion> out;
  for (const auto& [name, kind] : kCriterionNames) out.push_back(Criterion::builtin(kind));
  return out;
}

namespace detail {

namespace {

double predictability(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (assignment.size() < 2) return 1.0;
  const Vocabulary& vocabulary = context.vocabulary();
  double closest = 1.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    for (std::size_t j = i + 1; j < assignment.size(); ++j) {
      closest = std::min(closest, gesture_distance(vocabulary[assignment[i]], vocabulary[assignment[j]]));
    }
  }
  const double widest = context.max_pairwise_distance();
  if (widest <= 0.0) return 1.0;
  return std::min(1.0, closest / widest);
}

int sign(double value) { return (value > 0.0) - (value < 0.0); }

// Kendall tau-a between task similarity and gesture affinity over all task
// pairs, mapped to [0, 1]. Tied pairs count as neither concordant nor discordant.
double consistency(std::span<const std::size_t> assignment, const CriterionContext& context) {
  const TaskCatalog& catalog = context.catalog();
  const Vocabulary& vocabulary = context.vocabulary();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(assignment.size() * (assignment.size() - (assignment.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    for (std::size_t j = i + 1; j < assignment.size(); ++j) {
      pairs.emplace_back(task_similarity(catalog[i], catalog[j]),
                         1.0 - gesture_distance(vocabulary[assignment[i]], vocabulary[assignment[j]]));
    }
  }
  if (pairs.size() < 2) return 1.0;
  long long balance = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      balance += sign(pairs[p].first - pairs[q].first) * sign(pairs[p].second - pairs[q].second);
    }
  }
  const double comparisons = static_cast<double>(pairs.size()) * (pairs.size() - 1) / 2.0;
  const double tau = static_cast<double>(balance) / comparisons;
  return std::clamp((tau + 1.0) / 2.0, 0.0, 1.0);
}

double familiarity(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (assignment.empty()) return 1.0;
  double total = 0.0;
  for (std::size_t t = 0; t < assignment.size(); ++t) total += context.familiarity(t, assignment[t]);
  return total / assignment.size();
}

double generalizability(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (assignment.empty()) return 1.0;
  std::unordered_set<std::string> shapes;
  for (std::size_t g : assignment) {
    const Gesture& gesture = context.vocabulary()[g];
    std::string shape;
    for (const char* dimension : {"continuity", "nature-of-motion", "linearity"}) {
      if (const std::string* value = gesture.value(dimension)) shape += *value;
      shape += '|';
    }
    shapes.insert(std::move(shape));
  }
  return 1.0 - static_cast<double>(shapes.size()) / assignment.size();
}

double viscosity(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (context.total_frequency() <= 0.0) return 1.0;
  double weighted = 0.0;
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    weighted += context.catalog()[t].frequency_weight * gesture_effort(context.vocabulary()[assignment[t]]);
  }
  return std::clamp(1.0 - weighted / context.total_frequency(), 0.0, 1.0);
}

double recoverability(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (context.mutating_count() == 0) return 1.0;
  std::size_t undoable = 0;
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    if (context.catalog()[t].mutating && context.has_inverse(assignment[t])) ++undoable;
  }
  return static_cast<double>(undoable) / context.mutating_count();
}

double directness(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (context.direct_candidate_count() == 0) return 1.0;
  std::size_t direct = 0;
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    if (is_direct_candidate(context.catalog()[t]) &&
        context.vocabulary()[assignment[t]].relation.kind() != RelationKind::none) {
      ++direct;
    }
  }
  return static_cast<double>(direct) / context.direct_candidate_count();
}

double continuity(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (assignment.empty()) return 1.0;
  std::size_t compatible = 0;
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    if (mode_compatible(context.catalog()[t].mode_tag, mode_class(context.vocabulary()[assignment[t]]))) {
      ++compatible;
    }
  }
  return static_cast<double>(compatible) / assignment.size();
}

double checked_custom(double value, const Criterion& criterion) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::invalid_value,
                fmt::format("criterion '{}' scored {} outside [0, 1]", criterion.name(), value));
  }
  return value;
}

}  // namespace

double score_unchecked(std::span<const std::size_t> assignment, const Criterion& criterion,
                       const CriterionContext& context) {
  switch (criterion.kind()) {
    case CriterionKind::predictability:
      return predictability(assignment, context);
    case CriterionKind::consistency:
      return consistency(assignment, context);
    case CriterionKind::familiarity:
      return familiarity(assignment, context);
    case CriterionKind::generalizability:
      return generalizability(assignment, context);
    case CriterionKind::viscosity:
      return viscosity(assignment, context);
    case CriterionKind::recoverability:
      return recoverability(assignment, context);
    case CriterionKind::directness:
      return directness(assignment, context);
    case CriterionKind::continuity:
      return continuity(assignment, context);
    case CriterionKind::custom:
      if (criterion.score_fn()) return checked_custom(criterion.score_fn()(assignment, context), criterion);
      if (criterion.term_fn()) {
        if (assignment.empty()) return 1.0;
        double total = 0.0;
        for (std::size_t t = 0; t < assignment.size(); ++t) {
          total += criterion.term_fn()(t, assignment[t], context);
        }
        return checked_custom(total / assignment.size(), criterion);
      }
      throw Error(ErrorCode::missing_context,
                  fmt::format("custom criterion '{}' has no scoring handle", criterion.name()));
  }
  return 0.0;
}

void check_assignment(std::span<const std::size_t> assignment, const CriterionContext& context) {
  if (assignment.size() != context.catalog().size()) {
    throw Error(ErrorCode::invalid_mapping,
                fmt::format("mapping covers {} of {} tasks", assignment.size(), context.catalog().size()));
  }
  std::vector<char> used(context.vocabulary().size(), 0);
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    const std::size_t g = assignment[t];
    if (g >= used.size()) {
      throw Error(ErrorCode::invalid_mapping,
                  fmt::format("task '{}' references gesture #{} outside the vocabulary",
                              context.catalog()[t].id, g));
    }
    if (used[g]) {
      throw Error(ErrorCode::invalid_mapping,
                  fmt::format("gesture {} is used twice", context.vocabulary().fingerprint(g)));
    }
    used[g] = 1;
  }
}

}  // namespace detail

double score_criterion(std::span<const std::size_t> assignment, const Criterion& criterion,
                       const CriterionContext& context) {
  detail::check_assignment(assignment, context);
  return detail::score_unchecked(assignment, criterion, context);
}

double score_criterion(const Mapping& mapping, const Criterion& criterion,
                       const CriterionContext& context) {
  const auto assignment = to_assignment(mapping, context.catalog(), context.vocabulary());
  return detail::score_unchecked(assignment, criterion, context);
}

double pair_term(const Criterion& criterion, std::size_t task, std::size_t gesture,
                 const CriterionContext& context) {
  const TaskCatalog& catalog = context.catalog();
  const Task& t = catalog[task];
  const Gesture& g = context.vocabulary()[gesture];
  const double k = static_cast<double>(catalog.size());
  switch (criterion.kind()) {
    case CriterionKind::familiarity:
      return context.familiarity(task, gesture);
    case CriterionKind::continuity:
      return mode_compatible(t.mode_tag, mode_class(g)) ? 1.0 : 0.0;
    case CriterionKind::viscosity:
      if (context.total_frequency() <= 0.0) return 1.0;
      return 1.0 - k * t.frequency_weight * gesture_effort(g) / context.total_frequency();
    case CriterionKind::recoverability:
      if (context.mutating_count() == 0) return 1.0;
      if (!t.mutating || !context.has_inverse(gesture)) return 0.0;
      return k / static_cast<double>(context.mutating_count());
    case CriterionKind::directness:
      if (context.direct_candidate_count() == 0) return 1.0;
      if (!is_direct_candidate(t) || g.relation.kind() == RelationKind::none) return 0.0;
      return k / static_cast<double>(context.direct_candidate_count());
    case CriterionKind::custom:
      if (criterion.term_fn()) return criterion.term_fn()(task, gesture, context);
      [[fallthrough]];
    case CriterionKind::predictability:
    case CriterionKind::consistency:
    case CriterionKind::generalizability:
      break;
  }
  throw Error(ErrorCode::non_separable,
              fmt::format("criterion '{}' is not separable", criterion.name()));
}

// ---------------------------------------------------------------------------
// Weights and aggregation

WeightVector WeightVector::uniform(std::span<const Criterion> criteria, double alpha) {
  WeightVector weights;
  for (const Criterion& criterion : criteria) weights.set(criterion.name(), alpha);
  return weights;
}

void WeightVector::set(std::string criterion, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_value,
                fmt::format("weight of '{}' must be in [0, 1], got {}", criterion, alpha));
  }
  weights_[std::move(criterion)] = alpha;
}

std::optional<double> WeightVector::find(std::string_view criterion) const {
  auto it = weights_.find(criterion);
  if (it == weights_.end()) return std::nullopt;
  return it->second;
}

WeightVector load_weights(std::istream& in) {
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, fmt::format("weights: {}", e.what()));
  }
  if (!document.is_object() || !document.contains("weights") || !document["weights"].is_object()) {
    throw Error(ErrorCode::parse, "weights: expected an object field 'weights'");
  }
  WeightVector weights;
  for (const auto& [name, value] : document["weights"].items()) {
    if (!value.is_number()) throw Error(ErrorCode::parse, fmt::format("weights.{}: expected a number", name));
    try {
      weights.set(name, value.get<double>());
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, fmt::format("weights.{}: {}", name, e.what()));
    }
  }
  return weights;
}

WeightVector load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open weights file '{}'", path));
  try {
    return load_weights(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

double aggregate_scores(std::span<const double> scores, std::span<const double> weights,
                        Normalization normalization) {
  if (scores.empty()) throw Error(ErrorCode::empty_criteria, "no active criteria");
  double weighted = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weighted += weights[i] * scores[i];
    weight_total += weights[i];
  }
  if (normalization == Normalization::weight_sum) {
    return weight_total > 0.0 ? weighted / weight_total : 0.0;
  }
  return weighted / static_cast<double>(scores.size());
}

namespace detail {

std::vector<double> resolve_weights(const WeightVector& weights, std::span<const Criterion> active) {
  if (active.empty()) throw Error(ErrorCode::empty_criteria, "no active criteria");
  std::vector<double> out;
  out.reserve(active.size());
  for (const Criterion& criterion : active) {
    auto alpha = weights.find(criterion.name());
    if (!alpha) {
      throw Error(ErrorCode::invalid_value, fmt::format("no weight for criterion '{}'", criterion.name()));
    }
    out.push_back(*alpha);
  }
  return out;
}

}  // namespace detail

QualityReport overall_quality(std::span<const std::size_t> assignment, const WeightVector& weights,
                              const CriterionContext& context, std::span<const Criterion> active,
                              Normalization normalization) {
  const auto alphas = detail::resolve_weights(weights, active);
  detail::check_assignment(assignment, context);
  QualityReport report;
  report.n = active.size();
  report.normalization = normalization;
  std::vector<double> scores;
  scores.reserve(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    scores.push_back(detail::score_unchecked(assignment, active[i], context));
    report.per_criterion.push_back({active[i].name(), scores.back(), alphas[i]});
  }
  report.aggregate = aggregate_scores(scores, alphas, normalization);
  return report;
}

QualityReport overall_quality(const Mapping& mapping, const WeightVector& weights,
                              const CriterionContext& context, std::span<const Criterion> active,
                              Normalization normalization) {
  const auto assignment = to_assignment(mapping, context.catalog(), context.vocabulary());
  return overall_quality(assignment, weights, context, active, normalization);
}

}  // namespace gesturemap
