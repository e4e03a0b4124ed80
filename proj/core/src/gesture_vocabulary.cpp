#include "gesturemap/gesture_vocabulary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_set>

#include <fmt/format.h>

#include "gesturemap/error.hpp"

namespace gesturemap {

namespace {

constexpr std::array<std::pair<std::string_view, Modality>, 3> kModalityNames{{
    {"touch", Modality::touch},
    {"pen", Modality::pen},
    {"tangible", Modality::tangible},
}};

constexpr std::array<std::pair<std::string_view, RelationKind>, 5> kRelationNames{{
    {"none", RelationKind::none},
    {"started-on", RelationKind::started_on},
    {"crossed", RelationKind::crossed},
    {"ended-on", RelationKind::ended_on},
    {"enclosed", RelationKind::enclosed},
}};

constexpr std::array<std::pair<std::string_view, TargetClass>, 5> kTargetNames{{
    {"node", TargetClass::node},
    {"edge", TargetClass::edge},
    {"label", TargetClass::label},
    {"view-area", TargetClass::view_area},
    {"tangible-proxy", TargetClass::tangible_proxy},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table, Enum value) {
  for (const auto& [name, entry] : table) {
    if (entry == value) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_name(const std::array<std::pair<std::string_view, Enum>, N>& table,
                               std::string_view text) {
  for (const auto& [name, entry] : table) {
    if (name == text) return entry;
  }
  return std::nullopt;
}

constexpr std::string_view kModalitySlot = "modality";

bool is_reserved(std::string_view name) {
  return name == kPointsSlot || name == kHandsSlot || name == kUsersSlot ||
         name == kRelationSlot || name == kModalitySlot;
}

// Value of a dimension or reserved slot; nullopt when the gesture lacks it.
std::optional<std::string> slot_value(const Gesture& gesture, std::string_view slot) {
  if (slot == kPointsSlot) return std::to_string(gesture.multiplicity.points);
  if (slot == kHandsSlot) return std::to_string(gesture.multiplicity.hands);
  if (slot == kUsersSlot) return std::to_string(gesture.multiplicity.users);
  if (slot == kRelationSlot) return std::string(to_string(gesture.relation.kind()));
  if (slot == kModalitySlot) return std::string(to_string(gesture.modality));
  if (const std::string* value = gesture.value(slot)) return *value;
  return std::nullopt;
}

bool holds(const ValuePredicate& predicate, const std::string& value) {
  switch (predicate.op) {
    case ValuePredicate::Op::equals:
      return value == predicate.values.front();
    case ValuePredicate::Op::not_equals:
      return value != predicate.values.front();
    case ValuePredicate::Op::any_of:
      return std::find(predicate.values.begin(), predicate.values.end(), value) !=
             predicate.values.end();
    case ValuePredicate::Op::at_least: {
      int number = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
      return ec == std::errc() && ptr == value.data() + value.size() && number >= predicate.bound;
    }
  }
  return false;
}

// nullopt: the constraint does not apply to this gesture.
std::optional<bool> satisfied(const Constraint& constraint, const Gesture& gesture) {
  auto consequence_value = slot_value(gesture, constraint.consequence.dimension);
  if (!consequence_value) return std::nullopt;
  if (constraint.condition) {
    auto condition_value = slot_value(gesture, constraint.condition->dimension);
    if (!condition_value) return std::nullopt;
    if (!holds(*constraint.condition, *condition_value)) return true;
  }
  return holds(constraint.consequence, *consequence_value);
}

std::string describe(const ValuePredicate& predicate) {
  switch (predicate.op) {
    case ValuePredicate::Op::equals:
      return fmt::format("{}={}", predicate.dimension, predicate.values.front());
    case ValuePredicate::Op::not_equals:
      return fmt::format("{}!={}", predicate.dimension, predicate.values.front());
    case ValuePredicate::Op::any_of:
      return fmt::format("{} in {{{}}}", predicate.dimension, fmt::join(predicate.values, ","));
    case ValuePredicate::Op::at_least:
      return fmt::format("{}>={}", predicate.dimension, predicate.bound);
  }
  return {};
}

}  // namespace

std::string_view to_string(Modality modality) noexcept { return name_of(kModalityNames, modality); }
std::string_view to_string(RelationKind kind) noexcept { return name_of(kRelationNames, kind); }
std::string_view to_string(TargetClass target) noexcept { return name_of(kTargetNames, target); }
std::optional<Modality> parse_modality(std::string_view text) { return parse_name(kModalityNames, text); }
std::optional<RelationKind> parse_relation_kind(std::string_view text) {
  return parse_name(kRelationNames, text);
}
std::optional<TargetClass> parse_target_class(std::string_view text) {
  return parse_name(kTargetNames, text);
}

ObjectRelation ObjectRelation::make(RelationKind kind, std::optional<TargetClass> target) {
  if ((kind == RelationKind::none) == target.has_value()) {
    throw Error(ErrorCode::invalid_value,
                "object relation: a target class is required unless the kind is none");
  }
  return {kind, target};
}

ValuePredicate ValuePredicate::equals(std::string dimension, std::string value) {
  return {std::move(dimension), Op::equals, {std::move(value)}, 0};
}
ValuePredicate ValuePredicate::not_equals(std::string dimension, std::string value) {
  return {std::move(dimension), Op::not_equals, {std::move(value)}, 0};
}
ValuePredicate ValuePredicate::any_of(std::string dimension, std::vector<std::string> values) {
  return {std::move(dimension), Op::any_of, std::move(values), 0};
}
ValuePredicate ValuePredicate::at_least(std::string dimension, int bound) {
  return {std::move(dimension), Op::at_least, {}, bound};
}

std::string Constraint::describe() const {
  if (!condition) return gesturemap::describe(consequence);
  return fmt::format("if {} then {}", gesturemap::describe(*condition),
                     gesturemap::describe(consequence));
}

VocabularySpec::VocabularySpec(std::vector<Dimension> dimensions, std::vector<Constraint> constraints)
    : dimensions_(std::move(dimensions)), constraints_(std::move(constraints)) {
  std::unordered_set<std::string> names;
  for (const Dimension& dimension : dimensions_) {
    if (dimension.name.empty() || is_reserved(dimension.name)) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("dimension name '{}' is empty or reserved", dimension.name));
    }
    if (!names.insert(dimension.name).second) {
      throw Error(ErrorCode::invalid_value, fmt::format("duplicate dimension '{}'", dimension.name));
    }
    if (dimension.values.empty()) {
      throw Error(ErrorCode::invalid_value, fmt::format("dimension '{}' has no values", dimension.name));
    }
    std::unordered_set<std::string> seen;
    for (const std::string& value : dimension.values) {
      if (!seen.insert(value).second) {
        throw Error(ErrorCode::invalid_value,
                    fmt::format("dimension '{}' repeats value '{}'", dimension.name, value));
      }
    }
    if (dimension.modalities.empty()) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("dimension '{}' applies to no modality", dimension.name));
    }
  }
  auto check = [&](const ValuePredicate& predicate) {
    if (!is_reserved(predicate.dimension) && !names.contains(predicate.dimension)) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("constraint names unknown dimension '{}'", predicate.dimension));
    }
    if (predicate.op != ValuePredicate::Op::at_least && predicate.values.empty()) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("constraint on '{}' has no value", predicate.dimension));
    }
  };
  for (const Constraint& constraint : constraints_) {
    if (constraint.condition) check(*constraint.condition);
    check(constraint.consequence);
  }
}

const Dimension* VocabularySpec::find(std::string_view name) const {
  for (const Dimension& dimension : dimensions_) {
    if (dimension.name == name) return &dimension;
  }
  return nullptr;
}

std::vector<const Dimension*> VocabularySpec::dimensions_for(Modality modality) const {
  std::vector<const Dimension*> out;
  for (const Dimension& dimension : dimensions_) {
    if (dimension.modalities.contains(modality)) out.push_back(&dimension);
  }
  return out;
}

std::vector<Modality> VocabularySpec::modalities() const {
  std::vector<Modality> out;
  for (Modality modality : kAllModalities) {
    for (const Dimension& dimension : dimensions_) {
      if (dimension.modalities.contains(modality)) {
        out.push_back(modality);
        break;
      }
    }
  }
  return out;
}

const std::string* Gesture::value(std::string_view dimension) const {
  for (const auto& [name, value] : assignment) {
    if (name == dimension) return &value;
  }
  return nullptr;
}

InteractionMode mode_class(const Gesture& gesture) {
  if (gesture.multiplicity.users > 1) return InteractionMode::composite;
  for (const auto& [name, value] : gesture.assignment) {
    if (value == "sequence") return InteractionMode::composite;
  }
  if (const std::string* continuity = gesture.value("continuity")) {
    return *continuity == "continuous" ? InteractionMode::continuous : InteractionMode::stepped;
  }
  if (const std::string* action = gesture.value("single-action")) {
    if (*action == "translate" || *action == "rotate" || *action == "tilt" || *action == "shake") {
      return InteractionMode::continuous;
    }
  }
  return InteractionMode::stepped;
}

std::string fingerprint(const Gesture& gesture) {
  std::string out(to_string(gesture.modality));
  out += '(';
  bool first = true;
  for (const auto& [name, value] : gesture.assignment) {
    if (!first) out += ',';
    first = false;
    out += name;
    out += '=';
    out += value;
  }
  out += ")/";
  out += to_string(gesture.relation.kind());
  if (auto target = gesture.relation.target()) {
    out += ':';
    out += to_string(*target);
  }
  fmt::format_to(std::back_inserter(out), "/{}p{}h{}u", gesture.multiplicity.points,
                 gesture.multiplicity.hands, gesture.multiplicity.users);
  return out;
}

Gesture make_gesture(const VocabularySpec& spec, Modality modality,
                     const std::map<std::string, std::string>& values, ObjectRelation relation,
                     DeviceMultiplicity multiplicity) {
  Gesture gesture;
  gesture.modality = modality;
  gesture.relation = relation;
  gesture.multiplicity = multiplicity;
  std::size_t used = 0;
  for (const Dimension* dimension : spec.dimensions_for(modality)) {
    auto it = values.find(dimension->name);
    if (it == values.end()) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("gesture lacks {} dimension '{}'", to_string(modality), dimension->name));
    }
    gesture.assignment.emplace_back(it->first, it->second);
    ++used;
  }
  if (used != values.size()) {
    for (const auto& [name, value] : values) {
      const Dimension* dimension = spec.find(name);
      if (!dimension || !dimension->modalities.contains(modality)) {
        throw Error(ErrorCode::invalid_value,
                    fmt::format("dimension '{}' does not apply to {}", name, to_string(modality)));
      }
    }
  }
  return gesture;
}

Vocabulary::Vocabulary(std::vector<Gesture> gestures) : gestures_(std::move(gestures)) {
  fingerprints_.reserve(gestures_.size());
  index_.reserve(gestures_.size());
  for (std::size_t i = 0; i < gestures_.size(); ++i) {
    fingerprints_.push_back(gesturemap::fingerprint(gestures_[i]));
    if (!index_.emplace(fingerprints_.back(), i).second) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("duplicate gesture {}", fingerprints_.back()));
    }
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view fingerprint) const {
  auto it = index_.find(std::string(fingerprint));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Vocabulary::index_of(const Gesture& gesture) const {
  return find(gesturemap::fingerprint(gesture));
}

EnumerationResult enumerate_vocabulary(const VocabularySpec& spec,
                                       const std::vector<ObjectRelation>& relations,
                                       const std::vector<DeviceMultiplicity>& multiplicities,
                                       std::uint64_t limit) {
  for (const DeviceMultiplicity& multiplicity : multiplicities) {
    if (!multiplicity.valid()) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("invalid multiplicity {}p{}h{}u", multiplicity.points,
                              multiplicity.hands, multiplicity.users));
    }
  }

  std::vector<Gesture> gestures;
  std::uint64_t raw_total = 0;
  for (Modality modality : spec.modalities()) {
    const auto dimensions = spec.dimensions_for(modality);
    std::uint64_t raw = relations.size() * multiplicities.size();
    for (const Dimension* dimension : dimensions) {
      raw *= dimension->values.size();
      if (raw > limit) break;
    }
    raw_total += raw;
    if (raw > limit || raw_total > limit) {
      throw Error(ErrorCode::guard_exceeded,
                  fmt::format("vocabulary product exceeds the limit of {} tuples", limit));
    }
    if (raw == 0) continue;

    // Odometer over dimension values; the last dimension turns fastest.
    std::vector<std::size_t> digits(dimensions.size(), 0);
    Gesture gesture;
    gesture.modality = modality;
    gesture.assignment.reserve(dimensions.size());
    for (const Dimension* dimension : dimensions) {
      gesture.assignment.emplace_back(dimension->name, dimension->values.front());
    }
    while (true) {
      for (std::size_t d = 0; d < dimensions.size(); ++d) {
        gesture.assignment[d].second = dimensions[d]->values[digits[d]];
      }
      for (const ObjectRelation& relation : relations) {
        gesture.relation = relation;
        for (const DeviceMultiplicity& multiplicity : multiplicities) {
          gesture.multiplicity = multiplicity;
          bool ok = true;
          for (const Constraint& constraint : spec.constraints()) {
            if (satisfied(constraint, gesture) == false) {
              ok = false;
              break;
            }
          }
          if (ok) gestures.push_back(gesture);
        }
      }
      std::size_t d = dimensions.size();
      bool done = false;
      while (true) {
        if (d == 0) {
          done = true;
          break;
        }
        --d;
        if (++digits[d] < dimensions[d]->values.size()) break;
        digits[d] = 0;
      }
      if (done) break;
    }
  }
  EnumerationResult result{Vocabulary(std::move(gestures)), false};
  result.empty_warning = result.vocabulary.empty();
  return result;
}

std::vector<Violation> validate_gesture(const Gesture& gesture, const VocabularySpec& spec) {
  std::vector<Violation> violations;
  const auto dimensions = spec.dimensions_for(gesture.modality);
  if (dimensions.empty()) {
    violations.push_back({Violation::Kind::coverage,
                          fmt::format("spec has no dimensions for modality {}",
                                      to_string(gesture.modality))});
  }
  for (const Dimension* dimension : dimensions) {
    const std::string* value = gesture.value(dimension->name);
    if (!value) {
      violations.push_back({Violation::Kind::coverage,
                            fmt::format("missing dimension '{}'", dimension->name)});
    } else if (std::find(dimension->values.begin(), dimension->values.end(), *value) ==
               dimension->values.end()) {
      violations.push_back({Violation::Kind::coverage,
                            fmt::format("dimension '{}' has undeclared value '{}'",
                                        dimension->name, *value)});
    }
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& [name, value] : gesture.assignment) {
    const Dimension* dimension = spec.find(name);
    if (!dimension || !dimension->modalities.contains(gesture.modality)) {
      violations.push_back({Violation::Kind::coverage,
                            fmt::format("extraneous dimension '{}'", name)});
    } else if (!seen.insert(name).second) {
      violations.push_back({Violation::Kind::coverage,
                            fmt::format("dimension '{}' assigned twice", name)});
    }
  }
  if (!gesture.multiplicity.valid()) {
    violations.push_back({Violation::Kind::invariant,
                          fmt::format("invalid multiplicity {}p{}h{}u", gesture.multiplicity.points,
                                      gesture.multiplicity.hands, gesture.multiplicity.users)});
  }
  for (const Constraint& constraint : spec.constraints()) {
    if (satisfied(constraint, gesture) == false) {
      violations.push_back({Violation::Kind::constraint, constraint.describe()});
    }
  }
  return violations;
}

double gesture_distance(const Gesture& a, const Gesture& b) {
  int slots = 5;  // modality, relation, points, hands, users
  int mismatches = 0;
  if (a.modality != b.modality) ++mismatches;
  for (const auto& [name, value] : a.assignment) {
    if (const std::string* other = b.value(name)) {
      ++slots;
      if (*other != value) ++mismatches;
    }
  }
  if (a.relation != b.relation) ++mismatches;
  if (a.multiplicity.points != b.multiplicity.points) ++mismatches;
  if (a.multiplicity.hands != b.multiplicity.hands) ++mismatches;
  if (a.multiplicity.users != b.multiplicity.users) ++mismatches;
  return static_cast<double>(mismatches) / slots;
}

double gesture_effort(const Gesture& gesture) {
  double effort = 0.2 * std::clamp(gesture.multiplicity.points - 1, 0, 2);
  if (gesture.multiplicity.hands >= 2) effort += 0.2;
  if (gesture.multiplicity.users >= 2) effort += 0.2;
  switch (mode_class(gesture)) {
    case InteractionMode::composite:
      effort += 0.2;
      break;
    case InteractionMode::continuous:
      effort += 0.1;
      break;
    case InteractionMode::stepped:
      break;
  }
  if (const std::string* linearity = gesture.value("linearity");
      linearity && *linearity == "direction-changes") {
    effort += 0.2;
  }
  return std::clamp(effort, 0.0, 1.0);
}

namespace {

std::optional<std::string_view> inverse_value(std::string_view value) {
  if (value == "divergent") return "convergent";
  if (value == "convergent") return "divergent";
  if (value == "place") return "lift";
  if (value == "lift") return "place";
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> gesture_inverse(const Gesture& gesture, const Vocabulary& vocabulary) {
  Gesture twin = gesture;
  for (auto& [name, value] : twin.assignment) {
    if (auto flipped = inverse_value(value)) value = std::string(*flipped);
  }
  return vocabulary.index_of(twin);
}

// ---------------------------------------------------------------------------
// Builtin degrees of freedom

namespace {

std::vector<Dimension> touch_pen_dimensions(ModalitySet modalities) {
  return {
      {"continuity", {"discrete", "continuous"}, modalities},
      {"duration", {"short", "long"}, modalities},
      {"nature-of-motion", {"symbolic-physical", "metaphorical-abstract"}, modalities},
      {"linearity", {"none", "straight", "direction-changes"}, modalities},
      {"relation-of-movement", {"none", "parallel", "divergent", "convergent"}, modalities},
  };
}

std::vector<Dimension> tangible_dimensions(ModalitySet modalities) {
  return {
      {"form", {"thin-bendable", "thick-rigid"}, modalities},
      {"material", {"wood", "plastic", "acrylic"}, modalities},
      {"role", {"function", "parameter", "data"}, modalities},
      {"single-action", {"place", "lift", "translate", "rotate", "tilt", "flip", "shake"}, modalities},
      {"tangible-type", {"none", "same-type", "different-type"}, modalities},
      {"tangible-relation", {"none", "decoupled", "coupled"}, modalities},
  };
}

Dimension composition_dimension(ModalitySet modalities) {
  return {"composition", {"single", "sequence"}, modalities};
}

std::vector<Constraint> touch_pen_constraints() {
  using P = ValuePredicate;
  return {
      {P::equals("continuity", "discrete"), P::equals("linearity", "none")},
      {P::equals("continuity", "continuous"), P::not_equals("linearity", "none")},
      {P::equals(std::string(kPointsSlot), "1"), P::equals("relation-of-movement", "none")},
      {P::at_least(std::string(kPointsSlot), 2), P::not_equals("relation-of-movement", "none")},
  };
}

std::vector<Constraint> pen_constraints() {
  using P = ValuePredicate;
  return {{P::equals(std::string(kModalitySlot), "pen"), P::equals(std::string(kPointsSlot), "1")}};
}

std::vector<Constraint> tangible_constraints() {
  using P = ValuePredicate;
  const std::string points(kPointsSlot);
  return {
      {P::equals(points, "1"), P::equals("tangible-type", "none")},
      {P::equals(points, "1"), P::equals("tangible-relation", "none")},
      {P::at_least(points, 2), P::not_equals("tangible-type", "none")},
      {P::at_least(points, 2), P::not_equals("tangible-relation", "none")},
  };
}

template <typename T>
void extend(std::vector<T>& out, std::vector<T> more) {
  for (T& item : more) out.push_back(std::move(item));
}

}  // namespace

VocabularySpec builtin_spec(Modality modality) {
  const ModalitySet only{modality};
  std::vector<Dimension> dimensions;
  std::vector<Constraint> constraints;
  if (modality == Modality::tangible) {
    dimensions = tangible_dimensions(only);
    constraints = tangible_constraints();
  } else {
    dimensions = touch_pen_dimensions(only);
    constraints = touch_pen_constraints();
    if (modality == Modality::pen) extend(constraints, pen_constraints());
  }
  dimensions.push_back(composition_dimension(only));
  return VocabularySpec(std::move(dimensions), std::move(constraints));
}

VocabularySpec builtin_spec_all() {
  auto dimensions = touch_pen_dimensions({Modality::touch, Modality::pen});
  extend(dimensions, tangible_dimensions({Modality::tangible}));
  dimensions.push_back(
      composition_dimension({Modality::touch, Modality::pen, Modality::tangible}));
  auto constraints = touch_pen_constraints();
  extend(constraints, pen_constraints());
  extend(constraints, tangible_constraints());
  return VocabularySpec(std::move(dimensions), std::move(constraints));
}

std::vector<ObjectRelation> default_object_relations() {
  return {
      ObjectRelation::none(),
      ObjectRelation::make(RelationKind::started_on, TargetClass::node),
      ObjectRelation::make(RelationKind::crossed, TargetClass::node),
      ObjectRelation::make(RelationKind::ended_on, TargetClass::node),
      ObjectRelation::make(RelationKind::enclosed, TargetClass::node),
  };
}

std::vector<DeviceMultiplicity> default_multiplicities() {
  std::vector<DeviceMultiplicity> out;
  for (int points = 1; points <= 3; ++points) {
    for (int hands = 1; hands <= 2; ++hands) {
      for (int users = 1; users <= 2; ++users) {
        if (hands <= points && users <= points) out.push_back({points, hands, users});
      }
    }
  }
  return out;
}

}  // namespace gesturemap
