#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gesturemap/task_catalog.hpp"

namespace gesturemap {

enum class Modality : std::uint8_t { touch, pen, tangible };

inline constexpr Modality kAllModalities[] = {Modality::touch, Modality::pen, Modality::tangible};

class ModalitySet {
 public:
  constexpr ModalitySet() = default;
  constexpr ModalitySet(std::initializer_list<Modality> modalities) {
    for (Modality m : modalities) insert(m);
  }
  constexpr void insert(Modality m) { bits_ |= bit(m); }
  constexpr bool contains(Modality m) const { return (bits_ & bit(m)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr bool operator==(ModalitySet, ModalitySet) = default;

 private:
  static constexpr std::uint8_t bit(Modality m) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(m));
  }
  std::uint8_t bits_ = 0;
};

// One degree of freedom: an ordered list of symbolic values.
struct Dimension {
  std::string name;
  std::vector<std::string> values;
  ModalitySet modalities;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

enum class RelationKind : std::uint8_t { none, started_on, crossed, ended_on, enclosed };

enum class TargetClass : std::uint8_t { node, edge, label, view_area, tangible_proxy };

// What object or area the gesture started on, crossed, ended on or enclosed.
class ObjectRelation {
 public:
  constexpr ObjectRelation() = default;
  static ObjectRelation none() { return {}; }
  // Throws Error(invalid_value) unless (kind == none) == !target.
  static ObjectRelation make(RelationKind kind, std::optional<TargetClass> target);

  RelationKind kind() const noexcept { return kind_; }
  std::optional<TargetClass> target() const noexcept { return target_; }

  friend bool operator==(const ObjectRelation&, const ObjectRelation&) = default;

 private:
  ObjectRelation(RelationKind kind, std::optional<TargetClass> target)
      : kind_(kind), target_(target) {}

  RelationKind kind_ = RelationKind::none;
  std::optional<TargetClass> target_;
};

// Contact points (fingers, pens or tangibles), hands and users involved.
struct DeviceMultiplicity {
  int points = 1;
  int hands = 1;
  int users = 1;

  bool valid() const noexcept { return points >= 1 && users >= 1 && (hands == 1 || hands == 2) &&
                                       (hands < 2 || points >= 2); }

  friend bool operator==(const DeviceMultiplicity&, const DeviceMultiplicity&) = default;
};

// Predicate over one gesture slot. Besides spec dimensions the reserved names
// "points", "hands", "users" and "object-relation" address the gesture's
// multiplicity and relation kind.
struct ValuePredicate {
  enum class Op { equals, not_equals, any_of, at_least };

  std::string dimension;
  Op op = Op::equals;
  std::vector<std::string> values;  // one entry except for any_of
  int bound = 0;                    // at_least only

  static ValuePredicate equals(std::string dimension, std::string value);
  static ValuePredicate not_equals(std::string dimension, std::string value);
  static ValuePredicate any_of(std::string dimension, std::vector<std::string> values);
  static ValuePredicate at_least(std::string dimension, int bound);

  friend bool operator==(const ValuePredicate&, const ValuePredicate&) = default;
};

// "if condition then consequence"; no condition means the consequence always holds.
// A constraint only applies to gestures that carry every dimension it names.
struct Constraint {
  std::optional<ValuePredicate> condition;
  ValuePredicate consequence;

  std::string describe() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

inline constexpr std::string_view kPointsSlot = "points";
inline constexpr std::string_view kHandsSlot = "hands";
inline constexpr std::string_view kUsersSlot = "users";
inline constexpr std::string_view kRelationSlot = "object-relation";

class VocabularySpec {
 public:
  VocabularySpec() = default;
  // Throws Error(invalid_value) on duplicate names, empty or repeated values,
  // empty modality sets, reserved names, or constraints naming unknown slots.
  VocabularySpec(std::vector<Dimension> dimensions, std::vector<Constraint> constraints);

  const std::vector<Dimension>& dimensions() const noexcept { return dimensions_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  const Dimension* find(std::string_view name) const;
  // Dimensions applicable to `modality`, in declaration order.
  std::vector<const Dimension*> dimensions_for(Modality modality) const;
  // Modalities covered by at least one dimension, in enum order.
  std::vector<Modality> modalities() const;

  friend bool operator==(const VocabularySpec& a, const VocabularySpec& b) {
    return a.dimensions_ == b.dimensions_ && a.constraints_ == b.constraints_;
  }

 private:
  std::vector<Dimension> dimensions_;
  std::vector<Constraint> constraints_;
};

using Assignment = std::vector<std::pair<std::string, std::string>>;

struct Gesture {
  Modality modality = Modality::touch;
  Assignment assignment;  // dimension name -> value, in spec declaration order
  ObjectRelation relation;
  DeviceMultiplicity multiplicity;

  const std::string* value(std::string_view dimension) const;

  friend bool operator==(const Gesture&, const Gesture&) = default;
};

// Stepped, continuous or composite. Any sequence of base gestures (several
// users, or a "sequence" value on any dimension) is composite; otherwise the
// continuity dimension decides, falling back to the intrinsic class of a
// tangible single action, and finally stepped.
InteractionMode mode_class(const Gesture& gesture);

// Canonical text form, e.g.
//   touch(continuity=discrete,duration=short)/started-on:node/1p1h1u
std::string fingerprint(const Gesture& gesture);

// Builds a gesture with the assignment reordered to the spec's declaration
// order. Throws Error(invalid_value) when a dimension is unknown, missing or
// not applicable.
Gesture make_gesture(const VocabularySpec& spec, Modality modality,
                     const std::map<std::string, std::string>& values, ObjectRelation relation,
                     DeviceMultiplicity multiplicity);

// Ordered, duplicate-free set of gestures. Immutable after construction.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws Error(invalid_value) when two gestures are identical.
  explicit Vocabulary(std::vector<Gesture> gestures);

  const std::vector<Gesture>& gestures() const noexcept { return gestures_; }
  std::size_t size() const noexcept { return gestures_.size(); }
  bool empty() const noexcept { return gestures_.empty(); }
  const Gesture& operator[](std::size_t index) const { return gestures_[index]; }
  const std::string& fingerprint(std::size_t index) const { return fingerprints_[index]; }

  auto begin() const noexcept { return gestures_.begin(); }
  auto end() const noexcept { return gestures_.end(); }

  std::optional<std::size_t> find(std::string_view fingerprint) const;
  std::optional<std::size_t> index_of(const Gesture& gesture) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.gestures_ == b.gestures_; }

 private:
  std::vector<Gesture> gestures_;
  std::vector<std::string> fingerprints_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EnumerationResult {
  Vocabulary vocabulary;
  bool empty_warning = false;  // constraints eliminated every tuple
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

// Constraint-filtered Cartesian product of dimension values x object relations
// x multiplicities, per modality in enum order; the first dimension varies
// slowest. Throws Error(guard_exceeded) when the raw product exceeds `limit`.
EnumerationResult enumerate_vocabulary(const VocabularySpec& spec,
                                       const std::vector<ObjectRelation>& relations,
                                       const std::vector<DeviceMultiplicity>& multiplicities,
                                       std::uint64_t limit = kDefaultEnumerationLimit);

struct Violation {
  enum class Kind { coverage, constraint, invariant };
  Kind kind;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_gesture(const Gesture& gesture, const VocabularySpec& spec);

// Normalized mismatch over the slots modality, each dimension both gestures
// carry, object relation, points, hands and users. 0 iff equal.
double gesture_distance(const Gesture& a, const Gesture& b);

// Effort increments: +0.2 per contact point beyond the first (at most two),
// +0.2 bimanual, +0.2 multi-user, +0.2 composite or +0.1 continuous, +0.2 for
// direction-changing (multi-stroke) linearity. Clamped to [0, 1].
double gesture_effort(const Gesture& gesture);

// The vocabulary member that undoes `gesture`: the same gesture with every
// direction-like value flipped (divergent <-> convergent, place <-> lift;
// parallel and flip are self-inverse). Identity when nothing flips.
std::optional<std::size_t> gesture_inverse(const Gesture& gesture, const Vocabulary& vocabulary);

// Builtin degrees of freedom with their baseline constraints.
VocabularySpec builtin_spec(Modality modality);
// Union of the touch/pen and tangible dimension sets.
VocabularySpec builtin_spec_all();

// none plus one relation per kind, each targeting a node.
std::vector<ObjectRelation> default_object_relations();
// points 1..3, hands 1..2, users 1..2 with every user and hand contributing a point.
std::vector<DeviceMultiplicity> default_multiplicities();

// Vocabulary spec document: dimensions, constraints, object_relations,
// multiplicities. Missing relation/multiplicity lists fall back to defaults.
struct SpecDocument {
  VocabularySpec spec;
  std::vector<ObjectRelation> object_relations = default_object_relations();
  std::vector<DeviceMultiplicity> multiplicities = default_multiplicities();
};

SpecDocument load_spec(std::istream& in);
SpecDocument load_spec_file(const std::string& path);
void save_spec(const SpecDocument& document, std::ostream& out);

// Explicit gesture lists: {"gestures": [{modality, assignment, object_relation,
// multiplicity}, ...]}, each validated against `spec`.
Vocabulary load_gestures(std::istream& in, const VocabularySpec& spec);
Vocabulary load_gestures_file(const std::string& path, const VocabularySpec& spec);
void save_gestures(const Vocabulary& vocabulary, std::ostream& out);

std::string_view to_string(Modality modality) noexcept;
std::string_view to_string(RelationKind kind) noexcept;
std::string_view to_string(TargetClass target) noexcept;
std::optional<Modality> parse_modality(std::string_view text);
std::optional<RelationKind> parse_relation_kind(std::string_view text);
std::optional<TargetClass> parse_target_class(std::string_view text);

}  // namespace gesturemap
