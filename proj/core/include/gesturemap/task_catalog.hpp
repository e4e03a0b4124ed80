#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gesturemap {

enum class Activity { exploration, editing };

enum class ActivitySelection { exploration, editing, both };

// Union of the exploration and editing categories.
// Select is shared by both activities.
enum class CategoryName {
  select,
  explore,
  reconfigure,
  encode,
  abstract_elaborate,
  filter,
  connect,
  create,
  insert,
  remove,  // "delete"
  update,
  navigate,
  miscellaneous,
};

enum class Frequency { always, mostly, varying_all };

enum class InteractionMode { stepped, continuous, composite };

// How a task is most often performed in existing systems, e.g. "mostly continuous".
// varying_all carries no preferred mode.
class InteractionModeTag {
 public:
  static InteractionModeTag always(InteractionMode mode) { return {Frequency::always, mode}; }
  static InteractionModeTag mostly(InteractionMode mode) { return {Frequency::mostly, mode}; }
  static InteractionModeTag varying() { return {Frequency::varying_all, std::nullopt}; }

  // Throws Error(invalid_value) when the varying_all <=> no-mode rule is broken.
  static InteractionModeTag make(Frequency frequency, std::optional<InteractionMode> mode);

  Frequency frequency() const noexcept { return frequency_; }
  std::optional<InteractionMode> mode() const noexcept { return mode_; }

  friend bool operator==(const InteractionModeTag&, const InteractionModeTag&) = default;

 private:
  InteractionModeTag(Frequency frequency, std::optional<InteractionMode> mode)
      : frequency_(frequency), mode_(mode) {}

  Frequency frequency_;
  std::optional<InteractionMode> mode_;
};

struct TaskCategory {
  Activity activity = Activity::exploration;
  CategoryName name = CategoryName::select;

  friend bool operator==(const TaskCategory&, const TaskCategory&) = default;
};

// True when `name` is one of the seven categories of `activity`.
bool category_belongs_to(CategoryName name, Activity activity) noexcept;

enum class ObjectKind : std::uint8_t {
  node,
  edge,
  subgraph,
  label,
  attribute,
  group,
  view,
  document,
};

inline constexpr int kObjectKindCount = 8;

// Small bit set over ObjectKind.
class ObjectScope {
 public:
  constexpr ObjectScope() = default;
  constexpr ObjectScope(std::initializer_list<ObjectKind> kinds) {
    for (ObjectKind kind : kinds) insert(kind);
  }

  constexpr void insert(ObjectKind kind) { bits_ |= bit(kind); }
  constexpr bool contains(ObjectKind kind) const { return (bits_ & bit(kind)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  int size() const;

  std::vector<ObjectKind> kinds() const;

  ObjectScope intersect(ObjectScope other) const { return from_bits(bits_ & other.bits_); }
  ObjectScope unite(ObjectScope other) const { return from_bits(bits_ | other.bits_); }

  friend constexpr bool operator==(ObjectScope, ObjectScope) = default;

 private:
  static constexpr std::uint8_t bit(ObjectKind kind) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(kind));
  }
  static ObjectScope from_bits(std::uint8_t bits) {
    ObjectScope scope;
    scope.bits_ = bits;
    return scope;
  }

  std::uint8_t bits_ = 0;
};

struct Task {
  std::string id;
  std::string name;
  TaskCategory category;
  InteractionModeTag mode_tag = InteractionModeTag::varying();
  ObjectScope object_scope;
  bool mutating = false;
  double frequency_weight = 1.0;

  friend bool operator==(const Task&, const Task&) = default;
};

// Ordered, duplicate-free collection of tasks. Immutable after construction.
class TaskCatalog {
 public:
  TaskCatalog() = default;
  // Throws Error(duplicate_id) or Error(invalid_value) on invariant violations.
  explicit TaskCatalog(std::vector<Task> tasks);

  const std::vector<Task>& tasks() const noexcept { return tasks_; }
  std::size_t size() const noexcept { return tasks_.size(); }
  bool empty() const noexcept { return tasks_.empty(); }
  const Task& operator[](std::size_t index) const { return tasks_[index]; }

  auto begin() const noexcept { return tasks_.begin(); }
  auto end() const noexcept { return tasks_.end(); }

  const Task* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const TaskCatalog& a, const TaskCatalog& b) { return a.tasks_ == b.tasks_; }

 private:
  std::vector<Task> tasks_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Declarative predicate. Unset fields match everything; set fields are ANDed.
struct TaskFilter {
  std::optional<Activity> activity;
  std::vector<CategoryName> categories;      // any of
  std::vector<InteractionMode> modes;        // any of; varying_all tags never match
  std::optional<bool> varying_mode;          // match on frequency == varying_all
  ObjectScope object_scope;                  // overlaps when non-empty
  std::optional<bool> mutating;

  bool matches(const Task& task) const;
};

// The basic tasks for graph exploration and/or editing. Deterministic.
// In the combined catalog the editing entries whose id collides with an
// exploration id are prefixed with "edit-".
TaskCatalog builtin_catalog(ActivitySelection selection);

TaskCatalog filter_tasks(const TaskCatalog& catalog, const TaskFilter& filter);

// Mean agreement over five features: activity, category name, object scope
// (Jaccard overlap), mutating flag and mode class. Symmetric, in [0, 1].
double task_similarity(const Task& a, const Task& b);

// Catalog documents (JSON). load_catalog throws Error with codes parse,
// duplicate_id, unknown_category or invalid_value; messages carry the locus.
TaskCatalog load_catalog(std::istream& in);
TaskCatalog load_catalog_file(const std::string& path);
void save_catalog(const TaskCatalog& catalog, std::ostream& out);

std::string_view to_string(Activity activity) noexcept;
std::string_view to_string(CategoryName name) noexcept;
std::string_view to_string(Frequency frequency) noexcept;
std::string_view to_string(InteractionMode mode) noexcept;
std::string_view to_string(ObjectKind kind) noexcept;

std::optional<Activity> parse_activity(std::string_view text);
std::optional<ActivitySelection> parse_activity_selection(std::string_view text);
std::optional<CategoryName> parse_category(std::string_view text);
std::optional<Frequency> parse_frequency(std::string_view text);
std::optional<InteractionMode> parse_mode(std::string_view text);
std::optional<ObjectKind> parse_object_kind(std::string_view text);

}  // namespace gesturemap
