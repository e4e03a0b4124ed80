#include "gesturemap/task_catalog.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gesturemap/error.hpp"

namespace gesturemap {

namespace {

using json = nlohmann::json;

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view text) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Activity>, 2> kActivities{{
    {"exploration", Activity::exploration},
    {"editing", Activity::editing},
}};

constexpr std::array<std::pair<std::string_view, CategoryName>, 13> kCategories{{
    {"select", CategoryName::select},
    {"explore", CategoryName::explore},
    {"reconfigure", CategoryName::reconfigure},
    {"encode", CategoryName::encode},
    {"abstract-elaborate", CategoryName::abstract_elaborate},
    {"filter", CategoryName::filter},
    {"connect", CategoryName::connect},
    {"create", CategoryName::create},
    {"insert", CategoryName::insert},
    {"delete", CategoryName::remove},
    {"update", CategoryName::update},
    {"navigate", CategoryName::navigate},
    {"miscellaneous", CategoryName::miscellaneous},
}};

constexpr std::array<std::pair<std::string_view, Frequency>, 3> kFrequencies{{
    {"always", Frequency::always},
    {"mostly", Frequency::mostly},
    {"varying-all", Frequency::varying_all},
}};

constexpr std::array<std::pair<std::string_view, InteractionMode>, 3> kModes{{
    {"stepped", InteractionMode::stepped},
    {"continuous", InteractionMode::continuous},
    {"composite", InteractionMode::composite},
}};

constexpr std::array<std::pair<std::string_view, ObjectKind>, kObjectKindCount> kObjectKinds{{
    {"node", ObjectKind::node},
    {"edge", ObjectKind::edge},
    {"subgraph", ObjectKind::subgraph},
    {"label", ObjectKind::label},
    {"attribute", ObjectKind::attribute},
    {"group", ObjectKind::group},
    {"view", ObjectKind::view},
    {"document", ObjectKind::document},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table, Enum value) {
  for (const auto& [name, entry] : table) {
    if (entry == value) return name;
  }
  return "?";
}

}  // namespace

std::string_view to_string(Activity activity) noexcept { return name_of(kActivities, activity); }
std::string_view to_string(CategoryName name) noexcept { return name_of(kCategories, name); }
std::string_view to_string(Frequency frequency) noexcept { return name_of(kFrequencies, frequency); }
std::string_view to_string(InteractionMode mode) noexcept { return name_of(kModes, mode); }
std::string_view to_string(ObjectKind kind) noexcept { return name_of(kObjectKinds, kind); }

std::optional<Activity> parse_activity(std::string_view text) { return lookup(kActivities, text); }
std::optional<CategoryName> parse_category(std::string_view text) { return lookup(kCategories, text); }
std::optional<Frequency> parse_frequency(std::string_view text) { return lookup(kFrequencies, text); }
std::optional<InteractionMode> parse_mode(std::string_view text) { return lookup(kModes, text); }
std::optional<ObjectKind> parse_object_kind(std::string_view text) { return lookup(kObjectKinds, text); }

std::optional<ActivitySelection> parse_activity_selection(std::string_view text) {
  if (text == "exploration") return ActivitySelection::exploration;
  if (text == "editing") return ActivitySelection::editing;
  if (text == "both") return ActivitySelection::both;
  return std::nullopt;
}

InteractionModeTag InteractionModeTag::make(Frequency frequency, std::optional<InteractionMode> mode) {
  if ((frequency == Frequency::varying_all) == mode.has_value()) {
    throw Error(ErrorCode::invalid_value,
                "interaction mode tag: a mode is required unless the frequency is varying-all");
  }
  return {frequency, mode};
}

bool category_belongs_to(CategoryName name, Activity activity) noexcept {
  switch (name) {
    case CategoryName::select:
      return true;
    case CategoryName::explore:
    case CategoryName::reconfigure:
    case CategoryName::encode:
    case CategoryName::abstract_elaborate:
    case CategoryName::filter:
    case CategoryName::connect:
      return activity == Activity::exploration;
    case CategoryName::create:
    case CategoryName::insert:
    case CategoryName::remove:
    case CategoryName::update:
    case CategoryName::navigate:
    case CategoryName::miscellaneous:
      return activity == Activity::editing;
  }
  return false;
}

int ObjectScope::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

std::vector<ObjectKind> ObjectScope::kinds() const {
  std::vector<ObjectKind> out;
  for (const auto& [name, kind] : kObjectKinds) {
    if (contains(kind)) out.push_back(kind);
  }
  return out;
}

TaskCatalog::TaskCatalog(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
  index_.reserve(tasks_.size());
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const Task& task = tasks_[i];
    if (task.id.empty()) {
      throw Error(ErrorCode::invalid_value, fmt::format("tasks[{}]: empty id", i));
    }
    if (task.object_scope.empty()) {
      throw Error(ErrorCode::invalid_value, fmt::format("task '{}': empty object scope", task.id));
    }
    if (!(task.frequency_weight >= 0.0)) {
      throw Error(ErrorCode::invalid_value,
                  fmt::format("task '{}': frequency_weight must be >= 0", task.id));
    }
    if (!category_belongs_to(task.category.name, task.category.activity)) {
      throw Error(ErrorCode::unknown_category,
                  fmt::format("task '{}': '{}' is not an {} category", task.id,
                              to_string(task.category.name), to_string(task.category.activity)));
    }
    if (!index_.emplace(task.id, i).second) {
      throw Error(ErrorCode::duplicate_id, fmt::format("duplicate task id '{}'", task.id));
    }
  }
}

const Task* TaskCatalog::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &tasks_[it->second];
}

std::optional<std::size_t> TaskCatalog::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool TaskFilter::matches(const Task& task) const {
  if (activity && task.category.activity != *activity) return false;
  if (!categories.empty() &&
      std::find(categories.begin(), categories.end(), task.category.name) == categories.end()) {
    return false;
  }
  if (!modes.empty()) {
    auto mode = task.mode_tag.mode();
    if (!mode || std::find(modes.begin(), modes.end(), *mode) == modes.end()) return false;
  }
  if (varying_mode && (task.mode_tag.frequency() == Frequency::varying_all) != *varying_mode) {
    return false;
  }
  if (!object_scope.empty() && task.object_scope.intersect(object_scope).empty()) return false;
  if (mutating && task.mutating != *mutating) return false;
  return true;
}

TaskCatalog filter_tasks(const TaskCatalog& catalog, const TaskFilter& filter) {
  std::vector<Task> kept;
  for (const Task& task : catalog) {
    if (filter.matches(task)) kept.push_back(task);
  }
  return TaskCatalog(std::move(kept));
}

double task_similarity(const Task& a, const Task& b) {
  double agreement = 0.0;
  if (a.category.activity == b.category.activity) agreement += 1.0;
  if (a.category.name == b.category.name) agreement += 1.0;
  const int shared = a.object_scope.intersect(b.object_scope).size();
  const int either = a.object_scope.unite(b.object_scope).size();
  agreement += either == 0 ? 1.0 : static_cast<double>(shared) / either;
  if (a.mutating == b.mutating) agreement += 1.0;
  // Mode class: the tagged mode, or a class of its own for varying-all.
  if (a.mode_tag.mode() == b.mode_tag.mode()) agreement += 1.0;
  return agreement / 5.0;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

[[noreturn]] void field_error(ErrorCode code, std::size_t index, std::string_view field,
                              const std::string& what) {
  throw Error(code, fmt::format("tasks[{}].{}: {}", index, field, what));
}

const json& require(const json& object, std::size_t index, const char* field) {
  auto it = object.find(field);
  if (it == object.end()) field_error(ErrorCode::parse, index, field, "missing field");
  return *it;
}

std::string require_string(const json& object, std::size_t index, const char* field) {
  const json& value = require(object, index, field);
  if (!value.is_string()) field_error(ErrorCode::parse, index, field, "expected a string");
  return value.get<std::string>();
}

Task task_from_json(const json& entry, std::size_t index) {
  if (!entry.is_object()) {
    throw Error(ErrorCode::parse, fmt::format("tasks[{}]: expected an object", index));
  }
  Task task;
  task.id = require_string(entry, index, "id");
  task.name = require_string(entry, index, "name");

  const std::string activity = require_string(entry, index, "activity");
  auto parsed_activity = parse_activity(activity);
  if (!parsed_activity) {
    field_error(ErrorCode::unknown_category, index, "activity",
                fmt::format("unknown activity '{}'", activity));
  }
  const std::string category = require_string(entry, index, "category");
  auto parsed_category = parse_category(category);
  if (!parsed_category || !category_belongs_to(*parsed_category, *parsed_activity)) {
    field_error(ErrorCode::unknown_category, index, "category",
                fmt::format("unknown {} category '{}'", activity, category));
  }
  task.category = {*parsed_activity, *parsed_category};

  const json& mode = require(entry, index, "mode");
  if (!mode.is_object()) field_error(ErrorCode::parse, index, "mode", "expected an object");
  const std::string frequency = require_string(mode, index, "frequency");
  auto parsed_frequency = parse_frequency(frequency);
  if (!parsed_frequency) {
    field_error(ErrorCode::invalid_value, index, "mode.frequency",
                fmt::format("unknown frequency '{}'", frequency));
  }
  std::optional<InteractionMode> parsed_mode;
  if (auto it = mode.find("mode"); it != mode.end() && !it->is_null()) {
    if (!it->is_string()) field_error(ErrorCode::parse, index, "mode.mode", "expected a string");
    parsed_mode = parse_mode(it->get<std::string>());
    if (!parsed_mode) {
      field_error(ErrorCode::invalid_value, index, "mode.mode",
                  fmt::format("unknown mode '{}'", it->get<std::string>()));
    }
  }
  try {
    task.mode_tag = InteractionModeTag::make(*parsed_frequency, parsed_mode);
  } catch (const Error& e) {
    field_error(ErrorCode::invalid_value, index, "mode", e.what());
  }

  const json& scope = require(entry, index, "object_scope");
  if (!scope.is_array()) field_error(ErrorCode::parse, index, "object_scope", "expected a list");
  for (const json& item : scope) {
    auto kind = item.is_string() ? parse_object_kind(item.get<std::string>()) : std::nullopt;
    if (!kind) field_error(ErrorCode::invalid_value, index, "object_scope", "unknown object kind");
    task.object_scope.insert(*kind);
  }
  if (task.object_scope.empty()) {
    field_error(ErrorCode::invalid_value, index, "object_scope", "must not be empty");
  }

  const json& mutating = require(entry, index, "mutating");
  if (!mutating.is_boolean()) field_error(ErrorCode::parse, index, "mutating", "expected a boolean");
  task.mutating = mutating.get<bool>();

  if (auto it = entry.find("frequency_weight"); it != entry.end()) {
    if (!it->is_number()) {
      field_error(ErrorCode::parse, index, "frequency_weight", "expected a number");
    }
    task.frequency_weight = it->get<double>();
    if (!(task.frequency_weight >= 0.0)) {
      field_error(ErrorCode::invalid_value, index, "frequency_weight", "must be >= 0");
    }
  }
  return task;
}

json task_to_json(const Task& task) {
  json scope = json::array();
  for (ObjectKind kind : task.object_scope.kinds()) scope.push_back(to_string(kind));
  json mode = {{"frequency", to_string(task.mode_tag.frequency())}};
  if (auto m = task.mode_tag.mode()) mode["mode"] = to_string(*m);
  return {
      {"id", task.id},
      {"name", task.name},
      {"activity", to_string(task.category.activity)},
      {"category", to_string(task.category.name)},
      {"mode", mode},
      {"object_scope", scope},
      {"mutating", task.mutating},
      {"frequency_weight", task.frequency_weight},
  };
}

}  // namespace

TaskCatalog load_catalog(std::istream& in) {
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, fmt::format("catalog: {}", e.what()));
  }
  if (!document.is_object()) throw Error(ErrorCode::parse, "catalog: expected a top-level object");
  auto tasks_it = document.find("tasks");
  if (tasks_it == document.end() || !tasks_it->is_array()) {
    throw Error(ErrorCode::parse, "catalog: missing list field 'tasks'");
  }
  std::vector<Task> tasks;
  tasks.reserve(tasks_it->size());
  for (std::size_t i = 0; i < tasks_it->size(); ++i) {
    tasks.push_back(task_from_json((*tasks_it)[i], i));
  }
  return TaskCatalog(std::move(tasks));
}

TaskCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open catalog file '{}'", path));
  try {
    return load_catalog(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_catalog(const TaskCatalog& catalog, std::ostream& out) {
  json tasks = json::array();
  for (const Task& task : catalog) tasks.push_back(task_to_json(task));
  out << json{{"tasks", tasks}}.dump(2) << '\n';
}

}  // namespace gesturemap
