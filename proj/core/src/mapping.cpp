#include "gesturemap/mapping.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gesturemap/error.hpp"

namespace gesturemap {

using json = nlohmann::json;

std::string_view to_string(MappingViolation::Kind kind) noexcept {
  switch (kind) {
    case MappingViolation::Kind::injectivity:
      return "injectivity";
    case MappingViolation::Kind::totality:
      return "totality";
    case MappingViolation::Kind::unknown_task:
      return "unknown-task";
    case MappingViolation::Kind::duplicate_task:
      return "duplicate-task";
    case MappingViolation::Kind::unknown_gesture:
      return "unknown-gesture";
  }
  return "?";
}

Mapping Mapping::from_assignment(const TaskCatalog& catalog, std::span<const std::size_t> assignment) {
  Mapping mapping;
  mapping.entries.reserve(assignment.size());
  for (std::size_t i = 0; i < assignment.size() && i < catalog.size(); ++i) {
    mapping.entries.push_back({catalog[i].id, assignment[i]});
  }
  return mapping;
}

std::vector<MappingViolation> verify_mapping(const Mapping& mapping, const TaskCatalog& catalog,
                                             const Vocabulary& vocabulary) {
  using Kind = MappingViolation::Kind;
  std::vector<MappingViolation> violations;
  std::unordered_map<std::string, std::size_t> seen_tasks;
  // gesture -> first task using it; ordered so reports are deterministic
  std::map<std::size_t, std::vector<std::string>> users;

  for (const MappingEntry& entry : mapping.entries) {
    if (!catalog.find(entry.task_id)) {
      violations.push_back({Kind::unknown_task,
                            fmt::format("task '{}' is not in the catalog", entry.task_id),
                            {entry.task_id}});
      continue;
    }
    if (!seen_tasks.emplace(entry.task_id, entry.gesture).second) {
      violations.push_back({Kind::duplicate_task,
                            fmt::format("task '{}' is mapped more than once", entry.task_id),
                            {entry.task_id}});
      continue;
    }
    if (entry.gesture >= vocabulary.size()) {
      violations.push_back({Kind::unknown_gesture,
                            fmt::format("task '{}' references gesture #{} outside the vocabulary of {}",
                                        entry.task_id, entry.gesture, vocabulary.size()),
                            {entry.task_id}});
      continue;
    }
    users[entry.gesture].push_back(entry.task_id);
  }
  for (const auto& [gesture, tasks] : users) {
    if (tasks.size() > 1) {
      violations.push_back({Kind::injectivity,
                            fmt::format("gesture {} is shared by tasks {}", vocabulary.fingerprint(gesture),
                                        fmt::join(tasks, ", ")),
                            tasks});
    }
  }
  for (const Task& task : catalog) {
    if (!seen_tasks.contains(task.id)) {
      violations.push_back({Kind::totality, fmt::format("task '{}' is not mapped", task.id), {task.id}});
    }
  }
  return violations;
}

std::vector<std::size_t> to_assignment(const Mapping& mapping, const TaskCatalog& catalog,
                                       const Vocabulary& vocabulary) {
  auto violations = verify_mapping(mapping, catalog, vocabulary);
  if (!violations.empty()) {
    std::string message = "invalid mapping:";
    for (const MappingViolation& violation : violations) {
      message += fmt::format("\n  {}: {}", to_string(violation.kind), violation.message);
    }
    throw Error(ErrorCode::invalid_mapping, message);
  }
  std::vector<std::size_t> assignment(catalog.size());
  for (const MappingEntry& entry : mapping.entries) {
    assignment[*catalog.index_of(entry.task_id)] = entry.gesture;
  }
  return assignment;
}

Mapping load_mapping(std::istream& in, const Vocabulary& vocabulary) {
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, fmt::format("mapping: {}", e.what()));
  }
  const json* list = &document;
  if (document.is_object()) {
    auto it = document.find("mapping");
    if (it == document.end()) throw Error(ErrorCode::parse, "mapping: missing list field 'mapping'");
    list = &*it;
  }
  if (!list->is_array()) throw Error(ErrorCode::parse, "mapping: expected a list of pairs");

  Mapping mapping;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const json& entry = (*list)[i];
    auto task = entry.is_object() ? entry.find("task") : entry.end();
    auto gesture = entry.is_object() ? entry.find("gesture_fingerprint") : entry.end();
    if (!entry.is_object() || task == entry.end() || !task->is_string() || gesture == entry.end() ||
        !gesture->is_string()) {
      throw Error(ErrorCode::parse,
                  fmt::format("mapping[{}]: expected {{task, gesture_fingerprint}} strings", i));
    }
    auto index = vocabulary.find(gesture->get<std::string>());
    if (!index) {
      throw Error(ErrorCode::parse, fmt::format("mapping[{}].gesture_fingerprint: '{}' is not in the vocabulary",
                                                i, gesture->get<std::string>()));
    }
    mapping.entries.push_back({task->get<std::string>(), *index});
  }
  return mapping;
}

Mapping load_mapping_file(const std::string& path, const Vocabulary& vocabulary) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open mapping file '{}'", path));
  try {
    return load_mapping(in, vocabulary);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_mapping(const Mapping& mapping, const Vocabulary& vocabulary, std::ostream& out) {
  json list = json::array();
  for (const MappingEntry& entry : mapping.entries) {
    list.push_back({{"task", entry.task_id}, {"gesture_fingerprint", vocabulary.fingerprint(entry.gesture)}});
  }
  out << json{{"mapping", list}}.dump(2) << '\n';
}

}  // namespace gesturemap
