#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gesturemap/gesture_vocabulary.hpp"
#include "gesturemap/task_catalog.hpp"

namespace gesturemap {

struct MappingEntry {
  std::string task_id;
  std::size_t gesture = 0;  // index into the vocabulary

  friend bool operator==(const MappingEntry&, const MappingEntry&) = default;
};

// Task -> gesture assignment, possibly unverified. Solvers always produce
// entries in catalog order.
struct Mapping {
  std::vector<MappingEntry> entries;

  // `assignment[i]` is the gesture of catalog task i.
  static Mapping from_assignment(const TaskCatalog& catalog, std::span<const std::size_t> assignment);

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

struct MappingViolation {
  enum class Kind { injectivity, totality, unknown_task, duplicate_task, unknown_gesture };
  Kind kind;
  std::string message;
  std::vector<std::string> task_ids;

  friend bool operator==(const MappingViolation&, const MappingViolation&) = default;
};

std::string_view to_string(MappingViolation::Kind kind) noexcept;

// Injectivity, totality over the catalog, and gesture existence.
std::vector<MappingViolation> verify_mapping(const Mapping& mapping, const TaskCatalog& catalog,
                                             const Vocabulary& vocabulary);

// Catalog-ordered gesture indices. Throws Error(invalid_mapping) listing the
// violations when the mapping does not verify.
std::vector<std::size_t> to_assignment(const Mapping& mapping, const TaskCatalog& catalog,
                                       const Vocabulary& vocabulary);

// Mapping files: a list of {task, gesture_fingerprint}, either top-level or
// under a "mapping" key. Unknown fingerprints are a parse error.
Mapping load_mapping(std::istream& in, const Vocabulary& vocabulary);
Mapping load_mapping_file(const std::string& path, const Vocabulary& vocabulary);
void save_mapping(const Mapping& mapping, const Vocabulary& vocabulary, std::ostream& out);

}  // namespace gesturemap
