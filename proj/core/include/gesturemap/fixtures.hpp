#pragma once

#include <string>
#include <vector>

#include "gesturemap/criteria.hpp"
#include "gesturemap/gesture_vocabulary.hpp"
#include "gesturemap/mapping.hpp"
#include "gesturemap/task_catalog.hpp"

namespace gesturemap {

// Six demo tasks, a hand-picked gesture list over builtin_spec_all(), and the
// worked example mapping (tap node -> select node, shake canvas -> center
// view, draw the result -> apply layout, cross out -> hide labels, stamp ->
// duplicate node, select then flip -> delete subgraph).
struct DemoInstance {
  TaskCatalog catalog;
  SpecDocument spec;
  Vocabulary vocabulary;
  std::vector<std::string> gesture_names;  // parallel to vocabulary
  FamiliarityTable familiarity;
  WeightVector weights;  // 1 for every builtin criterion
  Mapping example_mapping;
};

DemoInstance demo_instance();

// Index of a demo gesture by short name ("tap-node", "shake-canvas", ...).
// Throws Error(invalid_value) for unknown names.
std::size_t demo_gesture_index(const DemoInstance& demo, std::string_view name);

// Sub-instances of the demo used as solver benchmarks, with all eight builtin
// criteria at weight 1.
struct ProblemFixture {
  CriterionContext context;
  WeightVector weights;
  std::vector<Criterion> criteria;
};

ProblemFixture fixture_4x6();
ProblemFixture fixture_5x8();

}  // namespace gesturemap
