#include "gesturemap/fixtures.hpp"

#include <fmt/format.h>

#include "gesturemap/error.hpp"

namespace gesturemap {

namespace {

using Mode = InteractionMode;
using K = ObjectKind;
using V = std::map<std::string, std::string>;

struct NamedGesture {
  const char* name;
  Gesture gesture;
};

Task task(const char* id, const char* name, Activity activity, CategoryName category,
          InteractionModeTag tag, ObjectScope scope, bool mutating) {
  return {id, name, {activity, category}, tag, scope, mutating, 1.0};
}

std::vector<Task> demo_tasks() {
  const auto stepped = InteractionModeTag::always(Mode::stepped);
  return {
      task("select-node", "Select node", Activity::exploration, CategoryName::select,
           InteractionModeTag::mostly(Mode::stepped), {K::node}, false),
      task("center-view", "Center view", Activity::exploration, CategoryName::explore, stepped,
           {K::view}, false),
      task("apply-layout", "Apply layout", Activity::exploration, CategoryName::reconfigure, stepped,
           {K::view}, false),
      task("hide-labels", "Hide labels", Activity::exploration, CategoryName::connect, stepped,
           {K::label}, false),
      task("duplicate-node", "Duplicate node", Activity::editing, CategoryName::insert, stepped,
           {K::node}, true),
      task("delete-subgraph", "Delete subgraph", Activity::editing, CategoryName::remove, stepped,
           {K::subgraph}, true),
  };
}

V touch_values(const char* continuity, const char* duration, const char* nature, const char* linearity,
               const char* movement, const char* composition = "single") {
  return {{"continuity", continuity},
          {"duration", duration},
          {"nature-of-motion", nature},
          {"linearity", linearity},
          {"relation-of-movement", movement},
          {"composition", composition}};
}

V tangible_values(const char* action, const char* composition = "single") {
  return {{"form", "thick-rigid"},       {"material", "wood"},         {"role", "function"},
          {"single-action", action},     {"tangible-type", "none"},    {"tangible-relation", "none"},
          {"composition", composition}};
}

std::vector<NamedGesture> demo_gestures(const VocabularySpec& spec) {
  const auto on_node = ObjectRelation::make(RelationKind::started_on, TargetClass::node);
  const auto onto_node = ObjectRelation::make(RelationKind::ended_on, TargetClass::node);
  const auto across_label = ObjectRelation::make(RelationKind::crossed, TargetClass::label);
  const auto around_nodes = ObjectRelation::make(RelationKind::enclosed, TargetClass::node);
  const auto none = ObjectRelation::none();
  const DeviceMultiplicity one{1, 1, 1};
  const DeviceMultiplicity two{2, 1, 1};

  auto make = [&](Modality modality, V values, ObjectRelation relation, DeviceMultiplicity multiplicity) {
    return make_gesture(spec, modality, values, relation, multiplicity);
  };
  return {
      {"tap-node",
       make(Modality::touch, touch_values("discrete", "short", "symbolic-physical", "none", "none"), on_node,
            one)},
      {"shake-canvas",
       make(Modality::touch,
            touch_values("continuous", "short", "symbolic-physical", "direction-changes", "parallel"), none,
            two)},
      {"draw-result",
       make(Modality::pen,
            touch_values("continuous", "long", "metaphorical-abstract", "direction-changes", "none"), none,
            one)},
      {"cross-out",
       make(Modality::touch, touch_values("continuous", "short", "metaphorical-abstract", "straight", "none"),
            across_label, one)},
      {"stamp", make(Modality::tangible, tangible_values("place"), onto_node, one)},
      {"select-then-flip", make(Modality::tangible, tangible_values("flip", "sequence"), around_nodes, one)},
      {"pinch",
       make(Modality::touch, touch_values("continuous", "short", "symbolic-physical", "straight", "convergent"),
            none, two)},
      {"spread",
       make(Modality::touch, touch_values("continuous", "short", "symbolic-physical", "straight", "divergent"),
            none, two)},
      {"lift-stamp", make(Modality::tangible, tangible_values("lift"), onto_node, one)},
      {"hold-node",
       make(Modality::touch, touch_values("discrete", "long", "symbolic-physical", "none", "none"), on_node,
            one)},
  };
}

struct FamiliarityRow {
  const char* task;
  const char* gesture;
  double score;
};

constexpr FamiliarityRow kFamiliarity[] = {
    {"select-node", "tap-node", 0.95},        {"select-node", "hold-node", 0.6},
    {"select-node", "cross-out", 0.1},        {"center-view", "shake-canvas", 0.35},
    {"center-view", "spread", 0.4},           {"center-view", "tap-node", 0.2},
    {"apply-layout", "draw-result", 0.45},    {"apply-layout", "shake-canvas", 0.3},
    {"hide-labels", "cross-out", 0.7},        {"hide-labels", "pinch", 0.3},
    {"duplicate-node", "stamp", 0.6},         {"duplicate-node", "hold-node", 0.35},
    {"delete-subgraph", "select-then-flip", 0.4}, {"delete-subgraph", "cross-out", 0.65},
    {"delete-subgraph", "lift-stamp", 0.25},
};

constexpr const char* kExampleMapping[][2] = {
    {"select-node", "tap-node"},    {"center-view", "shake-canvas"}, {"apply-layout", "draw-result"},
    {"hide-labels", "cross-out"},   {"duplicate-node", "stamp"},     {"delete-subgraph", "select-then-flip"},
};

ProblemFixture sub_fixture(const std::vector<std::string>& task_ids, const std::vector<std::string>& gestures) {
  const DemoInstance demo = demo_instance();
  std::vector<Task> tasks;
  for (const auto& id : task_ids) tasks.push_back(*demo.catalog.find(id));
  std::vector<Gesture> chosen;
  for (const auto& name : gestures) chosen.push_back(demo.vocabulary[demo_gesture_index(demo, name)]);
  auto criteria = builtin_criteria();
  return {CriterionContext(TaskCatalog(std::move(tasks)), Vocabulary(std::move(chosen)), demo.familiarity),
          demo.weights, std::move(criteria)};
}

}  // namespace

DemoInstance demo_instance() {
  DemoInstance demo;
  demo.catalog = TaskCatalog(demo_tasks());
  demo.spec.spec = builtin_spec_all();

  std::vector<Gesture> gestures;
  for (auto& named : demo_gestures(demo.spec.spec)) {
    demo.gesture_names.emplace_back(named.name);
    gestures.push_back(std::move(named.gesture));
  }
  demo.vocabulary = Vocabulary(std::move(gestures));

  for (const auto& row : kFamiliarity) {
    demo.familiarity.set(row.task, demo.vocabulary.fingerprint(demo_gesture_index(demo, row.gesture)),
                         row.score);
  }
  demo.weights = WeightVector::uniform(builtin_criteria());
  for (const auto& [task_id, gesture] : kExampleMapping) {
    demo.example_mapping.entries.push_back({task_id, demo_gesture_index(demo, gesture)});
  }
  return demo;
}

std::size_t demo_gesture_index(const DemoInstance& demo, std::string_view name) {
  for (std::size_t i = 0; i < demo.gesture_names.size(); ++i) {
    if (demo.gesture_names[i] == name) return i;
  }
  throw Error(ErrorCode::invalid_value, fmt::format("unknown demo gesture '{}'", name));
}

ProblemFixture fixture_4x6() {
  return sub_fixture({"select-node", "center-view", "hide-labels", "delete-subgraph"},
                     {"tap-node", "shake-canvas", "cross-out", "select-then-flip", "pinch", "hold-node"});
}

ProblemFixture fixture_5x8() {
  return sub_fixture({"select-node", "center-view", "apply-layout", "duplicate-node", "delete-subgraph"},
                     {"tap-node", "shake-canvas", "draw-result", "stamp", "select-then-flip", "spread",
                      "lift-stamp", "hold-node"});
}

}  // namespace gesturemap
