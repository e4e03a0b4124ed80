#include <unordered_set>

#include "gesturemap/task_catalog.hpp"

namespace gesturemap {

namespace {

using Mode = InteractionMode;
using K = ObjectKind;

struct Row {
  const char* id;
  const char* name;
  CategoryName category;
  InteractionModeTag tag;
  ObjectScope scope;
  bool mutating;
};

InteractionModeTag always(Mode mode) { return InteractionModeTag::always(mode); }
InteractionModeTag mostly(Mode mode) { return InteractionModeTag::mostly(mode); }
InteractionModeTag varying() { return InteractionModeTag::varying(); }

// Compound bullets are split into one task per action ("Select node / Deselect
// node", "Expand/Collapse node", "Show/hide labels"). Object alternatives such
// as "node/edge" stay a single task with a multi-object scope.
std::vector<Row> exploration_rows() {
  using C = CategoryName;
  return {
      {"select-node", "Select node", C::select, mostly(Mode::stepped), {K::node}, false},
      {"deselect-node", "Deselect node", C::select, always(Mode::stepped), {K::node}, false},
      {"select-multiple-nodes", "Select multiple nodes", C::select, varying(), {K::node}, false},
      {"deselect-multiple-nodes", "Deselect multiple nodes", C::select, always(Mode::stepped),
       {K::node}, false},
      {"temporary-select-node", "Temporary select node", C::select, varying(), {K::node}, false},
      {"temporary-select-edge", "Temporary select edge", C::select, varying(), {K::edge}, false},

      {"pan-view", "Pan view", C::explore, mostly(Mode::continuous), {K::view}, false},
      {"center-view", "Center view", C::explore, always(Mode::stepped), {K::view}, false},
      {"rotate-view", "Rotate view", C::explore, mostly(Mode::composite), {K::view}, false},
      {"zoom-view", "Zoom view", C::explore, mostly(Mode::continuous), {K::view}, false},

      {"move-selected-nodes", "Move selected nodes", C::reconfigure, mostly(Mode::composite),
       {K::node}, false},
      {"adjust-graph-layout", "Adjust graph layout", C::reconfigure, always(Mode::stepped),
       {K::view}, false},

      {"change-node-size", "Change node size", C::encode, mostly(Mode::stepped), {K::node}, false},
      {"change-label-size", "Change label size", C::encode, mostly(Mode::stepped), {K::label},
       false},
      {"change-node-edge-mapping", "Change node/edge mapping", C::encode, mostly(Mode::stepped),
       {K::node, K::edge, K::attribute}, false},
      {"color-node-edge", "Color node/edge independently from mapping", C::encode,
       always(Mode::stepped), {K::node, K::edge}, false},

      {"expand-node", "Expand node", C::abstract_elaborate, always(Mode::stepped),
       {K::node, K::subgraph}, false},
      {"collapse-node", "Collapse node", C::abstract_elaborate, always(Mode::stepped),
       {K::node, K::subgraph}, false},

      {"apply-node-edge-filter", "Apply node/edge filter", C::filter, varying(),
       {K::node, K::edge}, false},

      {"show-labels", "Show labels", C::connect, always(Mode::stepped), {K::label}, false},
      {"hide-labels", "Hide labels", C::connect, always(Mode::stepped), {K::label}, false},
      {"show-node-edge-attributes", "Show node/edge attributes", C::connect,
       always(Mode::stepped), {K::node, K::edge, K::attribute}, false},
      {"show-metrics-statistics", "Show metrics/statistics", C::connect, always(Mode::stepped),
       {K::document, K::subgraph}, false},
  };
}

std::vector<Row> editing_rows() {
  using C = CategoryName;
  return {
      {"create-empty-document", "Create empty document", C::create, always(Mode::stepped),
       {K::document}, true},

      {"insert-node-edge", "Insert node/edge", C::insert, mostly(Mode::composite),
       {K::node, K::edge}, true},
      {"insert-copied-node-edge-subgraph", "Insert copied node/edge/subgraph", C::insert,
       always(Mode::stepped), {K::node, K::edge, K::subgraph}, true},
      {"duplicate-node-edge-subgraph", "Duplicate node/edge/subgraph", C::insert,
       always(Mode::stepped), {K::node, K::edge, K::subgraph}, true},
      {"add-node-edge-attribute-label", "Add node/edge attribute/label", C::insert,
       always(Mode::stepped), {K::node, K::edge, K::attribute, K::label}, true},
      {"add-group", "Add group to selected nodes/edges", C::insert, always(Mode::stepped),
       {K::node, K::edge, K::group}, true},

      {"delete-nodes-edges-subgraph", "Delete node(s)/edge(s)/subgraph", C::remove,
       always(Mode::stepped), {K::node, K::edge, K::subgraph}, true},
      {"remove-group", "Remove group", C::remove, always(Mode::stepped), {K::group}, true},

      {"update-node-edge-attribute-value", "Update node/edge attribute value", C::update,
       always(Mode::stepped), {K::node, K::edge, K::attribute}, true},
      {"update-node-edge-label", "Update node/edge label", C::update, always(Mode::stepped),
       {K::node, K::edge, K::label}, true},

      {"pan-view", "Pan view", C::navigate, always(Mode::continuous), {K::view}, false},
      {"zoom-view", "Zoom view", C::navigate, mostly(Mode::stepped), {K::view}, false},

      {"select-node", "Select node", C::select, mostly(Mode::stepped), {K::node}, false},
      {"deselect-node", "Deselect node", C::select, always(Mode::stepped), {K::node}, false},
      {"select-edge", "Select edge", C::select, mostly(Mode::stepped), {K::edge}, false},
      {"deselect-edge", "Deselect edge", C::select, always(Mode::stepped), {K::edge}, false},
      {"select-multiple-nodes", "Select multiple nodes", C::select, varying(), {K::node}, false},
      {"deselect-multiple-nodes", "Deselect multiple nodes", C::select, always(Mode::stepped),
       {K::node}, false},
      {"select-multiple-edges", "Select multiple edges", C::select, varying(), {K::edge}, false},
      {"deselect-multiple-edges", "Deselect multiple edges", C::select, always(Mode::stepped),
       {K::edge}, false},

      // Copying leaves the data set unchanged.
      {"copy-nodes-edges-subgraphs", "Copy node(s)/edge(s)/subgraph(s)", C::miscellaneous,
       always(Mode::stepped), {K::node, K::edge, K::subgraph}, false},
      {"cut-nodes-subgraphs", "Cut node(s)/subgraph(s)", C::miscellaneous, always(Mode::stepped),
       {K::node, K::subgraph}, true},
      {"change-edge-path", "Change edge path", C::miscellaneous, always(Mode::composite),
       {K::edge}, true},
  };
}

void append(std::vector<Task>& out, const std::vector<Row>& rows, Activity activity,
            const std::unordered_set<std::string>& taken, const char* collision_prefix) {
  for (const Row& row : rows) {
    Task task;
    task.id = row.id;
    if (taken.contains(task.id)) task.id = collision_prefix + task.id;
    task.name = row.name;
    task.category = {activity, row.category};
    task.mode_tag = row.tag;
    task.object_scope = row.scope;
    task.mutating = row.mutating;
    out.push_back(std::move(task));
  }
}

}  // namespace

TaskCatalog builtin_catalog(ActivitySelection selection) {
  std::vector<Task> tasks;
  std::unordered_set<std::string> taken;
  if (selection != ActivitySelection::editing) {
    append(tasks, exploration_rows(), Activity::exploration, {}, "");
    for (const Task& task : tasks) taken.insert(task.id);
  }
  if (selection != ActivitySelection::exploration) {
    append(tasks, editing_rows(), Activity::editing, taken, "edit-");
  }
  return TaskCatalog(std::move(tasks));
}

}  // namespace gesturemap
