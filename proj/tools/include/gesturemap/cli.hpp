#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gesturemap/criteria.hpp"
#include "gesturemap/gesture_vocabulary.hpp"
#include "gesturemap/optimizer.hpp"
#include "gesturemap/task_catalog.hpp"

namespace gesturemap::cli {

enum class OutputFormat { table, structured };

// Parsed config document. Relative paths are resolved against the directory
// holding the config file.
//
//   {
//     "catalog": "catalog.json" | {"builtin": "exploration" | "editing" | "both"},
//     "activity": "exploration" | "editing" | "both",
//     "spec": "spec.json" | {"builtin": "touch" | "pen" | "tangible" | "all"},
//     "vocabulary": "gestures.json",
//     "familiarity": "familiarity.json",
//     "weights": "weights.json" | {"predictability": 1.0, ...},
//     "criteria": ["predictability", ...],
//     "normalization": "criterion-count" | "weight-sum",
//     "solver": {"algorithm", "seed", "max_iterations", "restarts",
//                "initial_temperature", "cooling_rate", "brute_force_guard"},
//     "format": "table" | "structured"
//   }
struct RunConfig {
  std::optional<std::filesystem::path> catalog_path;
  ActivitySelection builtin_catalog = ActivitySelection::both;
  std::optional<ActivitySelection> activity;

  std::optional<std::filesystem::path> spec_path;
  std::string builtin_spec = "all";
  std::optional<std::filesystem::path> vocabulary_path;
  std::optional<std::filesystem::path> familiarity_path;

  std::optional<std::filesystem::path> weights_path;
  std::optional<WeightVector> inline_weights;
  std::optional<std::vector<std::string>> criteria;  // unset: all builtin criteria
  Normalization normalization = Normalization::criterion_count;

  SolverConfig solver;
  std::optional<OutputFormat> format;
};

// Throws Error(parse) naming the offending field.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// Everything a command works on, loaded from a RunConfig.
struct Instance {
  TaskCatalog catalog;
  SpecDocument spec;
  Vocabulary vocabulary;
  bool empty_warning = false;
  FamiliarityTable familiarity;
  WeightVector weights;
  std::vector<Criterion> criteria;
  Normalization normalization = Normalization::criterion_count;
};

Instance load_instance(const RunConfig& config);

// Writes catalog.json, spec.json, gestures.json, familiarity.json,
// mapping.json and config.json for the demo instance into `dir`.
void write_fixtures(const std::filesystem::path& dir);

// Entry point; returns the process exit status (0 iff no error was reported).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gesturemap::cli
