#include "gesturemap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gesturemap/error.hpp"
#include "gesturemap/fixtures.hpp"
#include "gesturemap/mapping.hpp"

namespace gesturemap::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::parse, fmt::format("config: {}", message));
}

fs::path resolve(const fs::path& base, const json& value, const char* field) {
  if (!value.is_string()) config_error(fmt::format("{}: expected a path string", field));
  fs::path path = value.get<std::string>();
  return path.is_absolute() ? path : base / path;
}

std::uint64_t unsigned_field(const json& object, const char* field) {
  const json& value = object.at(field);
  if (!value.is_number_unsigned()) {
    config_error(fmt::format("solver.{}: expected a nonnegative integer", field));
  }
  return value.get<std::uint64_t>();
}

double number_field(const json& object, const char* field) {
  const json& value = object.at(field);
  if (!value.is_number()) config_error(fmt::format("solver.{}: expected a number", field));
  return value.get<double>();
}

SolverConfig parse_solver(const json& node) {
  if (!node.is_object()) config_error("solver: expected an object");
  SolverConfig solver;
  for (const auto& [key, value] : node.items()) {
    if (key == "algorithm") {
      auto algorithm = value.is_string() ? parse_algorithm(value.get<std::string>()) : std::nullopt;
      if (!algorithm) {
        config_error(fmt::format("solver.algorithm: expected one of brute-force, assignment-exact, "
                                 "local-search, anneal; got {}",
                                 value.dump()));
      }
      solver.algorithm = *algorithm;
    } else if (key == "seed") {
      solver.seed = unsigned_field(node, "seed");
    } else if (key == "max_iterations") {
      solver.max_iterations = unsigned_field(node, "max_iterations");
    } else if (key == "restarts") {
      const std::uint64_t restarts = unsigned_field(node, "restarts");
      if (restarts > 1'000'000) config_error("solver.restarts: at most 1000000");
      solver.restarts = static_cast<std::uint32_t>(restarts);
    } else if (key == "initial_temperature") {
      solver.initial_temperature = number_field(node, "initial_temperature");
    } else if (key == "cooling_rate") {
      solver.cooling_rate = number_field(node, "cooling_rate");
    } else if (key == "brute_force_guard") {
      solver.brute_force_guard = unsigned_field(node, "brute_force_guard");
    } else {
      config_error(fmt::format("solver.{}: unknown field", key));
    }
  }
  try {
    solver.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return solver;
}

ActivitySelection parse_selection_field(const json& value, const char* field) {
  auto selection = value.is_string() ? parse_activity_selection(value.get<std::string>()) : std::nullopt;
  if (!selection) config_error(fmt::format("{}: expected exploration, editing or both", field));
  return *selection;
}

std::string format_score(double value) { return fmt::format("{:.6f}", value); }

ojson report_json(const QualityReport& report) {
  ojson criteria = ojson::array();
  for (const CriterionScore& score : report.per_criterion) {
    criteria.push_back({{"criterion", score.criterion}, {"weight", score.weight}, {"score", score.score}});
  }
  return {{"criteria", criteria},
          {"aggregate", report.aggregate},
          {"n", report.n},
          {"normalization", std::string(to_string(report.normalization))}};
}

ojson mapping_json(const Mapping& mapping, const Vocabulary& vocabulary) {
  ojson list = ojson::array();
  for (const MappingEntry& entry : mapping.entries) {
    list.push_back({{"task", entry.task_id}, {"gesture_fingerprint", vocabulary.fingerprint(entry.gesture)}});
  }
  return list;
}

void print_report_table(const QualityReport& report, std::ostream& out) {
  std::size_t width = 9;
  for (const auto& score : report.per_criterion) width = std::max(width, score.criterion.size());
  out << fmt::format("{:<{}}  {:>6}  {:>8}\n", "criterion", width, "weight", "score");
  for (const auto& score : report.per_criterion) {
    out << fmt::format("{:<{}}  {:>6.3f}  {:>8}\n", score.criterion, width, score.weight,
                       format_score(score.score));
  }
  out << fmt::format("overall quality: {}  (n = {}, {})\n", format_score(report.aggregate), report.n,
                     to_string(report.normalization));
}

void print_mapping_table(const Mapping& mapping, const Vocabulary& vocabulary, std::ostream& out) {
  std::size_t width = 4;
  for (const auto& entry : mapping.entries) width = std::max(width, entry.task_id.size());
  out << fmt::format("{:<{}}  {}\n", "task", width, "gesture");
  for (const auto& entry : mapping.entries) {
    out << fmt::format("{:<{}}  {}\n", entry.task_id, width, vocabulary.fingerprint(entry.gesture));
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_value, fmt::format("cannot write '{}'", path.string()));
  out << content;
}

template <typename SaveFn>
std::string capture(SaveFn save) {
  std::ostringstream out;
  save(out);
  return out.str();
}

struct Options {
  std::string config;
  std::string spec;
  std::string builtin;
  std::string mapping;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool count_only = false;
  std::string directory;
};

OutputFormat resolve_format(const Options& options, const std::optional<RunConfig>& config) {
  if (options.format == "structured") return OutputFormat::structured;
  if (options.format == "table") return OutputFormat::table;
  if (config && config->format) return *config->format;
  return OutputFormat::table;
}

std::optional<RunConfig> optional_config(const Options& options) {
  if (options.config.empty()) return std::nullopt;
  return load_run_config(options.config);
}

RunConfig required_config(const Options& options, const char* command) {
  if (options.config.empty()) {
    throw Error(ErrorCode::invalid_value, fmt::format("{}: --config is required", command));
  }
  return load_run_config(options.config);
}

int cmd_enumerate(const Options& options, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config = optional_config(options);
  Vocabulary vocabulary;
  bool empty_warning = false;
  if (!options.builtin.empty() || !options.spec.empty()) {
    RunConfig local;
    if (!options.builtin.empty()) local.builtin_spec = options.builtin;
    if (!options.spec.empty()) local.spec_path = options.spec;
    SpecDocument document;
    if (local.spec_path) {
      document = load_spec_file(local.spec_path->string());
    } else if (local.builtin_spec == "all") {
      document.spec = builtin_spec_all();
    } else {
      auto modality = parse_modality(local.builtin_spec);
      if (!modality) {
        throw Error(ErrorCode::invalid_value,
                    fmt::format("--builtin: expected touch, pen, tangible or all; got '{}'", local.builtin_spec));
      }
      document.spec = builtin_spec(*modality);
    }
    auto result = enumerate_vocabulary(document.spec, document.object_relations, document.multiplicities);
    vocabulary = std::move(result.vocabulary);
    empty_warning = result.empty_warning;
  } else if (config) {
    Instance instance = load_instance(*config);
    vocabulary = std::move(instance.vocabulary);
    empty_warning = instance.empty_warning;
  } else {
    throw Error(ErrorCode::invalid_value, "enumerate: one of --config, --spec or --builtin is required");
  }

  if (empty_warning) err << "warning: the constraints eliminate every gesture\n";
  if (resolve_format(options, config) == OutputFormat::structured) {
    ojson document = {{"command", "enumerate"}, {"count", vocabulary.size()}, {"empty_warning", empty_warning}};
    if (!options.count_only) {
      ojson list = ojson::array();
      for (std::size_t i = 0; i < vocabulary.size(); ++i) list.push_back(vocabulary.fingerprint(i));
      document["gestures"] = std::move(list);
    }
    out << document.dump(2) << '\n';
  } else {
    out << fmt::format("gestures: {}\n", vocabulary.size());
    if (!options.count_only) {
      for (std::size_t i = 0; i < vocabulary.size(); ++i) out << vocabulary.fingerprint(i) << '\n';
    }
  }
  return 0;
}

int cmd_score(const Options& options, std::ostream& out, std::ostream& err) {
  const RunConfig config = required_config(options, "score");
  if (options.mapping.empty()) throw Error(ErrorCode::invalid_value, "score: --mapping is required");
  const Instance instance = load_instance(config);
  const Mapping mapping = load_mapping_file(options.mapping, instance.vocabulary);
  const auto violations = verify_mapping(mapping, instance.catalog, instance.vocabulary);
  if (!violations.empty()) {
    for (const auto& violation : violations) {
      err << fmt::format("violation [{}]: {}\n", to_string(violation.kind), violation.message);
    }
    return 1;
  }
  const CriterionContext context(instance.catalog, instance.vocabulary, instance.familiarity);
  const QualityReport report =
      overall_quality(mapping, instance.weights, context, instance.criteria, instance.normalization);

  if (resolve_format(options, config) == OutputFormat::structured) {
    ojson document = {{"command", "score"},
                      {"mapping", mapping_json(mapping, instance.vocabulary)},
                      {"report", report_json(report)}};
    out << document.dump(2) << '\n';
  } else {
    print_report_table(report, out);
  }
  return 0;
}

int cmd_optimize(const Options& options, std::ostream& out, std::ostream&) {
  RunConfig config = required_config(options, "optimize");
  if (options.seed) config.solver.seed = *options.seed;
  const Instance instance = load_instance(config);
  const CriterionContext context(instance.catalog, instance.vocabulary, instance.familiarity);
  const Objective objective(context, instance.weights, instance.criteria, instance.normalization);
  const OptimizationResult result = optimize(objective, config.solver);

  if (resolve_format(options, config) == OutputFormat::structured) {
    ojson trace = ojson::array();
    for (const TraceSample& sample : result.trace) {
      trace.push_back({{"iteration", sample.iteration}, {"best", sample.best}});
    }
    ojson document = {{"command", "optimize"},
                      {"algorithm", std::string(to_string(result.algorithm))},
                      {"seed", config.solver.seed},
                      {"optimality", std::string(to_string(result.optimality))},
                      {"iterations_used", result.iterations_used},
                      {"evaluations", result.evaluations},
                      {"mapping", mapping_json(result.mapping, instance.vocabulary)},
                      {"report", report_json(result.report)},
                      {"trace", trace}};
    out << document.dump(2) << '\n';
  } else {
    out << fmt::format("algorithm: {} ({})\n", to_string(result.algorithm), to_string(result.optimality));
    out << fmt::format("iterations: {}  evaluations: {}\n", result.iterations_used, result.evaluations);
    print_mapping_table(result.mapping, instance.vocabulary, out);
    out << '\n';
    print_report_table(result.report, out);
  }
  return 0;
}

int cmd_fixtures(const Options& options, std::ostream& out) {
  write_fixtures(options.directory);
  out << fmt::format("wrote demo fixtures to {}\n", options.directory);
  return 0;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(e.what());
  }
  if (!document.is_object()) config_error("expected an object");

  RunConfig config;
  for (const auto& [key, value] : document.items()) {
    if (key == "catalog") {
      if (value.is_object()) {
        if (!value.contains("builtin")) config_error("catalog: expected a path or {\"builtin\": ...}");
        config.builtin_catalog = parse_selection_field(value["builtin"], "catalog.builtin");
      } else {
        config.catalog_path = resolve(base_dir, value, "catalog");
      }
    } else if (key == "activity") {
      config.activity = parse_selection_field(value, "activity");
    } else if (key == "spec") {
      if (value.is_object()) {
        const json& builtin = value.contains("builtin") ? value["builtin"] : json();
        if (!builtin.is_string()) config_error("spec.builtin: expected touch, pen, tangible or all");
        config.builtin_spec = builtin.get<std::string>();
        if (config.builtin_spec != "all" && !parse_modality(config.builtin_spec)) {
          config_error(fmt::format("spec.builtin: expected touch, pen, tangible or all; got '{}'",
                                   config.builtin_spec));
        }
      } else {
        config.spec_path = resolve(base_dir, value, "spec");
      }
    } else if (key == "vocabulary") {
      config.vocabulary_path = resolve(base_dir, value, "vocabulary");
    } else if (key == "familiarity") {
      config.familiarity_path = resolve(base_dir, value, "familiarity");
    } else if (key == "weights") {
      if (value.is_object()) {
        WeightVector weights;
        for (const auto& [name, alpha] : value.items()) {
          if (!alpha.is_number()) config_error(fmt::format("weights.{}: expected a number", name));
          try {
            weights.set(name, alpha.get<double>());
          } catch (const Error& e) {
            config_error(fmt::format("weights.{}: {}", name, e.what()));
          }
        }
        config.inline_weights = std::move(weights);
      } else {
        config.weights_path = resolve(base_dir, value, "weights");
      }
    } else if (key == "criteria") {
      if (!value.is_array()) config_error("criteria: expected a list of criterion names");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < value.size(); ++i) {
        const json& name = value[i];
        auto kind = name.is_string() ? parse_criterion_kind(name.get<std::string>()) : std::nullopt;
        if (!kind || *kind == CriterionKind::custom) {
          config_error(fmt::format("criteria[{}]: unknown criterion {}", i, name.dump()));
        }
        names.push_back(name.get<std::string>());
      }
      config.criteria = std::move(names);
    } else if (key == "normalization") {
      const std::string text = value.is_string() ? value.get<std::string>() : "";
      if (text == "criterion-count") {
        config.normalization = Normalization::criterion_count;
      } else if (text == "weight-sum") {
        config.normalization = Normalization::weight_sum;
      } else {
        config_error("normalization: expected criterion-count or weight-sum");
      }
    } else if (key == "solver") {
      config.solver = parse_solver(value);
    } else if (key == "format") {
      const std::string text = value.is_string() ? value.get<std::string>() : "";
      if (text == "table") {
        config.format = OutputFormat::table;
      } else if (text == "structured") {
        config.format = OutputFormat::structured;
      } else {
        config_error("format: expected table or structured");
      }
    } else {
      config_error(fmt::format("{}: unknown field", key));
    }
  }
  return config;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_run_config(text.str(), path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

Instance load_instance(const RunConfig& config) {
  Instance instance;

  if (config.catalog_path) {
    instance.catalog = load_catalog_file(config.catalog_path->string());
    if (config.activity && *config.activity != ActivitySelection::both) {
      TaskFilter filter;
      filter.activity =
          *config.activity == ActivitySelection::exploration ? Activity::exploration : Activity::editing;
      instance.catalog = filter_tasks(instance.catalog, filter);
    }
  } else {
    instance.catalog = builtin_catalog(config.activity.value_or(config.builtin_catalog));
  }

  if (config.spec_path) {
    instance.spec = load_spec_file(config.spec_path->string());
  } else if (config.builtin_spec == "all") {
    instance.spec.spec = builtin_spec_all();
  } else {
    instance.spec.spec = builtin_spec(*parse_modality(config.builtin_spec));
  }

  if (config.vocabulary_path) {
    instance.vocabulary = load_gestures_file(config.vocabulary_path->string(), instance.spec.spec);
  } else {
    auto result = enumerate_vocabulary(instance.spec.spec, instance.spec.object_relations,
                                       instance.spec.multiplicities);
    instance.vocabulary = std::move(result.vocabulary);
    instance.empty_warning = result.empty_warning;
  }

  if (config.familiarity_path) instance.familiarity = load_familiarity_file(config.familiarity_path->string());

  if (config.criteria) {
    for (const std::string& name : *config.criteria) {
      instance.criteria.push_back(Criterion::builtin(*parse_criterion_kind(name)));
    }
  } else {
    instance.criteria = builtin_criteria();
  }

  if (config.weights_path) {
    instance.weights = load_weights_file(config.weights_path->string());
  } else if (config.inline_weights) {
    instance.weights = *config.inline_weights;
  } else {
    instance.weights = WeightVector::uniform(instance.criteria);
  }
  instance.normalization = config.normalization;
  return instance;
}

void write_fixtures(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::invalid_value, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  }
  const DemoInstance demo = demo_instance();
  write_file(dir / "catalog.json", capture([&](std::ostream& o) { save_catalog(demo.catalog, o); }));
  write_file(dir / "spec.json", capture([&](std::ostream& o) { save_spec(demo.spec, o); }));
  write_file(dir / "gestures.json", capture([&](std::ostream& o) { save_gestures(demo.vocabulary, o); }));
  write_file(dir / "familiarity.json",
             capture([&](std::ostream& o) { save_familiarity(demo.familiarity, o); }));
  write_file(dir / "mapping.json",
             capture([&](std::ostream& o) { save_mapping(demo.example_mapping, demo.vocabulary, o); }));

  ojson weights = ojson::object();
  for (const auto& [name, alpha] : demo.weights.weights()) weights[name] = alpha;
  ojson criteria = ojson::array();
  for (const Criterion& criterion : builtin_criteria()) criteria.push_back(criterion.name());
  const ojson config = {{"catalog", "catalog.json"},
                        {"spec", "spec.json"},
                        {"vocabulary", "gestures.json"},
                        {"familiarity", "familiarity.json"},
                        {"weights", weights},
                        {"criteria", criteria},
                        {"normalization", "criterion-count"},
                        {"solver", {{"algorithm", "brute-force"}, {"seed", 0}}}};
  write_file(dir / "config.json", config.dump(2) + "\n");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score and optimize task-to-gesture mappings", "gesturemap"};
  app.require_subcommand(1);
  Options options;

  auto add_format = [&](CLI::App* command) {
    command->add_option("--format", options.format, "Output format")->check(CLI::IsMember({"table", "structured"}));
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "List the gestures of a vocabulary spec");
  enumerate->add_option("--config", options.config, "Run config file");
  enumerate->add_option("--spec", options.spec, "Vocabulary spec file");
  enumerate->add_option("--builtin", options.builtin, "Builtin spec: touch, pen, tangible or all");
  enumerate->add_flag("--count-only", options.count_only, "Print only the gesture count");
  add_format(enumerate);

  CLI::App* score = app.add_subcommand("score", "Score a mapping file");
  score->add_option("--config", options.config, "Run config file")->required();
  score->add_option("--mapping", options.mapping, "Mapping file")->required();
  add_format(score);

  CLI::App* optimize_cmd = app.add_subcommand("optimize", "Search for the best mapping");
  optimize_cmd->add_option("--config", options.config, "Run config file")->required();
  optimize_cmd->add_option("--seed", options.seed, "Override solver.seed");
  add_format(optimize_cmd);

  CLI::App* fixtures = app.add_subcommand("fixtures", "Write the demo catalog, spec and mapping files");
  fixtures->add_option("directory", options.directory, "Output directory")->required();

  std::vector<const char*> argv;
  argv.push_back("gesturemap");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(options, out, err);
    if (score->parsed()) return cmd_score(options, out, err);
    if (optimize_cmd->parsed()) return cmd_optimize(options, out, err);
    if (fixtures->parsed()) return cmd_fixtures(options, out);
  } catch (const Error& e) {
    err << fmt::format("error [{}]: {}\n", to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    err << fmt::format("error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace gesturemap::cli
