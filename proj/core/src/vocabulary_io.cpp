#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gesturemap/error.hpp"
#include "gesturemap/gesture_vocabulary.hpp"

namespace gesturemap {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& locus, const std::string& what) {
  throw Error(ErrorCode::parse, fmt::format("{}: {}", locus, what));
}

const json& member(const json& object, const std::string& locus, const char* field) {
  if (!object.is_object()) fail(locus, "expected an object");
  auto it = object.find(field);
  if (it == object.end()) fail(fmt::format("{}.{}", locus, field), "missing field");
  return *it;
}

std::string string_member(const json& object, const std::string& locus, const char* field) {
  const json& value = member(object, locus, field);
  if (!value.is_string()) fail(fmt::format("{}.{}", locus, field), "expected a string");
  return value.get<std::string>();
}

int int_member(const json& object, const std::string& locus, const char* field, int fallback) {
  auto it = object.find(field);
  if (it == object.end()) return fallback;
  if (!it->is_number_integer()) fail(fmt::format("{}.{}", locus, field), "expected an integer");
  return it->get<int>();
}

ValuePredicate predicate_from_json(const json& entry, const std::string& locus) {
  std::string dimension = string_member(entry, locus, "dimension");
  if (auto it = entry.find("value"); it != entry.end()) {
    if (!it->is_string()) fail(locus + ".value", "expected a string");
    return ValuePredicate::equals(std::move(dimension), it->get<std::string>());
  }
  if (auto it = entry.find("not"); it != entry.end()) {
    if (!it->is_string()) fail(locus + ".not", "expected a string");
    return ValuePredicate::not_equals(std::move(dimension), it->get<std::string>());
  }
  if (auto it = entry.find("in"); it != entry.end()) {
    if (!it->is_array() || it->empty()) fail(locus + ".in", "expected a non-empty list");
    std::vector<std::string> values;
    for (const json& value : *it) {
      if (!value.is_string()) fail(locus + ".in", "expected strings");
      values.push_back(value.get<std::string>());
    }
    return ValuePredicate::any_of(std::move(dimension), std::move(values));
  }
  if (auto it = entry.find("at_least"); it != entry.end()) {
    if (!it->is_number_integer()) fail(locus + ".at_least", "expected an integer");
    return ValuePredicate::at_least(std::move(dimension), it->get<int>());
  }
  fail(locus, "expected one of value, not, in, at_least");
}

json predicate_to_json(const ValuePredicate& predicate) {
  json out = {{"dimension", predicate.dimension}};
  switch (predicate.op) {
    case ValuePredicate::Op::equals:
      out["value"] = predicate.values.front();
      break;
    case ValuePredicate::Op::not_equals:
      out["not"] = predicate.values.front();
      break;
    case ValuePredicate::Op::any_of:
      out["in"] = predicate.values;
      break;
    case ValuePredicate::Op::at_least:
      out["at_least"] = predicate.bound;
      break;
  }
  return out;
}

ObjectRelation relation_from_json(const json& entry, const std::string& locus) {
  const std::string kind_text = string_member(entry, locus, "kind");
  auto kind = parse_relation_kind(kind_text);
  if (!kind) fail(locus + ".kind", fmt::format("unknown relation kind '{}'", kind_text));
  std::optional<TargetClass> target;
  if (auto it = entry.find("target"); it != entry.end() && !it->is_null()) {
    if (!it->is_string()) fail(locus + ".target", "expected a string");
    target = parse_target_class(it->get<std::string>());
    if (!target) fail(locus + ".target", fmt::format("unknown target '{}'", it->get<std::string>()));
  }
  try {
    return ObjectRelation::make(*kind, target);
  } catch (const Error& e) {
    fail(locus, e.what());
  }
}

json relation_to_json(const ObjectRelation& relation) {
  json out = {{"kind", to_string(relation.kind())}};
  if (auto target = relation.target()) out["target"] = to_string(*target);
  return out;
}

DeviceMultiplicity multiplicity_from_json(const json& entry, const std::string& locus) {
  if (!entry.is_object()) fail(locus, "expected an object");
  DeviceMultiplicity multiplicity{int_member(entry, locus, "points", 1),
                                  int_member(entry, locus, "hands", 1),
                                  int_member(entry, locus, "users", 1)};
  if (!multiplicity.valid()) fail(locus, "invalid multiplicity (hands=2 needs points>=2)");
  return multiplicity;
}

json multiplicity_to_json(const DeviceMultiplicity& multiplicity) {
  return {{"points", multiplicity.points},
          {"hands", multiplicity.hands},
          {"users", multiplicity.users}};
}

json parse_document(std::istream& in, std::string_view what) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, fmt::format("{}: {}", what, e.what()));
  }
}

}  // namespace

SpecDocument load_spec(std::istream& in) {
  const json document = parse_document(in, "vocabulary spec");
  const json& dimensions_json = member(document, "spec", "dimensions");
  if (!dimensions_json.is_array()) fail("dimensions", "expected a list");

  std::vector<Dimension> dimensions;
  for (std::size_t i = 0; i < dimensions_json.size(); ++i) {
    const std::string locus = fmt::format("dimensions[{}]", i);
    const json& entry = dimensions_json[i];
    Dimension dimension;
    dimension.name = string_member(entry, locus, "name");
    const json& values = member(entry, locus, "values");
    if (!values.is_array()) fail(locus + ".values", "expected a list");
    for (const json& value : values) {
      if (!value.is_string()) fail(locus + ".values", "expected strings");
      dimension.values.push_back(value.get<std::string>());
    }
    const json& modalities = member(entry, locus, "modalities");
    if (!modalities.is_array()) fail(locus + ".modalities", "expected a list");
    for (const json& value : modalities) {
      auto modality = value.is_string() ? parse_modality(value.get<std::string>()) : std::nullopt;
      if (!modality) fail(locus + ".modalities", "unknown modality");
      dimension.modalities.insert(*modality);
    }
    dimensions.push_back(std::move(dimension));
  }

  std::vector<Constraint> constraints;
  if (auto it = document.find("constraints"); it != document.end()) {
    if (!it->is_array()) fail("constraints", "expected a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string locus = fmt::format("constraints[{}]", i);
      const json& entry = (*it)[i];
      Constraint constraint{std::nullopt, predicate_from_json(member(entry, locus, "then"), locus + ".then")};
      if (auto cond = entry.find("if"); cond != entry.end() && !cond->is_null()) {
        constraint.condition = predicate_from_json(*cond, locus + ".if");
      }
      constraints.push_back(std::move(constraint));
    }
  }

  SpecDocument result;
  try {
    result.spec = VocabularySpec(std::move(dimensions), std::move(constraints));
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, fmt::format("spec: {}", e.what()));
  }
  if (auto it = document.find("object_relations"); it != document.end()) {
    if (!it->is_array()) fail("object_relations", "expected a list");
    result.object_relations.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      result.object_relations.push_back(relation_from_json((*it)[i], fmt::format("object_relations[{}]", i)));
    }
  }
  if (auto it = document.find("multiplicities"); it != document.end()) {
    if (!it->is_array()) fail("multiplicities", "expected a list");
    result.multiplicities.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      result.multiplicities.push_back(
          multiplicity_from_json((*it)[i], fmt::format("multiplicities[{}]", i)));
    }
  }
  return result;
}

SpecDocument load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open spec file '{}'", path));
  try {
    return load_spec(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_spec(const SpecDocument& document, std::ostream& out) {
  json dimensions = json::array();
  for (const Dimension& dimension : document.spec.dimensions()) {
    json modalities = json::array();
    for (Modality modality : kAllModalities) {
      if (dimension.modalities.contains(modality)) modalities.push_back(to_string(modality));
    }
    dimensions.push_back(
        {{"name", dimension.name}, {"values", dimension.values}, {"modalities", modalities}});
  }
  json constraints = json::array();
  for (const Constraint& constraint : document.spec.constraints()) {
    json entry = {{"then", predicate_to_json(constraint.consequence)}};
    if (constraint.condition) entry["if"] = predicate_to_json(*constraint.condition);
    constraints.push_back(std::move(entry));
  }
  json relations = json::array();
  for (const ObjectRelation& relation : document.object_relations) {
    relations.push_back(relation_to_json(relation));
  }
  json multiplicities = json::array();
  for (const DeviceMultiplicity& multiplicity : document.multiplicities) {
    multiplicities.push_back(multiplicity_to_json(multiplicity));
  }
  out << json{{"dimensions", dimensions},
              {"constraints", constraints},
              {"object_relations", relations},
              {"multiplicities", multiplicities}}
             .dump(2)
      << '\n';
}

Vocabulary load_gestures(std::istream& in, const VocabularySpec& spec) {
  const json document = parse_document(in, "gesture list");
  const json& list = member(document, "document", "gestures");
  if (!list.is_array()) fail("gestures", "expected a list");
  std::vector<Gesture> gestures;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string locus = fmt::format("gestures[{}]", i);
    const json& entry = list[i];
    const std::string modality_text = string_member(entry, locus, "modality");
    auto modality = parse_modality(modality_text);
    if (!modality) fail(locus + ".modality", fmt::format("unknown modality '{}'", modality_text));
    const json& assignment_json = member(entry, locus, "assignment");
    if (!assignment_json.is_object()) fail(locus + ".assignment", "expected an object");
    std::map<std::string, std::string> values;
    for (const auto& [name, value] : assignment_json.items()) {
      if (!value.is_string()) fail(fmt::format("{}.assignment.{}", locus, name), "expected a string");
      values.emplace(name, value.get<std::string>());
    }
    ObjectRelation relation;
    if (auto it = entry.find("object_relation"); it != entry.end()) {
      relation = relation_from_json(*it, locus + ".object_relation");
    }
    DeviceMultiplicity multiplicity;
    if (auto it = entry.find("multiplicity"); it != entry.end()) {
      multiplicity = multiplicity_from_json(*it, locus + ".multiplicity");
    }
    Gesture gesture;
    try {
      gesture = make_gesture(spec, *modality, values, relation, multiplicity);
    } catch (const Error& e) {
      fail(locus, e.what());
    }
    if (auto violations = validate_gesture(gesture, spec); !violations.empty()) {
      fail(locus, violations.front().message);
    }
    gestures.push_back(std::move(gesture));
  }
  try {
    return Vocabulary(std::move(gestures));
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, fmt::format("gestures: {}", e.what()));
  }
}

Vocabulary load_gestures_file(const std::string& path, const VocabularySpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open gesture file '{}'", path));
  try {
    return load_gestures(in, spec);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_gestures(const Vocabulary& vocabulary, std::ostream& out) {
  json list = json::array();
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    const Gesture& gesture = vocabulary[i];
    json assignment = json::object();
    for (const auto& [name, value] : gesture.assignment) assignment[name] = value;
    list.push_back({{"fingerprint", vocabulary.fingerprint(i)},
                    {"modality", to_string(gesture.modality)},
                    {"assignment", assignment},
                    {"object_relation", relation_to_json(gesture.relation)},
                    {"multiplicity", multiplicity_to_json(gesture.multiplicity)}});
  }
  out << json{{"gestures", list}}.dump(2) << '\n';
}

}  // namespace gesturemap
