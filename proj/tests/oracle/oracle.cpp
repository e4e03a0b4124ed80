#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace oracle {

using namespace gesturemap;

namespace {

const std::string* lookup(const Gesture& g, const std::string& name) {
  for (const auto& [dimension, value] : g.assignment) {
    if (dimension == name) return &value;
  }
  return nullptr;
}

bool direct_candidate(const Task& t) {
  return t.object_scope.contains(ObjectKind::node) || t.object_scope.contains(ObjectKind::edge) ||
         t.object_scope.contains(ObjectKind::subgraph) || t.object_scope.contains(ObjectKind::label);
}

double familiarity_of(const Instance& in, std::size_t t, std::size_t g) {
  const auto& entries = in.familiarity->entries();
  auto it = entries.find({(*in.catalog)[t].id, fingerprint((*in.vocabulary)[g])});
  return it == entries.end() ? 0.5 : it->second;
}

}  // namespace

double distance(const Gesture& a, const Gesture& b) {
  double slots = 0;
  double differ = 0;
  auto slot = [&](bool same) {
    slots += 1;
    if (!same) differ += 1;
  };
  slot(a.modality == b.modality);
  for (const auto& [dimension, value] : a.assignment) {
    if (const std::string* other = lookup(b, dimension)) slot(*other == value);
  }
  slot(a.relation.kind() == b.relation.kind() && a.relation.target() == b.relation.target());
  slot(a.multiplicity.points == b.multiplicity.points);
  slot(a.multiplicity.hands == b.multiplicity.hands);
  slot(a.multiplicity.users == b.multiplicity.users);
  return differ / slots;
}

InteractionMode mode_of(const Gesture& g) {
  bool sequence = g.multiplicity.users >= 2;
  for (const auto& entry : g.assignment) sequence = sequence || entry.second == "sequence";
  if (sequence) return InteractionMode::composite;
  if (const std::string* c = lookup(g, "continuity")) {
    return *c == "discrete" ? InteractionMode::stepped : InteractionMode::continuous;
  }
  static const std::set<std::string> moving = {"translate", "rotate", "tilt", "shake"};
  if (const std::string* action = lookup(g, "single-action"); action && moving.count(*action)) {
    return InteractionMode::continuous;
  }
  return InteractionMode::stepped;
}

double effort(const Gesture& g) {
  int tenths = 2 * std::min(std::max(g.multiplicity.points - 1, 0), 2);
  if (g.multiplicity.hands == 2) tenths += 2;
  if (g.multiplicity.users > 1) tenths += 2;
  const InteractionMode mode = mode_of(g);
  if (mode == InteractionMode::composite) tenths += 2;
  if (mode == InteractionMode::continuous) tenths += 1;
  if (const std::string* l = lookup(g, "linearity"); l && *l == "direction-changes") tenths += 2;
  return std::min(tenths, 10) / 10.0;
}

bool has_undo(const Gesture& g, const Vocabulary& vocabulary) {
  static const std::map<std::string, std::string> flip = {
      {"divergent", "convergent"}, {"convergent", "divergent"}, {"place", "lift"}, {"lift", "place"}};
  Gesture twin = g;
  for (auto& entry : twin.assignment) {
    auto it = flip.find(entry.second);
    if (it != flip.end()) entry.second = it->second;
  }
  for (const Gesture& candidate : vocabulary) {
    if (candidate == twin) return true;
  }
  return false;
}

double similarity(const Task& a, const Task& b) {
  double sum = 0;
  sum += a.category.activity == b.category.activity;
  sum += a.category.name == b.category.name;
  int inter = 0;
  int uni = 0;
  for (int k = 0; k < kObjectKindCount; ++k) {
    const bool x = a.object_scope.contains(static_cast<ObjectKind>(k));
    const bool y = b.object_scope.contains(static_cast<ObjectKind>(k));
    inter += x && y;
    uni += x || y;
  }
  sum += uni == 0 ? 1.0 : double(inter) / uni;
  sum += a.mutating == b.mutating;
  const bool va = a.mode_tag.frequency() == Frequency::varying_all;
  const bool vb = b.mode_tag.frequency() == Frequency::varying_all;
  sum += (va && vb) || (!va && !vb && *a.mode_tag.mode() == *b.mode_tag.mode());
  return sum / 5;
}

double criterion(CriterionKind kind, std::span<const std::size_t> m, const Instance& in) {
  const TaskCatalog& tasks = *in.catalog;
  const Vocabulary& vocab = *in.vocabulary;
  const std::size_t k = m.size();
  switch (kind) {
    case CriterionKind::predictability: {
      if (k < 2) return 1.0;
      double widest = 0;
      for (const Gesture& a : vocab) {
        for (const Gesture& b : vocab) widest = std::max(widest, distance(a, b));
      }
      if (widest == 0) return 1.0;
      double closest = 1e300;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i != j) closest = std::min(closest, distance(vocab[m[i]], vocab[m[j]]));
        }
      }
      return std::min(1.0, closest / widest);
    }
    case CriterionKind::consistency: {
      std::vector<std::pair<double, double>> pairs;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          pairs.push_back({similarity(tasks[i], tasks[j]), 1.0 - distance(vocab[m[i]], vocab[m[j]])});
        }
      }
      const std::size_t n = pairs.size();
      if (n < 2) return 1.0;
      long concordant = 0;
      long discordant = 0;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double dx = pairs[p].first - pairs[q].first;
          const double dy = pairs[p].second - pairs[q].second;
          if (dx * dy > 0) ++concordant;
          if (dx * dy < 0) ++discordant;
        }
      }
      const double tau = double(concordant - discordant) / (double(n) * (n - 1) / 2);
      return (tau + 1) / 2;
    }
    case CriterionKind::familiarity: {
      if (k == 0) return 1.0;
      double sum = 0;
      for (std::size_t t = 0; t < k; ++t) sum += familiarity_of(in, t, m[t]);
      return sum / k;
    }
    case CriterionKind::generalizability: {
      if (k == 0) return 1.0;
      std::set<std::vector<std::string>> shapes;
      for (std::size_t g : m) {
        std::vector<std::string> shape;
        for (const char* d : {"continuity", "nature-of-motion", "linearity"}) {
          const std::string* v = lookup(vocab[g], d);
          shape.push_back(v ? *v : std::string("\x01"));
        }
        shapes.insert(shape);
      }
      return 1.0 - double(shapes.size()) / k;
    }
    case CriterionKind::viscosity: {
      double num = 0;
      double den = 0;
      for (std::size_t t = 0; t < k; ++t) {
        num += tasks[t].frequency_weight * effort(vocab[m[t]]);
        den += tasks[t].frequency_weight;
      }
      return den == 0 ? 1.0 : 1.0 - num / den;
    }
    case CriterionKind::recoverability: {
      int eligible = 0;
      int good = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if (!tasks[t].mutating) continue;
        ++eligible;
        good += has_undo(vocab[m[t]], vocab);
      }
      return eligible == 0 ? 1.0 : double(good) / eligible;
    }
    case CriterionKind::directness: {
      int eligible = 0;
      int good = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if (!direct_candidate(tasks[t])) continue;
        ++eligible;
        good += vocab[m[t]].relation.kind() != RelationKind::none;
      }
      return eligible == 0 ? 1.0 : double(good) / eligible;
    }
    case CriterionKind::continuity: {
      if (k == 0) return 1.0;
      int good = 0;
      for (std::size_t t = 0; t < k; ++t) {
        const auto& tag = tasks[t].mode_tag;
        good += tag.frequency() == Frequency::varying_all || *tag.mode() == mode_of(vocab[m[t]]);
      }
      return double(good) / k;
    }
    case CriterionKind::custom:
      break;
  }
  return -1.0;
}

long double quality(std::span<const double> scores, std::span<const double> alphas) {
  long double sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) sum += (long double)alphas[i] * scores[i];
  return sum / scores.size();
}

namespace {

struct Draft {
  Modality modality;
  std::map<std::string, std::string> values;
  ObjectRelation relation;
  DeviceMultiplicity multiplicity;

  std::optional<std::string> slot(const std::string& name) const {
    if (name == "points") return std::to_string(multiplicity.points);
    if (name == "hands") return std::to_string(multiplicity.hands);
    if (name == "users") return std::to_string(multiplicity.users);
    if (name == "modality") return std::string(to_string(modality));
    if (name == "object-relation") return std::string(to_string(relation.kind()));
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

bool test(const ValuePredicate& p, const std::string& v) {
  using Op = ValuePredicate::Op;
  if (p.op == Op::equals) return v == p.values[0];
  if (p.op == Op::not_equals) return v != p.values[0];
  if (p.op == Op::any_of) return std::count(p.values.begin(), p.values.end(), v) > 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    return used == v.size() && n >= p.bound;
  } catch (const std::exception&) {
    return false;
  }
}

bool admissible(const Draft& d, const std::vector<Constraint>& constraints) {
  for (const Constraint& c : constraints) {
    auto then_value = d.slot(c.consequence.dimension);
    if (!then_value) continue;
    if (c.condition) {
      auto if_value = d.slot(c.condition->dimension);
      if (!if_value || !test(*c.condition, *if_value)) continue;
    }
    if (!test(c.consequence, *then_value)) return false;
  }
  return true;
}

}  // namespace

std::uint64_t count_gestures(const VocabularySpec& spec, const std::vector<ObjectRelation>& relations,
                             const std::vector<DeviceMultiplicity>& multiplicities) {
  std::uint64_t total = 0;
  for (Modality modality : {Modality::touch, Modality::pen, Modality::tangible}) {
    std::vector<const Dimension*> dims;
    for (const Dimension& d : spec.dimensions()) {
      if (d.modalities.contains(modality)) dims.push_back(&d);
    }
    if (dims.empty()) continue;
    Draft draft{modality, {}, {}, {}};
    auto recurse = [&](auto& self, std::size_t i) -> void {
      if (i == dims.size()) {
        for (const ObjectRelation& r : relations) {
          for (const DeviceMultiplicity& mult : multiplicities) {
            draft.relation = r;
            draft.multiplicity = mult;
            total += admissible(draft, spec.constraints());
          }
        }
        return;
      }
      for (const std::string& v : dims[i]->values) {
        draft.values[dims[i]->name] = v;
        self(self, i + 1);
      }
      draft.values.erase(dims[i]->name);
    };
    recurse(recurse, 0);
  }
  return total;
}

boost::multiprecision::cpp_int falling_factorial(unsigned n, unsigned k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int product = 1;
  for (unsigned i = 0; i < k; ++i) product *= n - i;
  return product;
}

}  // namespace oracle
