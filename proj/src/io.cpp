#include "gtrans/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gtrans {

using nlohmann::json;

namespace {

Scalar scalar_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return parse_scalar(j.dump());
    if (j.is_number_float()) return from_double(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw MalformedInstance(std::string("bad number: ") + e.what());
  }
  throw MalformedInstance("expected a number, got " + j.dump());
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInstance(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Vector> vectors_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw MalformedInstance(std::string(what) + " must be a nonempty list");
  std::vector<Vector> out;
  const std::size_t d = j.front().is_array() ? j.front().size() : 0;
  for (const auto& row : j) out.push_back(vector_from_json(row, d));
  return out;
}

json vectors_to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(v));
  return out;
}

json groups_to_json(const GroupFamily& family) {
  json out = json::array();
  for (const auto& g : family.groups()) {
    json idx = json::array();
    for (std::size_t i : g) idx.push_back(i + 1);
    out.push_back(idx);
  }
  return out;
}

IndexSet indices_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw MalformedInstance("group indices must be a list");
  IndexSet out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw MalformedInstance("group index must be an integer");
    const auto v = x.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw MalformedInstance("group index " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

void check_schema(const json& j) {
  if (!j.is_object()) throw MalformedInstance("top level must be an object");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion) {
    throw MalformedInstance("unsupported schema_version " + j.at("schema_version").dump());
  }
}

}  // namespace

InstanceFile InstanceFile::from_deltas(DisplacementSet delta) { return InstanceFile{std::move(delta), {}, {}, {}, json::object()}; }

InstanceFile InstanceFile::from_points(std::vector<Vector> a, std::vector<Vector> b) {
  DisplacementSet delta = DisplacementSet::from_points(a, b);
  return InstanceFile{std::move(delta), std::move(a), std::move(b), {}, json::object()};
}

std::vector<Vector> InstanceFile::start() const {
  if (points_a) return *points_a;
  return std::vector<Vector>(delta.size(), Vector::zero(delta.dimension()));
}

std::vector<Vector> InstanceFile::end() const {
  if (points_b) return *points_b;
  std::vector<Vector> out = start();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta[i];
  return out;
}

const std::vector<std::string>& solution_variants() {
  static const std::vector<std::string> names{"MCDT", "MLDT", "MLGT", "MCHT", "MLHT", "MLFT", "APPROX",
                                              "ORACLE-MLFT", "ORACLE-MCFT", "ORACLE-MCHT"};
  return names;
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& c : v.components()) out.push_back(to_string(c));
  return out;
}

Vector vector_from_json(const json& j, std::size_t expected_dimension) {
  if (!j.is_array()) throw MalformedInstance("vector must be a list, got " + j.dump());
  if (j.size() != expected_dimension) {
    throw MalformedInstance("vector has dimension " + std::to_string(j.size()) + ", expected " +
                            std::to_string(expected_dimension));
  }
  std::vector<Scalar> comps;
  for (const auto& c : j) comps.push_back(scalar_from_json(c));
  return Vector(std::move(comps));
}

json instance_to_json(const InstanceFile& instance) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["dimension"] = instance.delta.dimension();
  if (instance.points_a && instance.points_b) {
    out["points_a"] = vectors_to_json(*instance.points_a);
    out["points_b"] = vectors_to_json(*instance.points_b);
  } else {
    out["deltas"] = vectors_to_json(instance.delta.deltas());
  }
  if (instance.family) {
    out["family"] = {{"kind", to_string(instance.family->kind())}, {"groups", groups_to_json(*instance.family)}};
  }
  out["metadata"] = instance.metadata;
  return out;
}

InstanceFile instance_from_json(const json& j) {
  check_schema(j);
  std::optional<InstanceFile> out;
  if (j.contains("points_a") || j.contains("points_b")) {
    if (j.contains("deltas")) throw MalformedInstance("give either deltas or points_a/points_b, not both");
    auto a = vectors_from_json(require(j, "points_a"), "points_a");
    auto b = vectors_from_json(require(j, "points_b"), "points_b");
    if (a.size() != b.size()) throw MalformedInstance("points_a and points_b differ in length");
    out = InstanceFile::from_points(std::move(a), std::move(b));
  } else {
    out = InstanceFile::from_deltas(DisplacementSet(vectors_from_json(require(j, "deltas"), "deltas")));
  }
  if (j.contains("dimension") && j.at("dimension") != out->delta.dimension()) {
    throw MalformedInstance("declared dimension does not match the vectors");
  }
  if (j.contains("family") && !j.at("family").is_null()) {
    const json& f = j.at("family");
    FamilyKind kind = FamilyKind::given;
    if (f.contains("kind")) {
      try {
        kind = parse_family_kind(f.at("kind").get<std::string>());
      } catch (const std::exception& e) {
        throw MalformedInstance(e.what());
      }
    }
    std::vector<IndexSet> groups;
    for (const auto& g : require(f, "groups")) groups.push_back(indices_from_json(g, out->delta.size()));
    try {
      out->family = GroupFamily(out->delta.size(), std::move(groups), kind);
    } catch (const MalformedInstance&) {
      throw;
    } catch (const Error& e) {
      throw MalformedInstance(e.what());
    }
  }
  if (j.contains("metadata")) out->metadata = j.at("metadata");
  return std::move(*out);
}

json solution_to_json(const SolutionFile& s) {
  const Transformation& t = s.transformation;
  json groups = json::array();
  for (std::size_t g = 0; g < t.size(); ++g) {
    json idx = json::array();
    for (std::size_t i : t.family().group(g)) idx.push_back(i + 1);
    groups.push_back({{"indices", idx}, {"translation", vector_to_json(t.translation(g))}});
  }
  json cost{{"cardinality", s.cost.cardinality}, {"norm", to_string(s.cost.norm)}, {"length", format_double(s.cost.length)}};
  if (s.cost.exact_length) cost["exact_length"] = to_string(*s.cost.exact_length);
  if (s.cost.valid) cost["valid"] = *s.cost.valid;
  json stages = json::array();
  for (const auto& stage : s.stages) {
    json row = json::array();
    for (std::size_t g : stage) row.push_back(g + 1);
    stages.push_back(row);
  }
  return json{{"schema_version", kSchemaVersion},
              {"variant", s.variant},
              {"n", t.family().point_count()},
              {"dimension", t.dimension()},
              {"family_kind", to_string(t.family().kind())},
              {"groups", groups},
              {"cost", cost},
              {"parameters", s.parameters},
              {"stages", stages}};
}

SolutionFile solution_from_json(const json& j) {
  check_schema(j);
  const std::string variant = require(j, "variant").get<std::string>();
  const auto& names = solution_variants();
  if (std::find(names.begin(), names.end(), variant) == names.end()) {
    throw MalformedInstance("unknown variant '" + variant + "'");
  }
  const auto n = require(j, "n").get<std::size_t>();
  const auto d = require(j, "dimension").get<std::size_t>();
  FamilyKind kind;
  try {
    kind = parse_family_kind(require(j, "family_kind").get<std::string>());
  } catch (const MalformedInstance&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInstance(e.what());
  }
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (const auto& g : require(j, "groups")) {
    groups.push_back(indices_from_json(require(g, "indices"), n));
    tau.push_back(vector_from_json(require(g, "translation"), d));
  }
  std::optional<Transformation> t;
  try {
    t.emplace(GroupFamily(n, std::move(groups), kind), std::move(tau), d);
  } catch (const MalformedInstance&) {
    throw;
  } catch (const Error& e) {
    throw MalformedInstance(e.what());
  }

  CostReport cost;
  const json& c = require(j, "cost");
  cost.cardinality = require(c, "cardinality").get<std::size_t>();
  cost.norm = parse_norm(require(c, "norm").get<std::string>());
  cost.length = std::stod(require(c, "length").get<std::string>());
  if (c.contains("exact_length")) cost.exact_length = scalar_from_json(c.at("exact_length"));
  if (c.contains("valid")) cost.valid = c.at("valid").get<bool>();
  const CostReport recomputed = evaluate_cost(*t, cost.norm);
  cost.per_group = recomputed.per_group;

  StageSchedule stages;
  if (j.contains("stages")) {
    for (const auto& row : j.at("stages")) {
      std::vector<std::size_t> stage;
      for (const auto& g : row) {
        const auto k = g.get<std::size_t>();
        if (k < 1 || k > t->size()) throw MalformedInstance("stage refers to a missing group");
        stage.push_back(k - 1);
      }
      stages.push_back(std::move(stage));
    }
  }
  json params = j.contains("parameters") ? j.at("parameters") : json::object();
  return SolutionFile{variant, std::move(*t), std::move(cost), std::move(params), std::move(stages)};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInstance("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInstance(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

InstanceFile load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw MalformedInstance(path.string() + ": " + e.what());
  }
}

void save_instance(const std::filesystem::path& path, const InstanceFile& instance) {
  write_json_file(path, instance_to_json(instance));
}

SolutionFile load_solution(const std::filesystem::path& path) {
  try {
    return solution_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw MalformedInstance(path.string() + ": " + e.what());
  }
}

void save_solution(const std::filesystem::path& path, const SolutionFile& solution) {
  write_json_file(path, solution_to_json(solution));
}

}  // namespace gtrans
