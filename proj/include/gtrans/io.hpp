#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtrans/core.hpp"

namespace gtrans {

inline constexpr int kSchemaVersion = 1;

/// Either explicit point sets (delta = b - a) or bare displacements.
struct InstanceFile {
  DisplacementSet delta;
  std::optional<std::vector<Vector>> points_a;
  std::optional<std::vector<Vector>> points_b;
  std::optional<GroupFamily> family;
  nlohmann::json metadata = nlohmann::json::object();

  static InstanceFile from_deltas(DisplacementSet delta);
  static InstanceFile from_points(std::vector<Vector> a, std::vector<Vector> b);

  /// Start positions; the origin for every point when only deltas were given.
  std::vector<Vector> start() const;
  /// End positions, start + delta.
  std::vector<Vector> end() const;
};

/// Ordered stages; each lists the groups (0-based) moved together.
using StageSchedule = std::vector<std::vector<std::size_t>>;

struct SolutionFile {
  std::string variant;
  Transformation transformation;
  CostReport cost;
  nlohmann::json parameters = nlohmann::json::object();
  StageSchedule stages;
};

/// Accepted variant names.
const std::vector<std::string>& solution_variants();

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j, std::size_t expected_dimension);

nlohmann::json instance_to_json(const InstanceFile& instance);
InstanceFile instance_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const SolutionFile& solution);
SolutionFile solution_from_json(const nlohmann::json& j);

/// Text I/O; parse and shape errors surface as MalformedInstance.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

InstanceFile load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const InstanceFile& instance);
SolutionFile load_solution(const std::filesystem::path& path);
void save_solution(const std::filesystem::path& path, const SolutionFile& solution);

/// Shortest decimal string that reads back as the same double.
std::string format_double(double value);

}  // namespace gtrans
