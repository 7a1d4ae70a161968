#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gtrans/io.hpp"

namespace gtrans {

/// Laminar families move level by level from the roots down, all groups of
/// one depth at once. Other families move one group per stage, larger groups
/// first, ties by index list. Zero translations get no stage.
StageSchedule stage_schedule(const Transformation& t);

/// Exact positions after each stage; frames[0] is the start.
std::vector<std::vector<Vector>> stage_frames(const std::vector<Vector>& start, const Transformation& t,
                                              const StageSchedule& stages);

struct Animation {
  std::string svg;
  nlohmann::json stages;
  /// Largest coordinate gap between the last frame and B, in doubles.
  double final_error = 0.0;
};

/// SVG with one panel per frame plus a JSON stage list. Throws
/// ConstraintError when the solution is not valid for the instance.
Animation export_animation(const SolutionFile& solution, const InstanceFile& instance);

}  // namespace gtrans
