#include "gtrans/animation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace gtrans {

StageSchedule stage_schedule(const Transformation& t) {
  const GroupFamily& family = t.family();
  std::vector<std::size_t> moving;
  for (std::size_t g = 0; g < t.size(); ++g) {
    if (!t.translation(g).is_zero()) moving.push_back(g);
  }
  StageSchedule stages;
  if (moving.empty()) return stages;

  if (const auto tree = build_hierarchy_tree(family.point_count(), family.groups())) {
    std::vector<std::size_t> depth(t.size(), 0);
    for (std::size_t g : tree->top_down_order()) {
      if (const auto p = tree->parent[g]) depth[g] = depth[*p] + 1;
    }
    std::map<std::size_t, std::vector<std::size_t>> levels;
    for (std::size_t g : moving) levels[depth[g]].push_back(g);
    for (auto& [level, groups] : levels) stages.push_back(std::move(groups));
    return stages;
  }

  std::stable_sort(moving.begin(), moving.end(), [&](std::size_t a, std::size_t b) {
    const auto& ga = family.group(a);
    const auto& gb = family.group(b);
    if (ga.size() != gb.size()) return ga.size() > gb.size();
    return ga < gb;
  });
  for (std::size_t g : moving) stages.push_back({g});
  return stages;
}

std::vector<std::vector<Vector>> stage_frames(const std::vector<Vector>& start, const Transformation& t,
                                              const StageSchedule& stages) {
  std::vector<std::vector<Vector>> frames{start};
  for (const auto& stage : stages) {
    std::vector<Vector> next = frames.back();
    for (std::size_t g : stage) {
      if (g >= t.size()) throw MalformedInstance("stage refers to a missing group");
      for (std::size_t i : t.family().group(g)) next[i] += t.translation(g);
    }
    frames.push_back(std::move(next));
  }
  return frames;
}

namespace {

constexpr double kPanel = 240.0;
constexpr double kMargin = 20.0;

struct Viewport {
  double min_x = 0, min_y = 0, scale = 1;

  double x(double v, std::size_t panel) const { return static_cast<double>(panel) * kPanel + kMargin + (v - min_x) * scale; }
  double y(double v) const { return kPanel - kMargin - (v - min_y) * scale; }
};

std::pair<double, double> planar(const Vector& v) {
  const double x = v.dimension() > 0 ? to_double(v[0]) : 0.0;
  const double y = v.dimension() > 1 ? to_double(v[1]) : 0.0;
  return {x, y};
}

const char* colour(std::size_t k) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return palette[k % 8];
}

}  // namespace

Animation export_animation(const SolutionFile& solution, const InstanceFile& instance) {
  const Transformation& t = solution.transformation;
  if (t.family().point_count() != instance.delta.size() || t.dimension() != instance.delta.dimension()) {
    throw ConstraintError("solution does not match the instance shape");
  }
  if (!check_validity(instance.delta, t)) throw ConstraintError("solution is not valid for the instance");

  const StageSchedule stages = solution.stages.empty() ? stage_schedule(t) : solution.stages;
  const auto frames = stage_frames(instance.start(), t, stages);
  const auto target = instance.end();

  Animation out;
  for (std::size_t i = 0; i < target.size(); ++i) {
    for (std::size_t k = 0; k < target[i].dimension(); ++k) {
      out.final_error = std::max(out.final_error, std::abs(to_double(frames.back()[i][k]) - to_double(target[i][k])));
    }
  }

  Viewport view;
  double max_x = -std::numeric_limits<double>::infinity(), max_y = max_x;
  view.min_x = view.min_y = std::numeric_limits<double>::infinity();
  for (const auto& frame : frames) {
    for (const auto& p : frame) {
      const auto [x, y] = planar(p);
      view.min_x = std::min(view.min_x, x);
      view.min_y = std::min(view.min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  const double extent = std::max({max_x - view.min_x, max_y - view.min_y, 1e-12});
  view.scale = (kPanel - 2 * kMargin) / extent;

  std::ostringstream svg;
  svg.precision(6);
  svg << std::fixed;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kPanel * static_cast<double>(frames.size())
      << "\" height=\"" << kPanel + 20 << "\">\n"
      << "  <defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
      << "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#333\"/></marker></defs>\n";
  for (std::size_t f = 0; f < frames.size(); ++f) {
    svg << "  <g id=\"frame-" << f << "\">\n";
    svg << "    <rect x=\"" << static_cast<double>(f) * kPanel << "\" y=\"0\" width=\"" << kPanel << "\" height=\"" << kPanel
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    svg << "    <text x=\"" << static_cast<double>(f) * kPanel + 6 << "\" y=\"" << kPanel + 14 << "\" font-size=\"12\">"
        << (f == 0 ? std::string("start") : "stage " + std::to_string(f)) << "</text>\n";
    for (const auto& p : frames[f]) {
      const auto [x, y] = planar(p);
      svg << "    <circle cx=\"" << view.x(x, f) << "\" cy=\"" << view.y(y) << "\" r=\"3\" fill=\"#555\"/>\n";
    }
    if (f > 0) {
      // Arrow from each moved group's centroid, drawn on the frame it produces.
      for (std::size_t g : stages[f - 1]) {
        double cx = 0, cy = 0;
        for (std::size_t i : t.family().group(g)) {
          const auto [x, y] = planar(frames[f - 1][i]);
          cx += x;
          cy += y;
        }
        cx /= static_cast<double>(t.family().group(g).size());
        cy /= static_cast<double>(t.family().group(g).size());
        const auto [tx, ty] = planar(t.translation(g));
        svg << "    <line x1=\"" << view.x(cx, f) << "\" y1=\"" << view.y(cy) << "\" x2=\"" << view.x(cx + tx, f)
            << "\" y2=\"" << view.y(cy + ty) << "\" stroke=\"" << colour(g) << "\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
      }
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();

  out.stages = nlohmann::json::array();
  for (std::size_t s = 0; s < stages.size(); ++s) {
    nlohmann::json moves = nlohmann::json::array();
    for (std::size_t g : stages[s]) {
      nlohmann::json idx = nlohmann::json::array();
      for (std::size_t i : t.family().group(g)) idx.push_back(i + 1);
      moves.push_back({{"group", g + 1}, {"indices", idx}, {"translation", vector_to_json(t.translation(g))}});
    }
    out.stages.push_back({{"stage", s + 1}, {"moves", moves}});
  }
  return out;
}

}  // namespace gtrans
