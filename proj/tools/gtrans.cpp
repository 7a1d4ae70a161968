// Command-line front end: solve, generate, oracle, animate, verify.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "gtrans/animation.hpp"
#include "gtrans/disjoint.hpp"
#include "gtrans/free.hpp"
#include "gtrans/given_family.hpp"
#include "gtrans/hardness.hpp"
#include "gtrans/hierarchical.hpp"
#include "gtrans/io.hpp"
#include "gtrans/oracle.hpp"

using namespace gtrans;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConstraint = 2, kSizeCap = 3 };

bool is_tree_instance(const DisplacementSet& delta, const GroupFamily& family) {
  if (delta.dimension() != 1) return false;
  try {
    annotate_medians(delta, family);
    return true;
  } catch (const ConstraintError&) {
    return false;
  }
}

SolutionFile run_solver(const InstanceFile& instance, const std::string& variant, NormKind norm,
                        std::optional<double> beta, double tol) {
  const DisplacementSet& delta = instance.delta;
  const std::size_t d = delta.dimension();
  SolutionFile out{"", Transformation::empty(delta.size(), d, FamilyKind::free), {}, json::object(), {}};
  out.parameters["norm"] = to_string(norm);
  out.parameters["tol"] = tol;

  if (variant == "mcdt" || variant == "mldt") {
    out.transformation = solve_disjoint(delta);
  } else if (variant == "mlgt") {
    if (!instance.family) throw ConstraintError("mlgt needs a family in the instance file");
    if (is_tree_instance(delta, *instance.family)) {
      out.transformation = solve_mlgt_hierarchy_1d(delta, *instance.family);
      out.parameters["method"] = "tree-median";
    } else {
      ConvexOptions options;
      options.tol = tol;
      const ConvexResult r = solve_mlgt_convex_report(delta, *instance.family, norm, options);
      out.transformation = r.transformation;
      out.parameters["method"] = r.exact ? "exact-lp" : "admm";
      out.parameters["lower_bound"] = format_double(r.lower_bound);
      out.parameters["iterations"] = r.iterations;
    }
  } else if (variant == "mcht") {
    out.transformation = solve_mcht(delta);
  } else if (variant == "mlht") {
    if (d == 1) {
      out.transformation = solve_mlht_1d(delta);
    } else if (d == 2 && norm == NormKind::euclidean) {
      out.transformation = solve_mlht_2d_exact_tiny(delta, std::min(tol, 1e-6));
      out.parameters["method"] = "steiner-enumeration";
    } else {
      throw ConstraintError("mlht supports d = 1, or d = 2 with the Euclidean norm");
    }
  } else if (variant == "mlft") {
    if (d == 1) {
      out.transformation = solve_mlft_1d(delta);
    } else if (norm == NormKind::manhattan) {
      out.transformation = solve_manhattan_mlft(delta);
    } else {
      throw ConstraintError("exact Euclidean mlft is only available through 'oracle'; try --variant approx");
    }
  } else if (variant == "approx") {
    if (d != 2) throw ConstraintError("approx needs a two-dimensional instance");
    norm = NormKind::euclidean;
    out.parameters["norm"] = "euclidean";
    if (beta) {
      out.transformation = solve_beta_manhattan_mlft(delta, *beta);
      out.parameters["beta"] = *beta;
    } else {
      out.transformation = solve_euclidean_mlft_approx(delta);
      out.parameters["beta"] = "best of 0 and pi/4";
    }
  } else {
    throw ConstraintError("unknown variant '" + variant + "'");
  }
  out.variant = variant;
  for (auto& c : out.variant) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  out.cost = evaluate_cost(delta, out.transformation, norm);
  out.stages = stage_schedule(out.transformation);
  return out;
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInstance("cannot open graph file " + path);
  Graph g;
  bool have_count = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<long long> nums;
    long long v;
    while (fields >> v) nums.push_back(v);
    if (!fields.eof()) throw MalformedInstance("graph line " + std::to_string(line_no) + ": expected integers");
    if (nums.empty()) continue;
    if (!have_count) {
      if (nums.size() != 1 || nums[0] < 0) throw MalformedInstance("graph file must start with the vertex count");
      g.vertex_count = static_cast<std::size_t>(nums[0]);
      have_count = true;
      continue;
    }
    if (nums.size() != 2 || nums[0] < 1 || nums[1] < 1) {
      throw MalformedInstance("graph line " + std::to_string(line_no) + ": expected 'u v' with 1-based vertices");
    }
    g.edges.emplace_back(static_cast<std::size_t>(nums[0] - 1), static_cast<std::size_t>(nums[1] - 1));
  }
  if (!have_count) throw MalformedInstance("graph file is empty");
  try {
    g.validate();
  } catch (const ConstraintError& e) {
    throw MalformedInstance(std::string("graph file: ") + e.what());
  }
  return g;
}

InstanceFile generate(const std::string& kind, std::size_t samples, const std::string& graph_path, std::size_t n,
                      std::size_t d, long long range, std::uint64_t seed) {
  if (kind == "arcs") {
    InstanceFile inst = InstanceFile::from_deltas(build_arc_instance(samples));
    inst.metadata = {{"generator", "arcs"}, {"samples_per_arc", samples}};
    return inst;
  }
  if (kind == "vc-gadget") {
    if (graph_path.empty()) throw MalformedInstance("vc-gadget needs --graph");
    const Graph g = read_graph(graph_path);
    InstanceFile inst = InstanceFile::from_deltas(encode_vertex_cover(g));
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u + 1, v + 1});
    inst.metadata = {{"generator", "vc-gadget"}, {"vertices", g.vertex_count}, {"edges", edges}};
    return inst;
  }
  if (kind == "random") {
    if (n == 0 || d == 0) throw MalformedInstance("random needs --n and --d at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-static_cast<long>(range), static_cast<long>(range));
    std::vector<Vector> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      Vector p(d), q(d);
      for (std::size_t k = 0; k < d; ++k) {
        p[k] = coord(rng);
        q[k] = coord(rng);
      }
      a.push_back(std::move(p));
      b.push_back(std::move(q));
    }
    InstanceFile inst = InstanceFile::from_points(std::move(a), std::move(b));
    inst.metadata = {{"generator", "random"}, {"seed", seed}, {"range", range}};
    return inst;
  }
  throw MalformedInstance("unknown generator kind '" + kind + "'");
}

SolutionFile run_oracle(const InstanceFile& instance, const std::string& problem, std::size_t max_groups, double tol,
                        double budget_seconds, NormKind norm) {
  const OracleBudget budget{budget_seconds};
  SolutionFile out{"", Transformation::empty(instance.delta.size(), instance.delta.dimension(), FamilyKind::free), {},
                   json::object(), {}};
  out.parameters["problem"] = problem;
  out.parameters["budget_seconds"] = budget_seconds;
  if (problem == "mlft") {
    const auto r = oracle_mlft_report(instance.delta, max_groups, tol, norm, budget);
    out.variant = "ORACLE-MLFT";
    out.transformation = r.transformation;
    out.parameters["max_groups"] = max_groups;
    out.parameters["lower_bound"] = format_double(r.lower_bound);
    out.parameters["families_tried"] = r.families_tried;
  } else if (problem == "mcft" || problem == "mcft-monotone") {
    const auto r = oracle_mcft_report(instance.delta, problem == "mcft-monotone", budget);
    out.variant = "ORACLE-MCFT";
    out.transformation = r.transformation;
  } else if (problem == "mcht") {
    const auto r = oracle_laminar_mcht_report(instance.delta, budget);
    out.variant = "ORACLE-MCHT";
    out.transformation = r.transformation;
  } else {
    throw ConstraintError("unknown oracle problem '" + problem + "'");
  }
  out.cost = evaluate_cost(instance.delta, out.transformation, norm);
  out.stages = stage_schedule(out.transformation);
  return out;
}

template <typename F>
int guarded(F&& body) {
  try {
    body();
    return kOk;
  } catch (const ConstraintError& e) {
    std::cerr << "constraint error: " << e.what() << '\n';
    return kConstraint;
  } catch (const SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << '\n';
    return kSizeCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group translations between two labelled point sets"};
  app.require_subcommand(1);

  std::string input, output, variant, norm_text = "euclidean";
  std::optional<double> beta;
  double tol = 1e-8;
  auto* solve = app.add_subcommand("solve", "Solve one problem variant and write a solution file");
  solve->add_option("--variant", variant, "Problem variant")
      ->required()
      ->check(CLI::IsMember({"mcdt", "mldt", "mlgt", "mcht", "mlht", "mlft", "approx"}));
  solve->add_option("--input", input, "Instance file")->required();
  solve->add_option("--output", output, "Solution file")->required();
  solve->add_option("--norm", norm_text, "Length norm")->check(CLI::IsMember({"euclidean", "manhattan"}));
  solve->add_option("--beta", beta, "Rotation angle in radians (approx only)");
  solve->add_option("--tol", tol, "Convex solver tolerance")->check(CLI::PositiveNumber);

  std::string kind, graph_path;
  std::size_t samples = 16, n = 10, d = 2;
  long long range = 10;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Write a generated instance file");
  gen->add_option("--kind", kind, "Generator")->required()->check(CLI::IsMember({"arcs", "vc-gadget", "random"}));
  gen->add_option("--samples", samples, "Samples per arc (arcs)")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  gen->add_option("--graph", graph_path, "Edge-list file (vc-gadget)");
  gen->add_option("--n", n, "Point count (random)");
  gen->add_option("--d", d, "Dimension (random)");
  gen->add_option("--range", range, "Coordinates drawn from [-range, range] (random)")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "Random seed (random)");
  gen->add_option("--output", output, "Instance file")->required();

  std::string problem;
  std::size_t max_groups = 7;
  double budget = 600.0;
  auto* orc = app.add_subcommand("oracle", "Exhaustive search on tiny instances");
  orc->add_option("--problem", problem, "Problem")
      ->required()
      ->check(CLI::IsMember({"mlft", "mcft", "mcft-monotone", "mcht"}));
  orc->add_option("--input", input, "Instance file")->required();
  orc->add_option("--output", output, "Solution file")->required();
  orc->add_option("--max-groups", max_groups, "Largest family size (mlft)");
  orc->add_option("--norm", norm_text, "Length norm")->check(CLI::IsMember({"euclidean", "manhattan"}));
  orc->add_option("--tol", tol, "Convex solver tolerance")->check(CLI::PositiveNumber);
  orc->add_option("--budget", budget, "Time budget in seconds")->check(CLI::PositiveNumber);

  std::string solution_path, svg_path, stages_path;
  auto* anim = app.add_subcommand("animate", "Export the staged animation as SVG");
  anim->add_option("--instance", input, "Instance file")->required();
  anim->add_option("--solution", solution_path, "Solution file")->required();
  anim->add_option("--svg", svg_path, "SVG output")->required();
  anim->add_option("--stages", stages_path, "JSON stage list output");

  auto* verify = app.add_subcommand("verify", "Reload a solution and check it against an instance");
  verify->add_option("--instance", input, "Instance file")->required();
  verify->add_option("--solution", solution_path, "Solution file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*solve) {
    return guarded([&] {
      const InstanceFile instance = load_instance(input);
      const SolutionFile s = run_solver(instance, variant, parse_norm(norm_text), beta, tol);
      save_solution(output, s);
      std::cout << s.variant << ": " << s.cost.cardinality << " groups, length " << format_double(s.cost.length) << '\n';
    });
  }
  if (*gen) {
    return guarded([&] {
      save_instance(output, generate(kind, samples, graph_path, n, d, range, seed));
    });
  }
  if (*orc) {
    return guarded([&] {
      const InstanceFile instance = load_instance(input);
      const SolutionFile s = run_oracle(instance, problem, max_groups, tol, budget, parse_norm(norm_text));
      save_solution(output, s);
      std::cout << s.variant << ": " << s.cost.cardinality << " groups, length " << format_double(s.cost.length) << '\n';
    });
  }
  if (*anim) {
    return guarded([&] {
      const Animation a = export_animation(load_solution(solution_path), load_instance(input));
      std::ofstream svg(svg_path);
      if (!svg) throw Error("cannot write " + svg_path);
      svg << a.svg;
      if (!stages_path.empty()) write_json_file(stages_path, a.stages);
      std::cout << a.stages.size() << " stages, final error " << format_double(a.final_error) << '\n';
    });
  }
  return guarded([&] {
    const InstanceFile instance = load_instance(input);
    const SolutionFile s = load_solution(solution_path);
    if (s.transformation.family().point_count() != instance.delta.size() ||
        s.transformation.dimension() != instance.delta.dimension() || !check_validity(instance.delta, s.transformation)) {
      throw ConstraintError("solution is not valid for the instance");
    }
    const FamilyCheck fc = validate_family_kind(s.transformation.family());
    if (!fc) throw ConstraintError("family violates its kind: " + fc.message);
    std::cout << "valid: " << s.cost.cardinality << " groups\n";
  });
}
