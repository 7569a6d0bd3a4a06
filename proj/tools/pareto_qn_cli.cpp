#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pareto_qn/catalog.hpp>
#include <pareto_qn/driver.hpp>
#include <pareto_qn/errors.hpp>
#include <pareto_qn/oracle.hpp>
#include <pareto_qn/problem.hpp>
#include <pareto_qn/problem_io.hpp>
#include <pareto_qn/rng.hpp>
#include <pareto_qn/subproblem.hpp>
#include <pareto_qn/trace_io.hpp>

namespace {

using namespace pareto_qn;

struct CommonOptions {
  std::string builtin_name;
  std::string problem_path;
  std::vector<double> x0;
  std::string rule = "bfgs";
  double rho = 1e-4;
  double zeta = 0.5;
  double tol_d = 1e-8;
  int max_iters = 500;
  std::uint64_t seed = 0;
  std::string out = ".";
  double huang_phi = 0.0;
};

void add_problem_options(CLI::App* cmd, CommonOptions& opt) {
  auto* b = cmd->add_option("--builtin", opt.builtin_name, "Built-in problem name");
  auto* p = cmd->add_option("--problem", opt.problem_path, "Problem definition file (JSON)");
  b->excludes(p);
  p->excludes(b);
}

void add_solver_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--x0", opt.x0, "Start point (comma list)")->delimiter(',');
  cmd->add_option("--rho", opt.rho, "Armijo sufficient-decrease factor");
  cmd->add_option("--zeta", opt.zeta, "Armijo backtracking factor");
  cmd->add_option("--tol-d", opt.tol_d, "Stop when ||d|| <= tol-d");
  cmd->add_option("--max-iters", opt.max_iters, "Iteration cap");
  cmd->add_option("--seed", opt.seed, "Seed for sampled starts");
  cmd->add_option("--out", opt.out, "Output directory");
  cmd->add_option("--huang-phi", opt.huang_phi, "Huang rule interpolation parameter");
}

CompositeProblem resolve_problem(const CommonOptions& opt) {
  if (!opt.builtin_name.empty()) return builtin(opt.builtin_name);
  if (!opt.problem_path.empty()) return load_problem(opt.problem_path);
  throw CLI::ValidationError("one of --builtin or --problem is required");
}

SolverConfig make_config(const CommonOptions& opt, const std::string& rule_name) {
  SolverConfig cfg;
  const auto rule = parse_update_rule(rule_name);
  if (!rule) {
    throw CLI::ValidationError("unknown rule '" + rule_name +
                               "' (bfgs|ssbfgs|huang|newton|identity)");
  }
  cfg.rule = *rule;
  cfg.huang_phi = opt.huang_phi;
  cfg.armijo.rho = opt.rho;
  cfg.armijo.zeta = opt.zeta;
  cfg.tol_d = opt.tol_d;
  cfg.max_iters = opt.max_iters;
  cfg.seed = opt.seed;
  return cfg;
}

Vec start_point(const CommonOptions& opt, const CompositeProblem& p) {
  if (opt.x0.empty()) return Vec(0.5 * (p.start_box().lo + p.start_box().hi));
  if (static_cast<int>(opt.x0.size()) != p.dim()) {
    throw CLI::ValidationError("--x0 must have " + std::to_string(p.dim()) + " components");
  }
  Vec x(p.dim());
  for (int i = 0; i < p.dim(); ++i) x[i] = opt.x0[static_cast<std::size_t>(i)];
  return x;
}

std::filesystem::path prepare_out(const CommonOptions& opt) {
  std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  return dir;
}

int status_exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::StationaryPoint: return 0;
    case SolveStatus::MaxIters: return 2;
    case SolveStatus::LineSearchFailure: return 3;
    case SolveStatus::InexactSubproblem: return 4;
  }
  return 2;
}

int cmd_run(const CommonOptions& opt) {
  const CompositeProblem p = resolve_problem(opt);
  const SolverConfig cfg = make_config(opt, opt.rule);
  const Vec x0 = start_point(opt, p);
  const RunReport report = solve(p, x0, cfg);
  const auto dir = prepare_out(opt);
  write_file((dir / "trace.csv").string(), trace_csv(report));
  write_file((dir / "summary.json").string(), run_summary_json(p.name(), report));
  std::printf("%s: %s after %d iterations, ||d||=%s alpha=%s kkt=%s\n", p.name().c_str(),
              std::string(to_string(report.status)).c_str(), report.iterations,
              format_double(report.final_norm_d).c_str(), format_double(report.final_alpha).c_str(),
              format_double(report.final_kkt).c_str());
  return status_exit_code(report.status);
}

int cmd_front(const CommonOptions& opt, int starts) {
  const CompositeProblem p = resolve_problem(opt);
  const SolverConfig cfg = make_config(opt, opt.rule);
  const FrontReport front = multistart_front(p, starts, cfg);
  const auto dir = prepare_out(opt);
  write_file((dir / "front.json").string(), front_json(front));
  write_file((dir / "points.csv").string(), front_csv(front));
  std::printf("%s: %d starts, %zu nondominated, %zu failures\n", p.name().c_str(), starts,
              front.nondominated.size(), front.failures.size());
  return front.failures.empty() ? 0 : 2;
}

int cmd_compare(const CommonOptions& opt, const std::vector<std::string>& rules, int starts) {
  if (rules.size() < 2) throw CLI::ValidationError("compare needs at least two --rule values");
  const CompositeProblem p = resolve_problem(opt);

  // Identical starts under every rule: the explicit --x0 if given, otherwise
  // `starts` seeded samples from the start box.
  std::vector<Vec> start_points;
  if (!opt.x0.empty()) {
    start_points.push_back(start_point(opt, p));
  } else {
    for (int s = 0; s < starts; ++s) {
      SplitMix64 rng = SplitMix64::substream(opt.seed, static_cast<std::uint64_t>(s));
      Vec x0(p.dim());
      for (int i = 0; i < p.dim(); ++i) {
        x0[i] = rng.uniform(p.start_box().lo[i], p.start_box().hi[i]);
      }
      start_points.push_back(std::move(x0));
    }
  }

  std::vector<CompareRow> rows;
  bool any_failure = false;
  for (const auto& rule_name : rules) {
    const SolverConfig cfg = make_config(opt, rule_name);
    CompareRow row;
    row.rule = rule_name;
    SolveStatus worst = SolveStatus::StationaryPoint;
    const auto t0 = std::chrono::steady_clock::now();
    for (const Vec& x0 : start_points) {
      const RunReport report = solve(p, x0, cfg);
      row.iterations += report.iterations;
      row.final_norm_d = std::max(row.final_norm_d, report.final_norm_d);
      for (const auto& rec : report.iterates) row.subproblem_iterations += rec.sub_iterations;
      if (report.status != SolveStatus::StationaryPoint) worst = report.status;
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.status = std::string(to_string(worst));
    if (worst != SolveStatus::StationaryPoint) any_failure = true;
    rows.push_back(std::move(row));
  }

  const auto dir = prepare_out(opt);
  write_file((dir / "compare.csv").string(), compare_csv(rows));
  std::printf("%-10s %10s %14s %16s %10s  %s\n", "rule", "iters", "final_norm_d", "sub_iters_total",
              "wall_ms", "status");
  for (const auto& row : rows) {
    std::printf("%-10s %10d %14.4g %16lld %10.2f  %s\n", row.rule.c_str(), row.iterations,
                row.final_norm_d, row.subproblem_iterations, row.wall_ms, row.status.c_str());
  }
  return any_failure ? 2 : 0;
}

int cmd_check(const CommonOptions& opt, int samples) {
  const CompositeProblem p = resolve_problem(opt);
  int violations = 0;

  const ValidationReport report = validate(p, samples, opt.seed);
  for (const auto& note : report.notes) std::printf("note: %s\n", note.c_str());
  for (const auto& issue : report.issues) {
    ++violations;
    std::printf("violation: objective %d, %s (measure %s) at x=[", issue.objective,
                issue.detail.c_str(), format_double(issue.measure).c_str());
    for (int i = 0; i < issue.point.size(); ++i) {
      std::printf("%s%s", i ? "," : "", format_double(issue.point[i]).c_str());
    }
    std::printf("]\n");
  }
  std::printf("validation: %d samples, %zu issues\n", report.samples, report.issues.size());

  if (p.dim() <= 3) {
    // Direction subproblem vs. the exhaustive grid oracle at a few points.
    const int points = std::min(samples, 3);
    SplitMix64 rng = SplitMix64::substream(opt.seed, 0x636865636bULL);
    for (int s = 0; s < points; ++s) {
      Vec x(p.dim());
      for (int i = 0; i < p.dim(); ++i) x[i] = rng.uniform(p.start_box().lo[i], p.start_box().hi[i]);
      const MetricSet B = MetricSet::initial(p, UpdateRule::Bfgs, x);
      const SubproblemSolution sol = pareto_qn::solve(build_pieces(p, x, B));
      const double radius = 4.0 * sol.direction.norm() + 1.0;
      const double resolution = std::max(1e-3, radius / 2000.0);
      const GridMinimum grid = grid_min_theta(p, x, B, GridSpec{Vec::Zero(p.dim()), radius, resolution});
      const double diff = std::abs(grid.theta - sol.alpha);
      const double budget = 5e-3 * std::max(1.0, radius);
      std::printf("grid check %d: |alpha_dual - alpha_grid| = %s (budget %s, gap %s)\n", s,
                  format_double(diff).c_str(), format_double(budget).c_str(),
                  format_double(sol.gap).c_str());
      if (diff > budget || sol.inexact) ++violations;
    }
  } else {
    std::printf("grid check skipped: n > 3\n");
  }
  return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Newton solver for composite multiobjective problems"};
  app.require_subcommand(1);

  CommonOptions run_opt, front_opt, compare_opt, check_opt;
  int front_starts = 20;
  int compare_starts = 5;
  int check_samples = 100;
  std::vector<std::string> compare_rules;

  auto* run = app.add_subcommand("run", "Solve from one start; writes trace.csv, summary.json");
  add_problem_options(run, run_opt);
  add_solver_options(run, run_opt);
  run->add_option("--rule", run_opt.rule, "Metric update rule");

  auto* front = app.add_subcommand("front", "Multistart Pareto front; writes front.json, points.csv");
  add_problem_options(front, front_opt);
  add_solver_options(front, front_opt);
  front->add_option("--rule", front_opt.rule, "Metric update rule");
  front->add_option("-N", front_starts, "Number of starts");

  auto* compare = app.add_subcommand("compare", "Run several update rules on identical starts");
  add_problem_options(compare, compare_opt);
  add_solver_options(compare, compare_opt);
  compare->add_option("--rule", compare_rules, "Rules to compare (repeat or comma list)")
      ->delimiter(',');
  compare->add_option("-N", compare_starts, "Sampled starts when --x0 is not given");

  auto* check = app.add_subcommand("check", "Validate a problem and cross-check the oracles");
  add_problem_options(check, check_opt);
  check->add_option("--seed", check_opt.seed, "Sampling seed");
  check->add_option("--samples", check_samples, "Validation sample count");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_opt);
    if (front->parsed()) return cmd_front(front_opt, front_starts);
    if (compare->parsed()) return cmd_compare(compare_opt, compare_rules, compare_starts);
    if (check->parsed()) return cmd_check(check_opt, check_samples);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ProblemParseError& e) {
    std::fprintf(stderr, "problem file error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
