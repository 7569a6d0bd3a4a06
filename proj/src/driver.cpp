#include "pareto_qn/driver.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pareto_qn/errors.hpp"
#include "pareto_qn/problem.hpp"
#include "pareto_qn/rng.hpp"
#include "pareto_qn/subproblem.hpp"

namespace pareto_qn {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::StationaryPoint: return "StationaryPoint";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::LineSearchFailure: return "LineSearchFailure";
    case SolveStatus::InexactSubproblem: return "InexactSubproblem";
  }
  return "?";
}

namespace {

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tol_d > 0.0 && cfg.tol_alpha > 0.0 && cfg.tol_gap > 0.0)) {
    throw std::invalid_argument("SolverConfig: tolerances must be positive");
  }
  if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

}  // namespace

RunReport solve(const CompositeProblem& p, const Vec& x0, const SolverConfig& cfg) {
  check_config(cfg);
  p.require_dim(x0, "solve");
  if (!x0.allFinite()) throw std::invalid_argument("solve: x0 must be finite");

  RunReport report;
  report.config = cfg;
  report.sigma_min = std::numeric_limits<double>::infinity();

  MetricSet metrics = MetricSet::initial(p, cfg.rule, x0, cfg.huang_phi);
  Vec x = x0;

  for (int k = 0;; ++k) {
    const PieceModel model = build_pieces(p, x, metrics);
    const SubproblemSolution sub = pareto_qn::solve(model, cfg.tol_gap, cfg.max_subproblem_iters);

    IterateRecord rec;
    rec.k = k;
    rec.x = x;
    rec.F = p.eval_F(x);
    rec.d = sub.direction;
    rec.alpha = sub.alpha;
    rec.kkt_residual = sub.kkt_residual;
    rec.sub_gap = sub.gap;
    rec.sub_iterations = sub.dual_iterations;
    rec.sigma = metrics.sigma_floor();
    report.sigma_min = std::min(report.sigma_min, rec.sigma);

    if (sub.inexact) {
      report.iterates.push_back(std::move(rec));
      report.status = SolveStatus::InexactSubproblem;
      break;
    }
    // The alpha test is capped at sigma_k * tol_d^2 / 2 so both stop tests
    // certify stationarity at the same resolution: alpha <= -(sigma/2)||d||^2
    // then forces ||d|| <= tol_d on a stationary stop.
    const double alpha_stop = std::min(cfg.tol_alpha, 0.5 * rec.sigma * cfg.tol_d * cfg.tol_d);
    if (sub.direction.norm() <= cfg.tol_d || sub.alpha >= -alpha_stop) {
      report.iterates.push_back(std::move(rec));
      report.status = SolveStatus::StationaryPoint;
      break;
    }
    if (k == cfg.max_iters) {
      report.iterates.push_back(std::move(rec));
      report.status = SolveStatus::MaxIters;
      break;
    }

    ArmijoResult ls;
    try {
      ls = armijo(p, x, sub.direction, sub.alpha, cfg.armijo);
    } catch (const LineSearchError&) {
      report.iterates.push_back(std::move(rec));
      report.status = SolveStatus::LineSearchFailure;
      break;
    }

    const Vec s = ls.step * sub.direction;
    const Vec x_next = x + s;
    // An accepted step that fails to strictly decrease some objective is a
    // sub-resolution step: the certified improvement |alpha| has dropped
    // below what the objective values can represent. Stop here rather than
    // record a no-op iterate.
    const Vec F_next = p.eval_F(x_next);
    bool strict = true;
    for (int i = 0; i < p.objective_count() && strict; ++i) strict = F_next[i] < rec.F[i];
    if (!strict) {
      report.iterates.push_back(std::move(rec));
      report.status = SolveStatus::StationaryPoint;
      break;
    }
    std::vector<Vec> y;
    y.reserve(static_cast<std::size_t>(p.objective_count()));
    Vec curvature(p.objective_count());
    for (int i = 0; i < p.objective_count(); ++i) {
      y.push_back(p.objective(i).smooth.grad(x_next) - p.objective(i).smooth.grad(x));
      curvature[i] = s.dot(y.back());
    }
    const MetricSet::UpdateEvents events = metrics.update(s, y, p, x_next);

    rec.step = ls.step;
    rec.backtracks = ls.backtracks;
    rec.step_normd_sq = ls.step * sub.direction.squaredNorm();
    rec.curvature = std::move(curvature);
    rec.skips = events.skips;
    rec.resets = events.resets;
    report.cumulative_step_normd_sq += rec.step_normd_sq;
    report.iterates.push_back(std::move(rec));
    ++report.iterations;
    x = x_next;
  }

  const IterateRecord& last = report.iterates.back();
  report.final_x = last.x;
  report.final_F = last.F;
  report.final_norm_d = last.d.norm();
  report.final_alpha = last.alpha;
  report.final_kkt = last.kkt_residual;
  return report;
}

Certificate stationarity_certificate(const CompositeProblem& p, const Vec& x, const MetricSet& B,
                                     double tol_gap) {
  const SubproblemSolution sub = pareto_qn::solve(build_pieces(p, x, B), tol_gap);
  return Certificate{sub.direction.norm(), sub.alpha, sub.kkt_residual, sub.inexact};
}

// ---------------------------------------------------------------------------

bool dominates(const Vec& fu, const Vec& fv) {
  bool strict = false;
  for (int i = 0; i < fu.size(); ++i) {
    if (fu[i] > fv[i]) return false;
    if (fu[i] < fv[i]) strict = true;
  }
  return strict;
}

std::vector<int> nondominated_indices(const std::vector<Vec>& objective_values) {
  return nondominated_indices(objective_values, 0.0);
}

std::vector<int> nondominated_indices(const std::vector<Vec>& objective_values, double dup_tol) {
  const int n = static_cast<int>(objective_values.size());
  std::vector<int> result;
  for (int u = 0; u < n; ++u) {
    bool keep = true;
    for (int v = 0; v < n && keep; ++v) {
      if (v != u && dominates(objective_values[static_cast<std::size_t>(v)],
                              objective_values[static_cast<std::size_t>(u)])) {
        keep = false;
      }
    }
    if (keep && dup_tol > 0.0) {
      for (int v : result) {
        const Vec diff = objective_values[static_cast<std::size_t>(v)] -
                         objective_values[static_cast<std::size_t>(u)];
        if (diff.lpNorm<Eigen::Infinity>() <= dup_tol) {
          keep = false;
          break;
        }
      }
    }
    if (keep) result.push_back(u);
  }
  return result;
}

namespace {

int multistart_threads(int starts) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  if (const char* env = std::getenv("PARETO_QN_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) cap = requested;
  }
  return std::min(cap, starts);
}

}  // namespace

FrontReport multistart_front(const CompositeProblem& p, int starts, const SolverConfig& cfg) {
  if (starts < 1) throw std::invalid_argument("multistart_front: starts must be >= 1");
  check_config(cfg);

  // All starts are sampled up front from per-index substreams, so the batch
  // is reproducible regardless of how runs are scheduled.
  std::vector<Vec> initial_points;
  initial_points.reserve(static_cast<std::size_t>(starts));
  for (int s = 0; s < starts; ++s) {
    SplitMix64 rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(s));
    Vec x0(p.dim());
    for (int i = 0; i < p.dim(); ++i) x0[i] = rng.uniform(p.start_box().lo[i], p.start_box().hi[i]);
    initial_points.push_back(std::move(x0));
  }

  std::vector<FrontPoint> points(static_cast<std::size_t>(starts));
  const int workers = multistart_threads(starts);
  std::atomic<int> next{0};
  auto run_range = [&]() {
    for (int s = next.fetch_add(1); s < starts; s = next.fetch_add(1)) {
      const RunReport run = solve(p, initial_points[static_cast<std::size_t>(s)], cfg);
      points[static_cast<std::size_t>(s)] = FrontPoint{run.final_x, run.final_F, run.status};
    }
  };
  if (workers <= 1) {
    run_range();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(run_range);
    for (auto& t : pool) t.join();
  }

  FrontReport front;
  front.points = std::move(points);
  std::vector<Vec> values;
  values.reserve(front.points.size());
  for (const auto& pt : front.points) values.push_back(pt.F);
  front.nondominated = nondominated_indices(values, 1e-12);
  front.dominance.assign(static_cast<std::size_t>(starts),
                         std::vector<bool>(static_cast<std::size_t>(starts), false));
  for (int u = 0; u < starts; ++u) {
    for (int v = 0; v < starts; ++v) {
      if (u != v) {
        front.dominance[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
            dominates(values[static_cast<std::size_t>(u)], values[static_cast<std::size_t>(v)]);
      }
    }
  }
  for (int s = 0; s < starts; ++s) {
    if (front.points[static_cast<std::size_t>(s)].status != SolveStatus::StationaryPoint) {
      front.failures.push_back(s);
    }
  }
  return front;
}

SummabilityMonitor summability_monitor(const RunReport& report) {
  SummabilityMonitor monitor;
  for (const auto& rec : report.iterates) {
    if (rec.step > 0.0) monitor.series.push_back(rec.step_normd_sq);
  }
  // A stationary stop contributes the terminal direction (unit step); it is
  // the quantity whose limit the monitor certifies.
  if (report.status == SolveStatus::StationaryPoint && report.iterations > 0) {
    monitor.series.push_back(report.iterates.back().d.squaredNorm());
  }
  monitor.tail = monitor.series.empty() ? 0.0 : monitor.series.back();

  double series_sum = 0.0;
  for (double term : monitor.series) series_sum += term;

  const int m = static_cast<int>(report.iterates.front().F.size());
  const double rho = report.config.armijo.rho;
  const double sigma = report.sigma_min;
  monitor.worst_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double f0 = report.iterates.front().F[i];
    double fmin = f0;
    for (const auto& rec : report.iterates) fmin = std::min(fmin, rec.F[i]);
    const double bound = (2.0 / (rho * sigma)) * (f0 - fmin);
    monitor.worst_margin = std::max(monitor.worst_margin, series_sum - bound);
  }
  monitor.bounded = monitor.worst_margin <= 1e-6;
  return monitor;
}

}  // namespace pareto_qn
