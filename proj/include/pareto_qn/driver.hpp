#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pareto_qn/linalg.hpp"
#include "pareto_qn/linesearch.hpp"
#include "pareto_qn/metric_set.hpp"

namespace pareto_qn {

class CompositeProblem;

enum class SolveStatus { StationaryPoint, MaxIters, LineSearchFailure, InexactSubproblem };

std::string_view to_string(SolveStatus status);

struct SolverConfig {
  ArmijoParams armijo;
  UpdateRule rule = UpdateRule::Bfgs;
  double huang_phi = 0.0;
  double omega = 1.0;  // accepted for interface fidelity; has no effect
  double tol_d = 1e-8;  // stop when ||d(x^k)|| <= tol_d
  // Stop when alpha(x^k) >= -tol_alpha. Capped at sigma_k * tol_d^2 / 2 at
  // run time, which makes the two stop tests equivalent certificates and
  // guarantees ||d|| <= tol_d at a stationary stop.
  double tol_alpha = 1e-12;
  int max_iters = 500;
  double tol_gap = 1e-10;          // subproblem duality-gap tolerance
  int max_subproblem_iters = 10000;
  std::uint64_t seed = 0;  // multistart sampling
};

/// One row of the iterate history: the subproblem outcome at x^k and, for
/// non-terminal records, the step that produced x^{k+1}.
struct IterateRecord {
  int k = 0;
  Vec x;
  Vec F;
  Vec d;
  double alpha = 0.0;
  double kkt_residual = 0.0;
  double sub_gap = 0.0;
  int sub_iterations = 0;
  double sigma = 0.0;  // metric eigenvalue floor when the subproblem was solved
  // Step fields; zero on the terminal record (no step taken).
  double step = 0.0;
  int backtracks = 0;
  double step_normd_sq = 0.0;  // lambda_k * ||d^k||^2
  Vec curvature;               // s'y_i per objective; empty on the terminal record
  int skips = 0;
  int resets = 0;
};

struct RunReport {
  SolveStatus status = SolveStatus::MaxIters;
  std::vector<IterateRecord> iterates;
  int iterations = 0;  // steps taken
  Vec final_x;
  Vec final_F;
  double final_norm_d = 0.0;
  double final_alpha = 0.0;
  double final_kkt = 0.0;
  double cumulative_step_normd_sq = 0.0;
  double sigma_min = 0.0;  // smallest metric floor seen across the run
  SolverConfig config;
};

/// Runs the quasi-Newton loop from x0: solve the direction subproblem, stop
/// on ||d|| <= tol_d or alpha >= -tol_alpha, otherwise Armijo step and metric
/// update. Line-search failures and inexact subproblems become statuses.
RunReport solve(const CompositeProblem& p, const Vec& x0, const SolverConfig& cfg = {});

struct Certificate {
  double norm_d = 0.0;
  double alpha = 0.0;
  double kkt_residual = 0.0;
  bool inexact = false;
};

/// One subproblem solve at x; quantifies stationarity of x under metrics B.
Certificate stationarity_certificate(const CompositeProblem& p, const Vec& x, const MetricSet& B,
                                     double tol_gap = 1e-10);

// ---------------------------------------------------------------------------
// Dominance and fronts

/// True iff fu <= fv componentwise and fu != fv.
bool dominates(const Vec& fu, const Vec& fv);

/// Indices of points not dominated by any other (Pareto filter).
std::vector<int> nondominated_indices(const std::vector<Vec>& objective_values);

/// Same filter, additionally collapsing points whose objective vectors agree
/// within dup_tol componentwise; the lowest index survives.
std::vector<int> nondominated_indices(const std::vector<Vec>& objective_values, double dup_tol);

struct FrontPoint {
  Vec x;
  Vec F;
  SolveStatus status = SolveStatus::MaxIters;
};

struct FrontReport {
  std::vector<FrontPoint> points;              // ordered by start index
  std::vector<int> nondominated;               // after duplicate collapse (1e-12)
  std::vector<std::vector<bool>> dominance;    // dominance[u][v]: u dominates v
  std::vector<int> failures;                   // starts with status != StationaryPoint
};

/// Runs `starts` solves from points sampled uniformly in the start box with
/// cfg.seed. Runs execute concurrently up to PARETO_QN_THREADS (or hardware
/// concurrency); the report is ordered by start index and is a deterministic
/// function of (problem, starts, cfg).
FrontReport multistart_front(const CompositeProblem& p, int starts, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Summability monitor

struct SummabilityMonitor {
  std::vector<double> series;  // lambda_k ||d^k||^2 per step; converged runs
                               // append ||d||^2 of the terminal iterate
  double tail = 0.0;           // last term, 0 for an empty series
  double worst_margin = 0.0;   // max over i of (sum - descent bound_i)
  bool bounded = true;         // worst_margin <= 1e-6
};

/// Extracts the step-size series lambda_k ||d^k||^2 and checks its sum
/// against the descent bound (2 / (rho * sigma)) * (f_i(x^0) - min_k f_i(x^k))
/// for every objective.
SummabilityMonitor summability_monitor(const RunReport& report);

}  // namespace pareto_qn
