#pragma once

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

class CompositeProblem;

struct ArmijoParams {
  double rho = 1e-4;       // sufficient-decrease factor, in (0, 1)
  double zeta = 0.5;       // backtracking factor, in (0, 1)
  int max_backtracks = 60; // trial steps before giving up
};

struct ArmijoResult {
  double step = 1.0;   // accepted step length
  int backtracks = 0;  // rejected trials before acceptance
};

/// Largest step in {zeta^j : j = 0, 1, ...} with
///   f_i(x + step*d) <= f_i(x) + step*rho*alpha   for every objective,
/// trying j in ascending order. Requires alpha < 0 and d != 0. Throws
/// LineSearchError (with the trial records) once max_backtracks trials
/// have been rejected.
ArmijoResult armijo(const CompositeProblem& p, const Vec& x, const Vec& d, double alpha,
                    const ArmijoParams& params = {});

}  // namespace pareto_qn
