#include "pareto_qn/linesearch.hpp"

#include <stdexcept>
#include <vector>

#include "pareto_qn/errors.hpp"
#include "pareto_qn/problem.hpp"

namespace pareto_qn {

ArmijoResult armijo(const CompositeProblem& p, const Vec& x, const Vec& d, double alpha,
                    const ArmijoParams& params) {
  if (!(params.rho > 0.0 && params.rho < 1.0)) {
    throw std::invalid_argument("armijo: rho must lie in (0, 1)");
  }
  if (!(params.zeta > 0.0 && params.zeta < 1.0)) {
    throw std::invalid_argument("armijo: zeta must lie in (0, 1)");
  }
  if (params.max_backtracks < 1) {
    throw std::invalid_argument("armijo: max_backtracks must be >= 1");
  }
  p.require_dim(x, "armijo");
  if (!(alpha < 0.0)) throw std::invalid_argument("armijo: alpha must be negative");
  if (!(d.norm() > 0.0)) throw std::invalid_argument("armijo: d must be nonzero");

  const Vec F0 = p.eval_F(x);
  std::vector<LineSearchTrial> trials;
  double step = 1.0;
  for (int j = 0; j < params.max_backtracks; ++j, step *= params.zeta) {
    const Vec F = p.eval_F(x + step * d);
    int worst = -1;
    double violation = 0.0;
    for (int i = 0; i < p.objective_count(); ++i) {
      const double excess = F[i] - (F0[i] + step * params.rho * alpha);
      if (excess > violation) {
        violation = excess;
        worst = i;
      }
    }
    if (worst < 0) return ArmijoResult{step, j};
    trials.push_back(LineSearchTrial{step, worst, violation});
  }
  throw LineSearchError(std::move(trials));
}

}  // namespace pareto_qn
