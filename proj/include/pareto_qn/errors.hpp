#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pareto_qn {

// Raised when a problem definition file cannot be parsed. `where` names the
// offending field, e.g. "objectives[1].smooth.Q".
class ProblemParseError : public std::runtime_error {
 public:
  ProblemParseError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Cholesky failure on a convex combination of metric matrices. The combined
// matrix inherits positive definiteness from the members, so a failure here
// means the metric set itself is corrupted.
class MetricCorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LineSearchTrial {
  double step = 0.0;
  int worst_objective = -1;
  double violation = 0.0;  // f_i(x+step*d) - f_i(x) - step*rho*alpha, > 0 when rejected
};

// Armijo search ran out of trial steps. An exact subproblem direction admits
// an acceptable step, so this signals an inexact direction or an oracle that
// disagrees with its own gradient.
class LineSearchError : public std::runtime_error {
 public:
  explicit LineSearchError(std::vector<LineSearchTrial> trials)
      : std::runtime_error("Armijo line search exhausted max_backtracks"),
        trials_(std::move(trials)) {}

  const std::vector<LineSearchTrial>& trials() const { return trials_; }

 private:
  std::vector<LineSearchTrial> trials_;
};

}  // namespace pareto_qn
