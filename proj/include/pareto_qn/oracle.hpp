#pragma once

#include <cstdint>
#include <vector>

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

class CompositeProblem;
class MetricSet;
struct SmoothOracle;

/// Uniform grid centered at `center` with the given half-width and spacing.
struct GridSpec {
  Vec center;
  double radius = 1.0;
  double resolution = 1e-3;
};

struct GridMinimum {
  Vec d;
  double theta = 0.0;
  std::int64_t nodes = 0;
};

/// Exhaustive evaluation of theta(x, .) over the grid; returns the minimizing
/// node (ties to the lowest flattened index). The node value is within
/// Lip * resolution of the true minimum, Lip estimated from the piece data.
/// Only n <= 3 is accepted. Large grids are split across threads; the result
/// is independent of the evaluation order.
GridMinimum grid_min_theta(const CompositeProblem& p, const Vec& x, const MetricSet& B,
                           const GridSpec& spec);

/// Infinity-norm error between grad(x) and central differences of eval.
double fd_check_gradient(const SmoothOracle& oracle, const Vec& x, double h_fd);

/// O(N^2) Pareto filter: u survives iff no v has F(v) <= F(u), F(v) != F(u).
std::vector<int> dominance_bruteforce(const std::vector<Vec>& points);

}  // namespace pareto_qn
