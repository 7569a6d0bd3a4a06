#pragma once

#include <string>
#include <vector>

#include "pareto_qn/problem.hpp"

namespace pareto_qn {

/// Names of the built-in test problems.
std::vector<std::string> catalog_names();

/// Returns the named built-in problem. Unknown names raise
/// std::invalid_argument listing the catalog.
CompositeProblem builtin(const std::string& name);

}  // namespace pareto_qn
