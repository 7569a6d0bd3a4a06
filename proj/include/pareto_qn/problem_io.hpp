#pragma once

#include <string>

#include "pareto_qn/problem.hpp"

namespace pareto_qn {

/// Parses a problem definition from JSON text. `origin` labels diagnostics
/// (usually the file name). Throws ProblemParseError on malformed input.
CompositeProblem parse_problem_json(const std::string& text, const std::string& origin);

/// Loads a problem definition file (see docs/formats.md for the schema).
CompositeProblem load_problem(const std::string& path);

}  // namespace pareto_qn
