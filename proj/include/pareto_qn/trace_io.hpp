#pragma once

#include <string>

#include "pareto_qn/driver.hpp"

namespace pareto_qn {

class CompositeProblem;

/// Shortest round-trip decimal form of a double (stable across runs).
std::string format_double(double value);

/// Per-iterate trace, columns:
///   k,lambda,norm_d,alpha,kkt_residual,backtracks,sub_iters,sub_gap,f_1..f_m,lam_normd_sq
std::string trace_csv(const RunReport& report);

/// Single-run summary (final point, certificate, status).
std::string run_summary_json(const std::string& problem_name, const RunReport& report);

/// {"points":[{"x":[...],"F":[...],"status":...}...],
///  "nondominated":[...], "failures":[...]}
std::string front_json(const FrontReport& front);

/// Per-start table, columns: start,x_1..x_n,f_1..f_m,status,nondominated
std::string front_csv(const FrontReport& front);

struct CompareRow {
  std::string rule;
  int iterations = 0;
  double final_norm_d = 0.0;
  long long subproblem_iterations = 0;
  double wall_ms = 0.0;
  std::string status;
};

/// Rule-comparison table, columns: rule,iterations,final_norm_d,sub_iters_total,wall_ms,status
std::string compare_csv(const std::vector<CompareRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace pareto_qn
