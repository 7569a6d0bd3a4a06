#include "pareto_qn/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace pareto_qn {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

std::string trace_csv(const RunReport& report) {
  const int m = static_cast<int>(report.iterates.front().F.size());
  std::string out = "k,lambda,norm_d,alpha,kkt_residual,backtracks,sub_iters,sub_gap";
  for (int i = 1; i <= m; ++i) out += ",f_" + std::to_string(i);
  out += ",lam_normd_sq\n";
  for (const auto& rec : report.iterates) {
    out += std::to_string(rec.k);
    out += ',' + format_double(rec.step);
    out += ',' + format_double(rec.d.norm());
    out += ',' + format_double(rec.alpha);
    out += ',' + format_double(rec.kkt_residual);
    out += ',' + std::to_string(rec.backtracks);
    out += ',' + std::to_string(rec.sub_iterations);
    out += ',' + format_double(rec.sub_gap);
    for (int i = 0; i < m; ++i) out += ',' + format_double(rec.F[i]);
    out += ',' + format_double(rec.step_normd_sq);
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::ordered_json vec_to_json(const Vec& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

std::string run_summary_json(const std::string& problem_name, const RunReport& report) {
  nlohmann::ordered_json j;
  j["problem"] = problem_name;
  j["rule"] = std::string(to_string(report.config.rule));
  j["status"] = std::string(to_string(report.status));
  j["iterations"] = report.iterations;
  j["final_x"] = vec_to_json(report.final_x);
  j["final_F"] = vec_to_json(report.final_F);
  j["certificate"] = {{"norm_d", report.final_norm_d},
                      {"alpha", report.final_alpha},
                      {"kkt_residual", report.final_kkt}};
  j["cumulative_lam_normd_sq"] = report.cumulative_step_normd_sq;
  j["seed"] = report.config.seed;
  return j.dump(2) + "\n";
}

std::string front_json(const FrontReport& front) {
  nlohmann::ordered_json j;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& pt : front.points) {
    nlohmann::ordered_json entry;
    entry["x"] = vec_to_json(pt.x);
    entry["F"] = vec_to_json(pt.F);
    entry["status"] = std::string(to_string(pt.status));
    j["points"].push_back(std::move(entry));
  }
  j["nondominated"] = front.nondominated;
  j["failures"] = front.failures;
  return j.dump(2) + "\n";
}

std::string front_csv(const FrontReport& front) {
  const int n = static_cast<int>(front.points.front().x.size());
  const int m = static_cast<int>(front.points.front().F.size());
  std::string out = "start";
  for (int i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
  for (int i = 1; i <= m; ++i) out += ",f_" + std::to_string(i);
  out += ",status,nondominated\n";
  std::vector<bool> flag(front.points.size(), false);
  for (int idx : front.nondominated) flag[static_cast<std::size_t>(idx)] = true;
  for (std::size_t s = 0; s < front.points.size(); ++s) {
    const FrontPoint& pt = front.points[s];
    out += std::to_string(s);
    for (int i = 0; i < n; ++i) out += ',' + format_double(pt.x[i]);
    for (int i = 0; i < m; ++i) out += ',' + format_double(pt.F[i]);
    out += ',';
    out += to_string(pt.status);
    out += ',' + std::to_string(flag[s] ? 1 : 0);
    out += '\n';
  }
  return out;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "rule,iterations,final_norm_d,sub_iters_total,wall_ms,status\n";
  for (const auto& row : rows) {
    out += row.rule;
    out += ',' + std::to_string(row.iterations);
    out += ',' + format_double(row.final_norm_d);
    out += ',' + std::to_string(row.subproblem_iterations);
    out += ',' + format_double(row.wall_ms);
    out += ',' + row.status;
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pareto_qn
