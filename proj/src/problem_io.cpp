#include "pareto_qn/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pareto_qn/errors.hpp"

namespace pareto_qn {

namespace {

using nlohmann::json;

const json& require(const json& node, const std::string& key, const std::string& path) {
  auto it = node.find(key);
  if (it == node.end()) throw ProblemParseError(path + "." + key, "missing field");
  return *it;
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ProblemParseError(path, "expected a number");
  return node.get<double>();
}

Vec as_vector(const json& node, int expected, const std::string& path) {
  if (!node.is_array()) throw ProblemParseError(path, "expected an array of numbers");
  if (expected >= 0 && static_cast<int>(node.size()) != expected) {
    throw ProblemParseError(path, "expected " + std::to_string(expected) + " numbers, got " +
                                      std::to_string(node.size()));
  }
  Vec v(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    v[static_cast<int>(i)] = as_number(node[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

// Dense row-major n x n matrix.
Mat as_matrix(const json& node, int n, const std::string& path) {
  const Vec flat = as_vector(node, n * n, path);
  Mat M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = flat[r * n + c];
  return M;
}

SmoothOracle parse_smooth(const json& node, int n, const std::string& path) {
  if (!node.is_object()) throw ProblemParseError(path, "expected an object");
  const std::string kind = require(node, "kind", path).get<std::string>();
  const double modulus = as_number(require(node, "modulus", path), path + ".modulus");
  const Mat Q = as_matrix(require(node, "Q", path), n, path + ".Q");
  const Vec q = as_vector(require(node, "q", path), n, path + ".q");
  const double c = node.contains("c") ? as_number(node["c"], path + ".c") : 0.0;
  try {
    if (kind == "quadratic") return make_quadratic(Q, q, c, modulus);
    if (kind == "logquad") {
      const Vec a = as_vector(require(node, "a", path), n, path + ".a");
      const double b = node.contains("b") ? as_number(node["b"], path + ".b") : 0.0;
      return make_logquad(Q, q, c, a, b, modulus);
    }
  } catch (const std::invalid_argument& e) {
    throw ProblemParseError(path, e.what());
  }
  throw ProblemParseError(path + ".kind", "unknown kind '" + kind + "' (quadratic | logquad)");
}

MaxAffine parse_nonsmooth(const json& node, int n, const std::string& path) {
  if (!node.is_object()) throw ProblemParseError(path, "expected an object");
  const json& pieces_node = require(node, "pieces", path);
  if (!pieces_node.is_array() || pieces_node.empty()) {
    throw ProblemParseError(path + ".pieces", "expected a non-empty array of [[a...], b] pairs");
  }
  std::vector<AffinePiece> pieces;
  for (std::size_t j = 0; j < pieces_node.size(); ++j) {
    const std::string ppath = path + ".pieces[" + std::to_string(j) + "]";
    const json& pj = pieces_node[j];
    if (!pj.is_array() || pj.size() != 2) {
      throw ProblemParseError(ppath, "expected [[a...], b]");
    }
    AffinePiece piece;
    piece.a = as_vector(pj[0], n, ppath + "[0]");
    piece.b = as_number(pj[1], ppath + "[1]");
    pieces.push_back(std::move(piece));
  }
  return MaxAffine(n, std::move(pieces));
}

}  // namespace

CompositeProblem parse_problem_json(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemParseError(origin, e.what());
  }
  if (!root.is_object()) throw ProblemParseError(origin, "top level must be an object");

  const int n = [&] {
    const json& d = require(root, "dim", origin);
    if (!d.is_number_integer() || d.get<int>() <= 0) {
      throw ProblemParseError(origin + ".dim", "expected a positive integer");
    }
    return d.get<int>();
  }();

  const json& objs_node = require(root, "objectives", origin);
  if (!objs_node.is_array() || objs_node.size() < 2) {
    throw ProblemParseError(origin + ".objectives", "expected an array of at least 2 objectives");
  }
  std::vector<CompositeObjective> objectives;
  for (std::size_t i = 0; i < objs_node.size(); ++i) {
    const std::string path = origin + ".objectives[" + std::to_string(i) + "]";
    const json& node = objs_node[i];
    if (!node.is_object()) throw ProblemParseError(path, "expected an object");
    SmoothOracle smooth = parse_smooth(require(node, "smooth", path), n, path + ".smooth");
    MaxAffine nonsmooth = node.contains("nonsmooth")
                              ? parse_nonsmooth(node["nonsmooth"], n, path + ".nonsmooth")
                              : MaxAffine::zero(n);
    objectives.push_back({std::move(smooth), std::move(nonsmooth)});
  }

  const json& box_node = require(root, "start_box", origin);
  StartBox box;
  box.lo = as_vector(require(box_node, "lo", origin + ".start_box"), n, origin + ".start_box.lo");
  box.hi = as_vector(require(box_node, "hi", origin + ".start_box"), n, origin + ".start_box.hi");

  const std::string name = root.contains("name") ? root["name"].get<std::string>() : origin;
  try {
    return CompositeProblem(name, std::move(objectives), std::move(box));
  } catch (const std::invalid_argument& e) {
    throw ProblemParseError(origin, e.what());
  }
}

CompositeProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_json(buffer.str(), path);
}

}  // namespace pareto_qn
