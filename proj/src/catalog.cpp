#include "pareto_qn/catalog.hpp"

#include <stdexcept>

namespace pareto_qn {

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

StartBox box1(double lo, double hi) { return StartBox{vec1(lo), vec1(hi)}; }

StartBox box2(double lo, double hi) { return StartBox{vec2(lo, lo), vec2(hi, hi)}; }

// g(x) = 0.5 ||x - center||^2.
SmoothOracle centered_quadratic(const Vec& center) {
  const int n = static_cast<int>(center.size());
  return make_quadratic(Mat::Identity(n, n), -center, 0.5 * center.squaredNorm(), 1.0);
}

// Two objectives minimized at 0 and 1 on the line; Pareto set is [0, 1].
CompositeProblem make_biquad() {
  std::vector<CompositeObjective> objs;
  objs.push_back({centered_quadratic(vec1(0.0)), MaxAffine::zero(1)});
  objs.push_back({centered_quadratic(vec1(1.0)), MaxAffine::zero(1)});
  ParetoHint hint{ParetoHint::Kind::Segment, {vec1(0.0), vec1(1.0)}};
  return CompositeProblem("BIQUAD", std::move(objs), box1(-2.0, 3.0), hint);
}

// BIQUAD with h_i(x) = |x| added to both objectives; both minima move to 0.
CompositeProblem make_biquad_l1() {
  std::vector<CompositeObjective> objs;
  objs.push_back({centered_quadratic(vec1(0.0)), MaxAffine::abs_coordinate(1, 0)});
  objs.push_back({centered_quadratic(vec1(1.0)), MaxAffine::abs_coordinate(1, 0)});
  return CompositeProblem("BIQUAD-L1", std::move(objs), box1(-2.0, 2.0));
}

// Three quadratic bowls in the plane; Pareto set is the convex hull of the centers.
CompositeProblem make_quad_m3() {
  std::vector<CompositeObjective> objs;
  objs.push_back({centered_quadratic(vec2(0.0, 0.0)), MaxAffine::zero(2)});
  objs.push_back({centered_quadratic(vec2(1.0, 0.0)), MaxAffine::zero(2)});
  objs.push_back({centered_quadratic(vec2(0.0, 1.0)), MaxAffine::zero(2)});
  ParetoHint hint{ParetoHint::Kind::Triangle, {vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.0, 1.0)}};
  return CompositeProblem("QUAD-M3", std::move(objs), box2(-2.0, 2.0), hint);
}

// Quadratic bowls plus genuinely kinked max-of-affine parts.
CompositeProblem make_cb3_comp() {
  std::vector<CompositeObjective> objs;
  {
    MaxAffine h1(2, {AffinePiece{vec2(1.0, 1.0), -2.0}, AffinePiece{vec2(0.0, 0.0), 0.0},
                     AffinePiece{vec2(-1.0, -1.0), 0.0}});
    objs.push_back({centered_quadratic(vec2(0.0, 0.0)), std::move(h1)});
  }
  {
    MaxAffine h2(2, {AffinePiece{vec2(1.0, -1.0), 0.0}, AffinePiece{vec2(-1.0, 1.0), 0.0}});
    objs.push_back({centered_quadratic(vec2(1.0, 1.0)), std::move(h2)});
  }
  return CompositeProblem("CB3-COMP", std::move(objs), box2(-2.0, 3.0));
}

// Smooth but non-quadratic: quadratic plus a logistic term, h == 0.
CompositeProblem make_logquad_problem() {
  std::vector<CompositeObjective> objs;
  {
    Mat Q(2, 2);
    Q << 2.0, 0.0, 0.0, 1.0;
    objs.push_back(
        {make_logquad(Q, vec2(0.0, 0.0), 0.0, vec2(1.0, -1.0), 0.0, 1.0), MaxAffine::zero(2)});
  }
  {
    Mat Q(2, 2);
    Q << 1.0, 0.0, 0.0, 2.0;
    objs.push_back(
        {make_logquad(Q, vec2(-2.0, 0.0), 0.0, vec2(-1.0, 1.0), 0.0, 1.0), MaxAffine::zero(2)});
  }
  return CompositeProblem("LOGQUAD", std::move(objs), box2(-3.0, 3.0));
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"BIQUAD", "BIQUAD-L1", "QUAD-M3", "CB3-COMP", "LOGQUAD"};
}

CompositeProblem builtin(const std::string& name) {
  if (name == "BIQUAD") return make_biquad();
  if (name == "BIQUAD-L1") return make_biquad_l1();
  if (name == "QUAD-M3") return make_quad_m3();
  if (name == "CB3-COMP") return make_cb3_comp();
  if (name == "LOGQUAD") return make_logquad_problem();
  std::string msg = "unknown builtin problem '" + name + "'; available:";
  for (const auto& n : catalog_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace pareto_qn
