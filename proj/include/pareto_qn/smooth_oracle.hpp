#pragma once

#include <functional>

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

/// Smooth strongly convex part of one objective. `modulus` is the declared
/// strong-convexity constant eta > 0: hess(x) - eta*I must remain positive
/// semidefinite wherever the problem is evaluated. Oracles must be pure
/// functions of x; problems built from them are shared across threads.
struct SmoothOracle {
  int dim = 0;
  double modulus = 0.0;
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;  // empty when no Hessian is available

  bool has_hessian() const { return static_cast<bool>(hess); }
};

/// g(x) = 0.5 x'Qx + q'x + c with Q symmetric positive definite.
SmoothOracle make_quadratic(const Mat& Q, const Vec& q, double c, double modulus);

/// g(x) = 0.5 x'Qx + q'x + c + log(1 + exp(a'x + b)). The logistic term is
/// convex, so the declared modulus comes from the quadratic part alone.
SmoothOracle make_logquad(const Mat& Q, const Vec& q, double c, const Vec& a, double b,
                          double modulus);

}  // namespace pareto_qn
