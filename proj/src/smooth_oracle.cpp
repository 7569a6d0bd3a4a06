#include "pareto_qn/smooth_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace pareto_qn {

namespace {

void check_quadratic_inputs(const Mat& Q, const Vec& q, double modulus) {
  if (Q.rows() != Q.cols()) throw std::invalid_argument("quadratic oracle: Q must be square");
  if (Q.rows() != q.size()) throw std::invalid_argument("quadratic oracle: Q/q dimension mismatch");
  if (!(modulus > 0.0)) throw std::invalid_argument("quadratic oracle: modulus must be positive");
  if (!Q.isApprox(Q.transpose(), 1e-12)) {
    throw std::invalid_argument("quadratic oracle: Q must be symmetric");
  }
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

SmoothOracle make_quadratic(const Mat& Q, const Vec& q, double c, double modulus) {
  check_quadratic_inputs(Q, q, modulus);
  SmoothOracle o;
  o.dim = static_cast<int>(Q.rows());
  o.modulus = modulus;
  o.eval = [Q, q, c](const Vec& x) { return 0.5 * x.dot(Q * x) + q.dot(x) + c; };
  o.grad = [Q, q](const Vec& x) -> Vec { return Q * x + q; };
  o.hess = [Q](const Vec&) -> Mat { return Q; };
  return o;
}

SmoothOracle make_logquad(const Mat& Q, const Vec& q, double c, const Vec& a, double b,
                          double modulus) {
  check_quadratic_inputs(Q, q, modulus);
  if (a.size() != Q.rows()) throw std::invalid_argument("logquad oracle: a dimension mismatch");
  SmoothOracle o;
  o.dim = static_cast<int>(Q.rows());
  o.modulus = modulus;
  o.eval = [Q, q, c, a, b](const Vec& x) {
    return 0.5 * x.dot(Q * x) + q.dot(x) + c + softplus(a.dot(x) + b);
  };
  o.grad = [Q, q, a, b](const Vec& x) -> Vec {
    return Q * x + q + sigmoid(a.dot(x) + b) * a;
  };
  o.hess = [Q, a, b](const Vec& x) -> Mat {
    const double p = sigmoid(a.dot(x) + b);
    return Q + p * (1.0 - p) * (a * a.transpose());
  };
  return o;
}

}  // namespace pareto_qn
