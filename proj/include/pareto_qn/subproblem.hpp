#pragma once

#include <vector>

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

class CompositeProblem;
class MetricSet;

/// Expansion of theta(x, .) into K quadratic pieces, one per (objective i,
/// affine piece of h_i): q_k(d) = 0.5 d'B_{i(k)}d + c_k'd + r_k with
/// c_k = grad g_i(x) + a_k and r_k = a_k'x + b_k - h_i(x) <= 0. The piecewise
/// max over k reproduces theta(x, d) exactly for max-of-affine h.
struct PieceModel {
  const CompositeProblem* problem = nullptr;
  const MetricSet* metrics = nullptr;
  Vec x;
  int piece_count = 0;
  std::vector<int> piece_objective;  // i(k)
  std::vector<int> piece_affine;     // affine index within h_{i(k)}
  Mat linear;                        // n x K, column k = c_k
  Mat slopes;                        // n x K, column k = a_k
  Vec offsets;                       // r_k
  Mat objective_grads;               // n x m, column i = grad g_i(x)
  Vec h_at_x;                        // h_i(x)

  /// max_k q_k(d), equal to theta(x, d).
  double max_value(const Vec& d) const;
};

PieceModel build_pieces(const CompositeProblem& p, const Vec& x, const MetricSet& B);

/// One dual evaluation: psi(lambda) = min_d sum_k lambda_k q_k(d) for lambda
/// on the simplex, with minimizer d(lambda) = -H(lambda)^{-1} c(lambda) and
/// envelope gradient grad_psi_k = q_k(d(lambda)).
struct DualEval {
  double psi = 0.0;
  Vec d;
  Vec grad_psi;
};

DualEval dual_eval(const PieceModel& model, const Vec& lambda);

struct SubproblemSolution {
  Vec direction;                   // d(x)
  double alpha = 0.0;              // theta(x, d(x))
  Vec weights;                     // objective weights w on the m-simplex
  std::vector<Vec> subgradients;   // xi_j per objective, element of dh_j(x + d)
  double kkt_residual = 0.0;       // || sum_j w_j (grad g_j + B_j d + xi_j) ||
  double gap = 0.0;                // final duality gap theta(x, d) - psi
  int dual_iterations = 0;
  bool inexact = false;            // iteration cap hit before gap <= tol
  double support_slack = 0.0;      // worst inactivity of a supported piece at x + d
  Vec lambda;                      // final piece weights
};

/// Maximizes the dual over the piece simplex by projected gradient ascent
/// with backtracking (Frank-Wolfe step when the projection stalls), purges
/// pieces violating complementary slackness, and polishes the identified
/// support with Newton steps on the face optimality system. Stops when the
/// duality gap drops below tol_gap.
SubproblemSolution solve(const PieceModel& model, double tol_gap = 1e-10,
                         int max_iterations = 10000);

/// Direct evaluation of theta(x, .) from the problem oracles at a fixed x,
/// bypassing the piece expansion; the independent check of build_pieces.
class ThetaEvaluator {
 public:
  ThetaEvaluator(const CompositeProblem& p, const Vec& x, const MetricSet& B);
  double operator()(const Vec& d) const;

 private:
  const CompositeProblem* problem_;
  const MetricSet* metrics_;
  Vec x_;
  std::vector<Vec> grads_;
  std::vector<double> h_at_x_;
};

double theta_eval(const CompositeProblem& p, const Vec& x, const MetricSet& B, const Vec& d);

struct DirectionalDerivativeCheck {
  double theta_side = 0.0;      // one-sided difference of t -> theta(x, t d) at 0+
  double objective_side = 0.0;  // max_i one-sided difference of t -> f_i(x + t d)
  double difference = 0.0;
};

/// Finite-difference check of theta'((x, 0); d) = max_i f_i'(x; d), evaluated
/// with identity metrics (the identity holds for any positive definite B).
DirectionalDerivativeCheck directional_derivative_check(const CompositeProblem& p, const Vec& x,
                                                        const Vec& d, double h_fd);

/// Euclidean projection onto the probability simplex (sort and threshold).
Vec project_simplex(const Vec& v);

}  // namespace pareto_qn
