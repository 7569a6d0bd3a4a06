#include "pareto_qn/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pareto_qn/errors.hpp"
#include "pareto_qn/metric_set.hpp"
#include "pareto_qn/problem.hpp"

namespace pareto_qn {

namespace {

// 0.5 d'B_i d per objective, shared by the dual gradient and piece values.
Vec objective_quadratics(const PieceModel& model, const Vec& d) {
  const int m = model.problem->objective_count();
  Vec quad(m);
  for (int i = 0; i < m; ++i) quad[i] = 0.5 * d.dot(model.metrics->matrix(i) * d);
  return quad;
}

// q_k(d) for every piece.
Vec piece_values(const PieceModel& model, const Vec& d) {
  const Vec quad = objective_quadratics(model, d);
  Vec values = model.linear.transpose() * d + model.offsets;
  for (int k = 0; k < model.piece_count; ++k) {
    values[k] += quad[model.piece_objective[static_cast<std::size_t>(k)]];
  }
  return values;
}

double duality_gap(const DualEval& eval) { return eval.grad_psi.maxCoeff() - eval.psi; }

void check_weak_duality(const DualEval& eval) {
  if (duality_gap(eval) < -1e-12 * (1.0 + std::abs(eval.psi))) {
    throw std::logic_error("subproblem: weak duality violated (corrupted metric or oracle)");
  }
}

// Newton polish of the face optimality system for the support S of lambda:
//   sum_S w_k (B_{i(k)} d + c_k) = 0,  q_k(d) = t for k in S,  sum_S w_k = 1.
// Returns the embedded full-length weights on success.
struct FaceRefineResult {
  bool ok = false;
  Vec lambda;
};

FaceRefineResult refine_on_support(const PieceModel& model, const Vec& lambda,
                                   const DualEval& current) {
  FaceRefineResult result;
  const int n = static_cast<int>(model.x.size());
  std::vector<int> support;
  for (int k = 0; k < model.piece_count; ++k) {
    if (lambda[k] > 1e-12) support.push_back(k);
  }

  Vec d = current.d;
  double t = current.grad_psi.maxCoeff();
  Vec w(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) w[static_cast<int>(j)] = lambda[support[j]];

  // Active-set search over candidate supports. A negative converged weight
  // means that piece does not belong; a Newton failure means the equal-value
  // system is inconsistent, so the piece sitting furthest below the max goes.
  const int max_attempts = 2 * model.piece_count + 4;
  for (int attempt = 0; attempt < max_attempts && !support.empty(); ++attempt) {
    const int s = static_cast<int>(support.size());
    const int dim = n + s + 1;
    w /= w.sum();

    bool converged = false;
    for (int iter = 0; iter < 30; ++iter) {
      Mat U(n, s);  // column j = B_{i(k_j)} d + c_{k_j}
      Vec q(s);
      Mat H = Mat::Zero(n, n);
      for (int j = 0; j < s; ++j) {
        const int k = support[static_cast<std::size_t>(j)];
        const int obj = model.piece_objective[static_cast<std::size_t>(k)];
        const Mat& B = model.metrics->matrix(obj);
        U.col(j) = B * d + model.linear.col(k);
        q[j] = 0.5 * d.dot(B * d) + model.linear.col(k).dot(d) + model.offsets[k];
        H += w[j] * B;
      }

      Vec residual(dim);
      residual.head(n) = U * w;
      residual.segment(n, s) = q.array() - t;
      residual[dim - 1] = w.sum() - 1.0;

      const double scale = 1.0 + std::abs(t) + d.norm();
      if (residual.lpNorm<Eigen::Infinity>() <= 1e-13 * scale) {
        converged = true;
        break;
      }

      Mat J = Mat::Zero(dim, dim);
      J.topLeftCorner(n, n) = H;
      J.block(0, n, n, s) = U;
      J.block(n, 0, s, n) = U.transpose();
      J.block(n, n + s, s, 1).setConstant(-1.0);
      J.block(dim - 1, n, 1, s).setConstant(1.0);

      // Minimal-norm step; degenerate faces make J singular but consistent.
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(J);
      const Vec delta = cod.solve(-residual);
      if (!delta.allFinite()) return result;
      d += delta.head(n);
      w += delta.segment(n, s);
      t += delta[dim - 1];
    }

    if (!converged) {
      if (s <= 1) return result;
      int drop = 0;
      double worst_slack = -std::numeric_limits<double>::infinity();
      const double gmax = current.grad_psi.maxCoeff();
      for (int j = 0; j < s; ++j) {
        const double slack = gmax - current.grad_psi[support[static_cast<std::size_t>(j)]];
        if (slack > worst_slack) {
          worst_slack = slack;
          drop = j;
        }
      }
      support.erase(support.begin() + drop);
      Vec reduced(s - 1);
      for (int j = 0, out = 0; j < s; ++j) {
        if (j != drop) reduced[out++] = std::max(w[j], 0.0);
      }
      if (!(reduced.sum() > 0.0)) return result;
      w = std::move(reduced);
      d = current.d;
      t = gmax;
      continue;
    }

    if ((w.array() >= -1e-9).all()) {
      Vec embedded = Vec::Zero(model.piece_count);
      for (int j = 0; j < s; ++j) {
        embedded[support[static_cast<std::size_t>(j)]] = std::max(w[j], 0.0);
      }
      const double total = embedded.sum();
      if (!(total > 0.0)) return result;
      embedded /= total;
      result.ok = true;
      result.lambda = std::move(embedded);
      return result;
    }

    std::vector<int> kept;
    std::vector<double> kept_w;
    for (int j = 0; j < s; ++j) {
      if (w[j] >= -1e-9) {
        kept.push_back(support[static_cast<std::size_t>(j)]);
        kept_w.push_back(std::max(w[j], 0.0));
      }
    }
    support = std::move(kept);
    w.resize(static_cast<int>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) w[static_cast<int>(j)] = kept_w[j];
    if (!(w.sum() > 0.0)) return result;
  }
  return result;
}

}  // namespace

double PieceModel::max_value(const Vec& d) const { return piece_values(*this, d).maxCoeff(); }

PieceModel build_pieces(const CompositeProblem& p, const Vec& x, const MetricSet& B) {
  p.require_dim(x, "build_pieces");
  if (B.size() != p.objective_count() || B.dim() != p.dim()) {
    throw std::invalid_argument("build_pieces: metric set does not match the problem");
  }
  PieceModel model;
  model.problem = &p;
  model.metrics = &B;
  model.x = x;

  const int n = p.dim();
  const int m = p.objective_count();
  int K = 0;
  for (int i = 0; i < m; ++i) K += p.objective(i).nonsmooth.piece_count();
  model.piece_count = K;
  model.linear.resize(n, K);
  model.slopes.resize(n, K);
  model.offsets.resize(K);
  model.objective_grads.resize(n, m);
  model.h_at_x.resize(m);
  model.piece_objective.reserve(static_cast<std::size_t>(K));
  model.piece_affine.reserve(static_cast<std::size_t>(K));

  int k = 0;
  for (int i = 0; i < m; ++i) {
    const CompositeObjective& obj = p.objective(i);
    const Vec grad = obj.smooth.grad(x);
    const double h_x = obj.nonsmooth.value(x);
    model.objective_grads.col(i) = grad;
    model.h_at_x[i] = h_x;
    for (int j = 0; j < obj.nonsmooth.piece_count(); ++j, ++k) {
      const AffinePiece& piece = obj.nonsmooth.piece(j);
      model.piece_objective.push_back(i);
      model.piece_affine.push_back(j);
      model.linear.col(k) = grad + piece.a;
      model.slopes.col(k) = piece.a;
      model.offsets[k] = piece.a.dot(x) + piece.b - h_x;
    }
  }
  return model;
}

DualEval dual_eval(const PieceModel& model, const Vec& lambda) {
  const int K = model.piece_count;
  if (lambda.size() != K) throw std::invalid_argument("dual_eval: lambda size mismatch");
  if (lambda.minCoeff() < -1e-12 || std::abs(lambda.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("dual_eval: lambda must lie on the simplex");
  }

  const int m = model.problem->objective_count();
  const int n = static_cast<int>(model.x.size());
  Vec w = Vec::Zero(m);
  for (int k = 0; k < K; ++k) w[model.piece_objective[static_cast<std::size_t>(k)]] += lambda[k];

  Mat H = Mat::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    if (w[i] != 0.0) H += w[i] * model.metrics->matrix(i);
  }
  const Vec c = model.linear * lambda;
  const double r = model.offsets.dot(lambda);

  Eigen::LLT<Mat> llt(H);
  if (llt.info() != Eigen::Success) {
    throw MetricCorruptionError("dual_eval: combined metric is not positive definite");
  }

  DualEval eval;
  eval.d = -llt.solve(c);
  eval.psi = 0.5 * c.dot(eval.d) + r;
  eval.grad_psi = piece_values(model, eval.d);
  return eval;
}

Vec project_simplex(const Vec& v) {
  const int K = static_cast<int>(v.size());
  std::vector<double> sorted(v.data(), v.data() + K);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int j = 0; j < K; ++j) {
    cumulative += sorted[static_cast<std::size_t>(j)];
    const double candidate = (cumulative - 1.0) / (j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) tau = candidate;
  }
  Vec out = (v.array() - tau).max(0.0);
  out /= out.sum();
  return out;
}

SubproblemSolution solve(const PieceModel& model, double tol_gap, int max_iterations) {
  if (!(tol_gap > 0.0)) throw std::invalid_argument("subproblem solve: tol_gap must be positive");
  if (max_iterations < 1) throw std::invalid_argument("subproblem solve: max_iterations >= 1");

  const int K = model.piece_count;
  Vec lambda = Vec::Constant(K, 1.0 / K);
  DualEval current = dual_eval(model, lambda);
  check_weak_duality(current);
  double gap = duality_gap(current);

  // Step size from the piece curvature at the initial point.
  double grad_norm_max = 0.0;
  for (int k = 0; k < K; ++k) {
    const Mat& B = model.metrics->matrix(model.piece_objective[static_cast<std::size_t>(k)]);
    grad_norm_max = std::max(grad_norm_max, (B * current.d + model.linear.col(k)).norm());
  }
  const double sigma = model.metrics->sigma_floor();
  double step = 1.0 / std::max(grad_norm_max * grad_norm_max / std::max(sigma, 1e-12), 1e-12);

  auto try_cleanup = [&]() {
    bool improved = false;
    // Complementary slackness: supported pieces whose value sits well below
    // the max cannot carry weight at the optimum.
    const double gmax = current.grad_psi.maxCoeff();
    const double purge_tol = std::max(16.0 * std::max(gap, 0.0), 1e-12 * (1.0 + std::abs(gmax)));
    Vec purged = lambda;
    bool any = false;
    for (int k = 0; k < K; ++k) {
      if (purged[k] > 0.0 && gmax - current.grad_psi[k] > purge_tol) {
        purged[k] = 0.0;
        any = true;
      }
    }
    if (any && purged.sum() > 0.0) {
      purged /= purged.sum();
      DualEval candidate = dual_eval(model, purged);
      check_weak_duality(candidate);
      if (duality_gap(candidate) < gap) {
        lambda = std::move(purged);
        current = std::move(candidate);
        gap = duality_gap(current);
        improved = true;
      }
    }
    // Newton polish on the identified support.
    FaceRefineResult refined = refine_on_support(model, lambda, current);
    if (refined.ok) {
      DualEval candidate = dual_eval(model, refined.lambda);
      check_weak_duality(candidate);
      if (duality_gap(candidate) < gap) {
        lambda = std::move(refined.lambda);
        current = std::move(candidate);
        gap = duality_gap(current);
        improved = true;
      }
    }
    return improved;
  };

  int iterations = 0;
  while (gap > tol_gap && iterations < max_iterations) {
    ++iterations;
    bool advanced = false;

    // Projected gradient ascent with backtracking.
    double trial_step = step;
    for (int bt = 0; bt < 60; ++bt) {
      const Vec trial_lambda = project_simplex(lambda + trial_step * current.grad_psi);
      const Vec delta = trial_lambda - lambda;
      const double move2 = delta.squaredNorm();
      if (!(move2 > 0.0)) break;
      DualEval trial = dual_eval(model, trial_lambda);
      check_weak_duality(trial);
      if (trial.psi >= current.psi + current.grad_psi.dot(delta) - move2 / (2.0 * trial_step) -
                           1e-15 * (1.0 + std::abs(current.psi))) {
        lambda = trial_lambda;
        current = std::move(trial);
        step = std::min(trial_step * 1.25, 1e12);
        advanced = true;
        break;
      }
      trial_step *= 0.5;
      if (trial_step < 1e-18) break;
    }

    if (!advanced) {
      // Frank-Wolfe fallback toward the best vertex.
      int k_star = 0;
      current.grad_psi.maxCoeff(&k_star);
      const double fw_gap = gap;
      for (double gamma = 1.0; gamma >= 1e-18; gamma *= 0.5) {
        Vec trial_lambda = (1.0 - gamma) * lambda;
        trial_lambda[k_star] += gamma;
        DualEval trial = dual_eval(model, trial_lambda);
        check_weak_duality(trial);
        if (trial.psi > current.psi + 0.25 * gamma * fw_gap - 1e-15 * (1.0 + std::abs(current.psi))) {
          lambda = std::move(trial_lambda);
          current = std::move(trial);
          advanced = true;
          break;
        }
      }
    }

    gap = duality_gap(current);
    if (gap <= tol_gap) break;

    const bool cleanup_due = !advanced || (iterations % 10 == 0) || gap <= 1e3 * tol_gap;
    if (cleanup_due) {
      const bool improved = try_cleanup();
      if (!advanced && !improved) break;  // hard stall; report the gap we have
    }
  }

  if (gap > 0.0) try_cleanup();

  // Aggregate piece weights per objective (w) and the matching subgradients.
  const CompositeProblem& p = *model.problem;
  const int m = p.objective_count();
  SubproblemSolution sol;
  sol.direction = current.d;
  sol.alpha = current.grad_psi.maxCoeff();
  sol.gap = gap;
  sol.dual_iterations = iterations;
  sol.inexact = gap > tol_gap;
  sol.lambda = lambda;
  sol.weights = Vec::Zero(m);
  Mat slope_sum = Mat::Zero(p.dim(), m);
  for (int k = 0; k < K; ++k) {
    const int i = model.piece_objective[static_cast<std::size_t>(k)];
    sol.weights[i] += lambda[k];
    slope_sum.col(i) += lambda[k] * model.slopes.col(k);
  }
  const Vec x_plus_d = model.x + sol.direction;
  sol.subgradients.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    sol.subgradients[static_cast<std::size_t>(i)] =
        sol.weights[i] > 0.0 ? Vec(slope_sum.col(i) / sol.weights[i])
                             : p.objective(i).nonsmooth.subgradient(x_plus_d);
  }

  Vec stationarity = Vec::Zero(p.dim());
  for (int i = 0; i < m; ++i) {
    if (sol.weights[i] == 0.0) continue;
    stationarity += sol.weights[i] * (model.objective_grads.col(i) +
                                      model.metrics->matrix(i) * sol.direction +
                                      sol.subgradients[static_cast<std::size_t>(i)]);
  }
  sol.kkt_residual = stationarity.norm();

  double slack = 0.0;
  for (int k = 0; k < K; ++k) {
    if (lambda[k] <= 1e-12) continue;
    const int i = model.piece_objective[static_cast<std::size_t>(k)];
    const double piece_at = model.slopes.col(k).dot(x_plus_d) +
                            p.objective(i).nonsmooth.piece(model.piece_affine[static_cast<std::size_t>(k)]).b;
    slack = std::max(slack, p.objective(i).nonsmooth.value(x_plus_d) - piece_at);
  }
  sol.support_slack = slack;
  return sol;
}

ThetaEvaluator::ThetaEvaluator(const CompositeProblem& p, const Vec& x, const MetricSet& B)
    : problem_(&p), metrics_(&B), x_(x) {
  p.require_dim(x, "theta_eval");
  if (B.size() != p.objective_count() || B.dim() != p.dim()) {
    throw std::invalid_argument("theta_eval: metric set does not match the problem");
  }
  for (int i = 0; i < p.objective_count(); ++i) {
    grads_.push_back(p.objective(i).smooth.grad(x));
    h_at_x_.push_back(p.objective(i).nonsmooth.value(x));
  }
}

double ThetaEvaluator::operator()(const Vec& d) const {
  double best = -std::numeric_limits<double>::infinity();
  const Vec shifted = x_ + d;
  for (int i = 0; i < problem_->objective_count(); ++i) {
    const double value = grads_[static_cast<std::size_t>(i)].dot(d) +
                         0.5 * d.dot(metrics_->matrix(i) * d) +
                         problem_->objective(i).nonsmooth.value(shifted) -
                         h_at_x_[static_cast<std::size_t>(i)];
    best = std::max(best, value);
  }
  return best;
}

double theta_eval(const CompositeProblem& p, const Vec& x, const MetricSet& B, const Vec& d) {
  return ThetaEvaluator(p, x, B)(d);
}

DirectionalDerivativeCheck directional_derivative_check(const CompositeProblem& p, const Vec& x,
                                                        const Vec& d, double h_fd) {
  p.require_dim(x, "directional_derivative_check");
  if (!(d.norm() > 0.0)) {
    throw std::invalid_argument("directional_derivative_check: d must be nonzero");
  }
  if (!(h_fd > 0.0)) {
    throw std::invalid_argument("directional_derivative_check: h_fd must be positive");
  }
  std::vector<Mat> identity(static_cast<std::size_t>(p.objective_count()),
                            Mat::Identity(p.dim(), p.dim()));
  const MetricSet B = MetricSet::from_matrices(std::move(identity));

  DirectionalDerivativeCheck check;
  check.theta_side = theta_eval(p, x, B, h_fd * d) / h_fd;  // theta(x, 0) = 0
  double worst = -std::numeric_limits<double>::infinity();
  const Vec shifted = x + h_fd * d;
  for (int i = 0; i < p.objective_count(); ++i) {
    worst = std::max(worst, (p.objective(i).eval(shifted) - p.objective(i).eval(x)) / h_fd);
  }
  check.objective_side = worst;
  check.difference = std::abs(check.theta_side - check.objective_side);
  return check;
}

}  // namespace pareto_qn
