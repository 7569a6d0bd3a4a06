#include "pareto_qn/metric_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pareto_qn/problem.hpp"

namespace pareto_qn {

std::string_view to_string(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::Bfgs: return "bfgs";
    case UpdateRule::SelfScalingBfgs: return "ssbfgs";
    case UpdateRule::HuangBfgs: return "huang";
    case UpdateRule::ExactHessian: return "newton";
    case UpdateRule::Identity: return "identity";
  }
  return "?";
}

std::optional<UpdateRule> parse_update_rule(std::string_view name) {
  if (name == "bfgs") return UpdateRule::Bfgs;
  if (name == "ssbfgs") return UpdateRule::SelfScalingBfgs;
  if (name == "huang") return UpdateRule::HuangBfgs;
  if (name == "newton") return UpdateRule::ExactHessian;
  if (name == "identity") return UpdateRule::Identity;
  return std::nullopt;
}

namespace {

void check_phi(UpdateRule rule, double phi) {
  if (rule == UpdateRule::HuangBfgs && !(phi >= 0.0 && phi < 1.0)) {
    throw std::invalid_argument("MetricSet: Huang parameter must lie in [0, 1)");
  }
}

}  // namespace

MetricSet MetricSet::initial(const CompositeProblem& p, UpdateRule rule, const Vec& x0,
                             double huang_phi) {
  check_phi(rule, huang_phi);
  MetricSet M;
  M.rule_ = rule;
  M.huang_phi_ = huang_phi;
  const int n = p.dim();
  for (int i = 0; i < p.objective_count(); ++i) {
    const SmoothOracle& g = p.objective(i).smooth;
    M.reset_scale_.push_back(g.modulus);
    if (rule == UpdateRule::ExactHessian) {
      if (!g.has_hessian()) {
        throw std::invalid_argument("MetricSet: rule 'newton' requires Hessian oracles");
      }
      M.B_.push_back(g.hess(x0));
    } else if (rule == UpdateRule::Identity) {
      M.B_.push_back(Mat::Identity(n, n));
    } else {
      M.B_.push_back(g.modulus * Mat::Identity(n, n));
    }
  }
  M.llt_.resize(M.B_.size());
  UpdateEvents ignored;
  for (int i = 0; i < M.size(); ++i) M.factorize_or_reset(i, ignored);
  return M;
}

MetricSet MetricSet::from_matrices(std::vector<Mat> matrices, UpdateRule rule, double huang_phi) {
  check_phi(rule, huang_phi);
  if (matrices.empty()) throw std::invalid_argument("MetricSet: no matrices given");
  MetricSet M;
  M.rule_ = rule;
  M.huang_phi_ = huang_phi;
  const Eigen::Index n = matrices[0].rows();
  for (auto& B : matrices) {
    if (B.rows() != B.cols() || B.rows() != n) {
      throw std::invalid_argument("MetricSet: matrices must be square and equally sized");
    }
    M.reset_scale_.push_back(1.0);
    M.B_.push_back(std::move(B));
  }
  M.llt_.resize(M.B_.size());
  for (int i = 0; i < M.size(); ++i) {
    M.llt_[static_cast<std::size_t>(i)].compute(M.B_[static_cast<std::size_t>(i)]);
    if (M.llt_[static_cast<std::size_t>(i)].info() != Eigen::Success) {
      throw std::invalid_argument("MetricSet: matrix " + std::to_string(i) +
                                  " is not positive definite");
    }
  }
  return M;
}

void MetricSet::factorize_or_reset(int i, UpdateEvents& events) {
  auto& B = B_[static_cast<std::size_t>(i)];
  auto& llt = llt_[static_cast<std::size_t>(i)];
  llt.compute(B);
  if (llt.info() != Eigen::Success) {
    B = reset_scale_[static_cast<std::size_t>(i)] * Mat::Identity(B.rows(), B.cols());
    llt.compute(B);
    ++events.resets;
    ++resets_;
  }
}

MetricSet::UpdateEvents MetricSet::update(const Vec& s, const std::vector<Vec>& y,
                                          const CompositeProblem& p, const Vec& x_next) {
  if (static_cast<int>(y.size()) != size()) {
    throw std::invalid_argument("MetricSet::update: one y per objective required");
  }
  const double s_norm = s.norm();
  if (!(s_norm > 0.0)) throw std::invalid_argument("MetricSet::update: s must be nonzero");

  UpdateEvents events;
  for (int i = 0; i < size(); ++i) {
    Mat& B = B_[static_cast<std::size_t>(i)];
    const Vec& yi = y[static_cast<std::size_t>(i)];

    switch (rule_) {
      case UpdateRule::Identity:
        continue;  // B stays I
      case UpdateRule::ExactHessian:
        B = p.objective(i).smooth.hess(x_next);
        break;
      case UpdateRule::Bfgs:
      case UpdateRule::SelfScalingBfgs:
      case UpdateRule::HuangBfgs: {
        const double curvature = s.dot(yi);
        if (curvature <= 1e-12 * s_norm * yi.norm()) {
          ++events.skips;
          ++skips_;
          continue;
        }
        const Vec Bs = B * s;
        const double sBs = s.dot(Bs);
        const Mat rank_one_drop = B - (Bs * Bs.transpose()) / sBs;
        const Mat gain = (yi * yi.transpose()) / curvature;
        if (rule_ == UpdateRule::Bfgs) {
          B = rank_one_drop + gain;
        } else if (rule_ == UpdateRule::SelfScalingBfgs) {
          const double tau = curvature / sBs;
          B = tau * rank_one_drop + gain;
        } else {
          const Mat bfgs = rank_one_drop + gain;
          const Mat projector = Mat::Identity(B.rows(), B.cols()) -
                                (yi * s.transpose()) / curvature;
          const Mat dfp = projector * B * projector.transpose() + gain;
          B = (1.0 - huang_phi_) * bfgs + huang_phi_ * dfp;
        }
        break;
      }
    }
    B = 0.5 * (B + B.transpose().eval());  // keep exactly symmetric
    factorize_or_reset(i, events);
  }
  return events;
}

double MetricSet::sigma_floor() const {
  double sigma = std::numeric_limits<double>::infinity();
  for (const auto& B : B_) {
    Eigen::SelfAdjointEigenSolver<Mat> es(B, Eigen::EigenvaluesOnly);
    sigma = std::min(sigma, es.eigenvalues().minCoeff());
  }
  return sigma;
}

}  // namespace pareto_qn
