#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

class CompositeProblem;

enum class UpdateRule { Bfgs, SelfScalingBfgs, HuangBfgs, ExactHessian, Identity };

std::string_view to_string(UpdateRule rule);
std::optional<UpdateRule> parse_update_rule(std::string_view name);

/// The m symmetric positive-definite metric matrices B_i with cached Cholesky
/// factors. Owned by a single solver run; updates are sequential.
class MetricSet {
 public:
  /// B_i = modulus_i * I, except ExactHessian which starts from hess_i(x0).
  static MetricSet initial(const CompositeProblem& p, UpdateRule rule, const Vec& x0,
                           double huang_phi = 0.0);

  /// Explicit matrices (tests and one-off subproblem solves).
  static MetricSet from_matrices(std::vector<Mat> matrices, UpdateRule rule = UpdateRule::Bfgs,
                                 double huang_phi = 0.0);

  int size() const { return static_cast<int>(B_.size()); }
  int dim() const { return B_.empty() ? 0 : static_cast<int>(B_[0].rows()); }
  UpdateRule rule() const { return rule_; }
  double huang_phi() const { return huang_phi_; }

  const Mat& matrix(int i) const { return B_[static_cast<std::size_t>(i)]; }
  const Eigen::LLT<Mat>& factor(int i) const { return llt_[static_cast<std::size_t>(i)]; }

  int skip_count() const { return skips_; }
  int reset_count() const { return resets_; }

  struct UpdateEvents {
    int skips = 0;
    int resets = 0;
  };

  /// One quasi-Newton step: s = x_next - x and y_i = grad g_i(x_next) -
  /// grad g_i(x). Updates with vanishing curvature s'y_i are skipped; a
  /// post-update Cholesky failure resets that metric to modulus_i * I.
  UpdateEvents update(const Vec& s, const std::vector<Vec>& y, const CompositeProblem& p,
                      const Vec& x_next);

  /// Smallest eigenvalue across all B_i (exact symmetric eigensolve).
  double sigma_floor() const;

 private:
  MetricSet() = default;
  void factorize_or_reset(int i, UpdateEvents& events);

  std::vector<Mat> B_;
  std::vector<Eigen::LLT<Mat>> llt_;
  std::vector<double> reset_scale_;  // modulus_i, the reset target
  UpdateRule rule_ = UpdateRule::Bfgs;
  double huang_phi_ = 0.0;
  int skips_ = 0;
  int resets_ = 0;
};

}  // namespace pareto_qn
