#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pareto_qn/linalg.hpp"
#include "pareto_qn/max_affine.hpp"
#include "pareto_qn/smooth_oracle.hpp"

namespace pareto_qn {

/// One objective f(x) = smooth.eval(x) + nonsmooth.value(x).
struct CompositeObjective {
  SmoothOracle smooth;
  MaxAffine nonsmooth;

  double eval(const Vec& x) const { return smooth.eval(x) + nonsmooth.value(x); }
};

/// Per-coordinate bounds used to sample multistart points.
struct StartBox {
  Vec lo;
  Vec hi;
};

/// Analytic description of the Pareto set, available for catalog problems.
struct ParetoHint {
  enum class Kind { Segment, Triangle };
  Kind kind = Kind::Segment;
  std::vector<Vec> vertices;  // 2 for Segment, 3 for Triangle

  /// Euclidean distance from x to the described set.
  double distance(const Vec& x) const;
};

/// A composite multiobjective instance: m >= 2 objectives over R^n, each the
/// sum of a smooth strongly convex part and a max-of-affine part. Immutable
/// after construction and safe to share across concurrent solver runs.
class CompositeProblem {
 public:
  CompositeProblem(std::string name, std::vector<CompositeObjective> objectives, StartBox box,
                   std::optional<ParetoHint> hint = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int objective_count() const { return static_cast<int>(objectives_.size()); }
  const std::vector<CompositeObjective>& objectives() const { return objectives_; }
  const CompositeObjective& objective(int i) const {
    return objectives_[static_cast<std::size_t>(i)];
  }
  const StartBox& start_box() const { return box_; }
  const std::optional<ParetoHint>& pareto_hint() const { return hint_; }

  /// (f_1(x), ..., f_m(x)).
  Vec eval_F(const Vec& x) const;

  void require_dim(const Vec& x, const char* what) const;

 private:
  std::string name_;
  std::vector<CompositeObjective> objectives_;
  StartBox box_;
  std::optional<ParetoHint> hint_;
  int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
  enum class Kind { GradientMismatch, StrongConvexity };
  Kind kind = Kind::GradientMismatch;
  int objective = -1;
  Vec point;
  double measure = 0.0;  // gradient error, or curvature deficit
  std::string detail;
};

struct ValidationReport {
  int samples = 0;
  bool hessian_available = true;  // false if any oracle lacks a Hessian
  std::vector<ValidationIssue> issues;
  std::vector<std::string> notes;

  bool ok() const { return issues.empty(); }
};

/// Samples `samples` points uniformly from the start box and checks, per
/// objective: gradient consistency against central differences (1e-5
/// relative), and the strong-convexity certificate hess(x) - modulus*I >= 0
/// via Cholesky. Oracles without a Hessian fall back to a two-point
/// monotone-gradient test, noted in the report.
ValidationReport validate(const CompositeProblem& p, int samples, std::uint64_t seed = 0);

}  // namespace pareto_qn
