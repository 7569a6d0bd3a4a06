#include "pareto_qn/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "pareto_qn/rng.hpp"

namespace pareto_qn {

namespace {

double segment_distance(const Vec& x, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

}  // namespace

double ParetoHint::distance(const Vec& x) const {
  if (kind == Kind::Segment) {
    return segment_distance(x, vertices[0], vertices[1]);
  }
  // Triangle in the plane: inside test via barycentric signs, else nearest edge.
  const Vec &p0 = vertices[0], &p1 = vertices[1], &p2 = vertices[2];
  if (x.size() == 2) {
    const double d1 = (x[0] - p1[0]) * (p0[1] - p1[1]) - (p0[0] - p1[0]) * (x[1] - p1[1]);
    const double d2 = (x[0] - p2[0]) * (p1[1] - p2[1]) - (p1[0] - p2[0]) * (x[1] - p2[1]);
    const double d3 = (x[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (x[1] - p0[1]);
    const bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
    const bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
    if (!(has_neg && has_pos)) return 0.0;
  }
  return std::min({segment_distance(x, p0, p1), segment_distance(x, p1, p2),
                   segment_distance(x, p2, p0)});
}

CompositeProblem::CompositeProblem(std::string name, std::vector<CompositeObjective> objectives,
                                   StartBox box, std::optional<ParetoHint> hint)
    : name_(std::move(name)),
      objectives_(std::move(objectives)),
      box_(std::move(box)),
      hint_(std::move(hint)) {
  if (objectives_.size() < 2) {
    throw std::invalid_argument("CompositeProblem: at least two objectives required");
  }
  dim_ = objectives_[0].smooth.dim;
  for (const auto& obj : objectives_) {
    if (obj.smooth.dim != dim_ || obj.nonsmooth.dim() != dim_) {
      throw std::invalid_argument("CompositeProblem: objective dimensions disagree");
    }
    if (!obj.smooth.eval || !obj.smooth.grad) {
      throw std::invalid_argument("CompositeProblem: smooth oracle missing eval or grad");
    }
    if (!(obj.smooth.modulus > 0.0)) {
      throw std::invalid_argument("CompositeProblem: strong-convexity modulus must be positive");
    }
  }
  if (box_.lo.size() != dim_ || box_.hi.size() != dim_) {
    throw std::invalid_argument("CompositeProblem: start box dimension mismatch");
  }
  for (int i = 0; i < dim_; ++i) {
    if (!(box_.lo[i] < box_.hi[i])) {
      throw std::invalid_argument("CompositeProblem: start box must satisfy lo < hi");
    }
  }
}

void CompositeProblem::require_dim(const Vec& x, const char* what) const {
  if (x.size() != dim_) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(dim_) + ", got " + std::to_string(x.size()));
  }
}

Vec CompositeProblem::eval_F(const Vec& x) const {
  require_dim(x, "eval_F");
  Vec F(objective_count());
  for (int i = 0; i < objective_count(); ++i) F[i] = objectives_[static_cast<std::size_t>(i)].eval(x);
  return F;
}

namespace {

Vec sample_box(const StartBox& box, SplitMix64& rng) {
  Vec x(box.lo.size());
  for (int i = 0; i < x.size(); ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
  return x;
}

Vec central_difference_gradient(const SmoothOracle& g, const Vec& x) {
  const double h = 1e-6 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  Vec fd(x.size());
  Vec xp = x, xm = x;
  for (int i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    fd[i] = (g.eval(xp) - g.eval(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return fd;
}

}  // namespace

ValidationReport validate(const CompositeProblem& p, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("validate: samples must be >= 1");
  ValidationReport report;
  report.samples = samples;

  for (int i = 0; i < p.objective_count(); ++i) {
    if (!p.objective(i).smooth.has_hessian()) {
      report.hessian_available = false;
      report.notes.push_back("objective " + std::to_string(i) +
                             ": no Hessian; strong convexity checked by the two-point "
                             "monotone-gradient test");
    }
  }

  SplitMix64 rng = SplitMix64::substream(seed, 0x76616c6964ULL);
  for (int s = 0; s < samples; ++s) {
    const Vec x = sample_box(p.start_box(), rng);
    for (int i = 0; i < p.objective_count(); ++i) {
      const SmoothOracle& g = p.objective(i).smooth;

      const Vec analytic = g.grad(x);
      const Vec fd = central_difference_gradient(g, x);
      const double err = (fd - analytic).lpNorm<Eigen::Infinity>();
      const double scale = std::max(1.0, analytic.lpNorm<Eigen::Infinity>());
      if (err > 1e-5 * scale) {
        report.issues.push_back({ValidationIssue::Kind::GradientMismatch, i, x, err,
                                 "gradient disagrees with central differences"});
      }

      if (g.has_hessian()) {
        // hess - modulus*I must factor; a tiny shift absorbs the exactly
        // semidefinite boundary case.
        const double slack = 1e-10 * (1.0 + g.modulus);
        Mat shifted = g.hess(x) - (g.modulus - slack) * Mat::Identity(p.dim(), p.dim());
        Eigen::LLT<Mat> llt(shifted);
        if (llt.info() != Eigen::Success) {
          Eigen::SelfAdjointEigenSolver<Mat> es(g.hess(x));
          const double deficit = g.modulus - es.eigenvalues().minCoeff();
          report.issues.push_back({ValidationIssue::Kind::StrongConvexity, i, x, deficit,
                                   "hess(x) - modulus*I is not positive semidefinite"});
        }
      } else {
        const Vec y = sample_box(p.start_box(), rng);
        const double lhs = (g.grad(x) - g.grad(y)).dot(x - y);
        const double rhs = g.modulus * (x - y).squaredNorm();
        if (lhs < rhs * (1.0 - 1e-9) - 1e-12) {
          report.issues.push_back({ValidationIssue::Kind::StrongConvexity, i, x, rhs - lhs,
                                   "monotone-gradient test below declared modulus"});
        }
      }
    }
  }
  return report;
}

}  // namespace pareto_qn
