#include "pareto_qn/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pareto_qn/metric_set.hpp"
#include "pareto_qn/problem.hpp"

namespace pareto_qn {

namespace {

// Flattened per-objective data so the node loop stays allocation-free.
struct ObjectiveData {
  std::array<double, 3> grad{};
  std::array<std::array<double, 3>, 3> B{};
  double h_at_x = 0.0;
  std::vector<std::array<double, 4>> pieces;  // a_1..a_3, a'x + b
};

double theta_at(const std::vector<ObjectiveData>& data, int n, const std::array<double, 3>& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const ObjectiveData& obj : data) {
    double quad = 0.0;
    double lin = 0.0;
    for (int a = 0; a < n; ++a) {
      double row = 0.0;
      for (int b = 0; b < n; ++b) row += obj.B[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * d[static_cast<std::size_t>(b)];
      quad += d[static_cast<std::size_t>(a)] * row;
      lin += obj.grad[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)];
    }
    double h_shift = -std::numeric_limits<double>::infinity();
    for (const auto& piece : obj.pieces) {
      double v = piece[3];
      for (int a = 0; a < n; ++a) v += piece[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)];
      h_shift = std::max(h_shift, v);
    }
    best = std::max(best, 0.5 * quad + lin + h_shift - obj.h_at_x);
  }
  return best;
}

}  // namespace

GridMinimum grid_min_theta(const CompositeProblem& p, const Vec& x, const MetricSet& B,
                           const GridSpec& spec) {
  const int n = p.dim();
  if (n > 3) throw std::invalid_argument("grid_min_theta: only n <= 3 is supported");
  p.require_dim(x, "grid_min_theta");
  if (spec.center.size() != n) throw std::invalid_argument("grid_min_theta: center dimension");
  if (!(spec.radius > 0.0)) throw std::invalid_argument("grid_min_theta: radius must be positive");
  if (!(spec.resolution > 0.0)) {
    throw std::invalid_argument("grid_min_theta: resolution must be positive");
  }
  if (B.size() != p.objective_count() || B.dim() != n) {
    throw std::invalid_argument("grid_min_theta: metric set does not match the problem");
  }

  std::vector<ObjectiveData> data(static_cast<std::size_t>(p.objective_count()));
  for (int i = 0; i < p.objective_count(); ++i) {
    ObjectiveData& obj = data[static_cast<std::size_t>(i)];
    const Vec grad = p.objective(i).smooth.grad(x);
    for (int a = 0; a < n; ++a) {
      obj.grad[static_cast<std::size_t>(a)] = grad[a];
      for (int b = 0; b < n; ++b) obj.B[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = B.matrix(i)(a, b);
    }
    obj.h_at_x = p.objective(i).nonsmooth.value(x);
    for (const AffinePiece& piece : p.objective(i).nonsmooth.pieces()) {
      std::array<double, 4> flat{};
      for (int a = 0; a < n; ++a) flat[static_cast<std::size_t>(a)] = piece.a[a];
      flat[3] = piece.a.dot(x) + piece.b;
      obj.pieces.push_back(flat);
    }
  }

  std::array<std::int64_t, 3> counts{1, 1, 1};
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  std::int64_t total = 1;
  for (int a = 0; a < n; ++a) {
    counts[static_cast<std::size_t>(a)] =
        static_cast<std::int64_t>(std::floor(2.0 * spec.radius / spec.resolution + 1e-9)) + 1;
    origin[static_cast<std::size_t>(a)] = spec.center[a] - spec.radius;
    total *= counts[static_cast<std::size_t>(a)];
  }

  struct Best {
    double theta = std::numeric_limits<double>::infinity();
    std::int64_t flat = -1;
  };

  auto scan_rows = [&](std::int64_t row_begin, std::int64_t row_end) {
    Best best;
    std::array<double, 3> d{0.0, 0.0, 0.0};
    for (std::int64_t i0 = row_begin; i0 < row_end; ++i0) {
      d[0] = origin[0] + static_cast<double>(i0) * spec.resolution;
      for (std::int64_t i1 = 0; i1 < counts[1]; ++i1) {
        if (n > 1) d[1] = origin[1] + static_cast<double>(i1) * spec.resolution;
        for (std::int64_t i2 = 0; i2 < counts[2]; ++i2) {
          if (n > 2) d[2] = origin[2] + static_cast<double>(i2) * spec.resolution;
          const double value = theta_at(data, n, d);
          if (value < best.theta) {
            best.theta = value;
            best.flat = (i0 * counts[1] + i1) * counts[2] + i2;
          }
        }
      }
    }
    return best;
  };

  int workers = 1;
  if (total >= (1 << 21)) {
    workers = static_cast<int>(std::min<unsigned>(std::thread::hardware_concurrency(), 4));
    workers = std::max(workers, 1);
    workers = static_cast<int>(std::min<std::int64_t>(workers, counts[0]));
  }

  Best overall;
  if (workers == 1) {
    overall = scan_rows(0, counts[0]);
  } else {
    std::vector<Best> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      const std::int64_t begin = counts[0] * t / workers;
      const std::int64_t end = counts[0] * (t + 1) / workers;
      pool.emplace_back([&, t, begin, end] { partial[static_cast<std::size_t>(t)] = scan_rows(begin, end); });
    }
    for (auto& t : pool) t.join();
    for (const Best& b : partial) {
      if (b.theta < overall.theta || (b.theta == overall.theta && b.flat < overall.flat)) {
        overall = b;
      }
    }
  }

  GridMinimum result;
  result.nodes = total;
  result.theta = overall.theta;
  result.d = Vec::Zero(n);
  std::int64_t rest = overall.flat;
  for (int a = n - 1; a >= 0; --a) {
    const std::int64_t idx = rest % counts[static_cast<std::size_t>(a)];
    rest /= counts[static_cast<std::size_t>(a)];
    result.d[a] = origin[static_cast<std::size_t>(a)] + static_cast<double>(idx) * spec.resolution;
  }
  return result;
}

double fd_check_gradient(const SmoothOracle& oracle, const Vec& x, double h_fd) {
  if (!(h_fd > 0.0)) throw std::invalid_argument("fd_check_gradient: h_fd must be positive");
  const Vec analytic = oracle.grad(x);
  Vec xp = x, xm = x;
  double worst = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h_fd;
    xm[i] = x[i] - h_fd;
    const double fd = (oracle.eval(xp) - oracle.eval(xm)) / (2.0 * h_fd);
    worst = std::max(worst, std::abs(fd - analytic[i]));
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return worst;
}

namespace {

// Literal transcription of "F(v) <= F(u) componentwise and F(v) != F(u)",
// kept separate from the production filter on purpose.
bool leq_and_neq(const Vec& v, const Vec& u) {
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > u[i]) return false;
  }
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] != u[i]) return true;
  }
  return false;
}

}  // namespace

std::vector<int> dominance_bruteforce(const std::vector<Vec>& points) {
  std::vector<int> result;
  const int n = static_cast<int>(points.size());
  for (int u = 0; u < n; ++u) {
    bool survives = true;
    for (int v = 0; v < n && survives; ++v) {
      if (v != u && leq_and_neq(points[static_cast<std::size_t>(v)], points[static_cast<std::size_t>(u)])) {
        survives = false;
      }
    }
    if (survives) result.push_back(u);
  }
  return result;
}

}  // namespace pareto_qn
