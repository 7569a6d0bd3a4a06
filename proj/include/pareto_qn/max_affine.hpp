#pragma once

#include <vector>

#include "pareto_qn/linalg.hpp"

namespace pareto_qn {

struct AffinePiece {
  Vec a;
  double b = 0.0;
};

/// Polyhedral convex function h(x) = max_j (a_j'x + b_j), j = 1..J.
class MaxAffine {
 public:
  MaxAffine(int dim, std::vector<AffinePiece> pieces);

  /// h == 0, represented as the single piece (0, 0).
  static MaxAffine zero(int dim);

  /// h(x) = |x_coord|, the two pieces (+e_coord, 0) and (-e_coord, 0).
  static MaxAffine abs_coordinate(int dim, int coord);

  int dim() const { return dim_; }
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const AffinePiece& piece(int j) const { return pieces_[static_cast<std::size_t>(j)]; }

  double value(const Vec& x) const;

  /// Index of a piece attaining the max at x; ties resolve to the lowest index.
  int active_piece(const Vec& x) const;

  /// a_j of the active piece, a valid subgradient of h at x.
  Vec subgradient(const Vec& x) const;

 private:
  int dim_;
  std::vector<AffinePiece> pieces_;
};

}  // namespace pareto_qn
