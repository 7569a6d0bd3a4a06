#include "pareto_qn/max_affine.hpp"

#include <stdexcept>
#include <string>

namespace pareto_qn {

MaxAffine::MaxAffine(int dim, std::vector<AffinePiece> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
  if (dim_ <= 0) throw std::invalid_argument("MaxAffine: dim must be positive");
  if (pieces_.empty()) throw std::invalid_argument("MaxAffine: at least one piece required");
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (pieces_[j].a.size() != dim_) {
      throw std::invalid_argument("MaxAffine: piece " + std::to_string(j) +
                                  " slope has wrong dimension");
    }
  }
}

MaxAffine MaxAffine::zero(int dim) {
  return MaxAffine(dim, {AffinePiece{Vec::Zero(dim), 0.0}});
}

MaxAffine MaxAffine::abs_coordinate(int dim, int coord) {
  if (coord < 0 || coord >= dim) throw std::invalid_argument("MaxAffine: coord out of range");
  Vec plus = Vec::Zero(dim);
  plus[coord] = 1.0;
  return MaxAffine(dim, {AffinePiece{plus, 0.0}, AffinePiece{-plus, 0.0}});
}

double MaxAffine::value(const Vec& x) const {
  double best = pieces_[0].a.dot(x) + pieces_[0].b;
  for (std::size_t j = 1; j < pieces_.size(); ++j) {
    best = std::max(best, pieces_[j].a.dot(x) + pieces_[j].b);
  }
  return best;
}

int MaxAffine::active_piece(const Vec& x) const {
  int arg = 0;
  double best = pieces_[0].a.dot(x) + pieces_[0].b;
  for (std::size_t j = 1; j < pieces_.size(); ++j) {
    const double v = pieces_[j].a.dot(x) + pieces_[j].b;
    if (v > best) {  // strict: ties keep the lowest index
      best = v;
      arg = static_cast<int>(j);
    }
  }
  return arg;
}

Vec MaxAffine::subgradient(const Vec& x) const {
  return pieces_[static_cast<std::size_t>(active_piece(x))].a;
}

}  // namespace pareto_qn
