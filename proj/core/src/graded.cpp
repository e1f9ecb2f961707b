#include "borel/graded.hpp"

#include "borel/error.hpp"

namespace borel {

Window Window::make(int lo, int hi, bool closed_below, bool closed_above) {
  Window w;
  w.lo = lo;
  w.hi = hi;
  w.closed_below = closed_below;
  w.closed_above = closed_above;
  w.guaranteed_lo = closed_below ? lo : lo + 1;
  w.guaranteed_hi = closed_above ? hi : hi - 1;
  return w;
}

bool Window::certifies(int n) const {
  if (is_empty()) return closed_below && closed_above;
  if (n < lo) return closed_below;
  if (n > hi) return closed_above;
  return guaranteed_lo <= n && n <= guaranteed_hi;
}

GradedVS::GradedVS(std::map<int, std::size_t> dims) {
  for (auto [n, d] : dims)
    if (d) dims_[n] = d;
}

std::size_t GradedVS::dim(int n) const {
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

void GradedVS::set_dim(int n, std::size_t d) {
  if (d == 0) {
    dims_.erase(n);
    labels_.erase(n);
  } else {
    dims_[n] = d;
  }
}

void GradedVS::set_labels(int n, std::vector<std::string> labels) {
  require(labels.size() == dim(n), ErrorCode::invalid_argument, "label count mismatch");
  labels_[n] = std::move(labels);
}

const std::vector<std::string>* GradedVS::labels(int n) const {
  auto it = labels_.find(n);
  return it == labels_.end() ? nullptr : &it->second;
}

std::vector<int> GradedVS::support() const {
  std::vector<int> out;
  for (auto [n, d] : dims_)
    if (d) out.push_back(n);
  return out;
}

std::size_t GradedVS::total_dim() const {
  std::size_t t = 0;
  for (auto [n, d] : dims_) t += d;
  return t;
}

GradedVS GradedVS::shifted(int k) const {
  GradedVS out;
  for (auto [n, d] : dims_) out.dims_[n + k] = d;
  for (const auto& [n, l] : labels_) out.labels_[n + k] = l;
  return out;
}

GradedMap::GradedMap(GradedVS source, GradedVS target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {}

Matrix GradedMap::block(int n) const {
  auto it = blocks_.find(n);
  if (it != blocks_.end()) return it->second;
  return Matrix(target_.dim(n + shift_), source_.dim(n));
}

void GradedMap::set_block(int n, Matrix m) {
  require(m.rows() == target_.dim(n + shift_) && m.cols() == source_.dim(n),
          ErrorCode::invalid_argument,
          "block shape mismatch in degree " + std::to_string(n));
  if (m.is_zero()) {
    blocks_.erase(n);
  } else {
    blocks_[n] = std::move(m);
  }
}

void GradedMap::validate() const {
  for (const auto& [n, m] : blocks_) {
    require(m.rows() == target_.dim(n + shift_) && m.cols() == source_.dim(n),
            ErrorCode::invariant_violation,
            "graded map block in degree " + std::to_string(n) + " has wrong shape");
  }
}

Vector HomologyPiece::classify(const Vector& cycle) const {
  if (chain_dim == 0) return {};
  return frame.block_coordinates(cycle, 1);
}

bool HomologyPiece::is_boundary(const Vector& cycle) const {
  if (chain_dim == 0) return true;
  const Vector c = frame.coordinates(cycle);
  for (std::size_t i = frame.chosen_size(0); i < c.size(); ++i)
    if (sgn(c[i]) != 0) return false;
  return true;
}

HomologyPiece homology_from_blocks(const Matrix& d_in, const Matrix& d_out, int n, std::size_t dim) {
  require(d_in.rows() == dim && d_out.cols() == dim, ErrorCode::invalid_argument,
          "homology block shapes do not match the chain group");
  if (!(d_out * d_in).is_zero()) {
    fail(ErrorCode::composition_not_zero,
         "d o d != 0 through degree " + std::to_string(n));
  }
  HomologyPiece piece;
  piece.degree = n;
  piece.chain_dim = dim;
  if (dim == 0) return piece;
  std::vector<Vector> boundaries;
  for (std::size_t j = 0; j < d_in.cols(); ++j) boundaries.push_back(d_in.column(j));
  const std::vector<Vector> cycles = kernel_basis(d_out);
  piece.frame = Frame(dim, {boundaries, cycles});
  piece.representatives = piece.frame.chosen(1);
  piece.dim = piece.representatives.size();
  return piece;
}

HomologyPiece homology_at(const GradedMap& d_in, const GradedMap& d_out, int n) {
  const std::size_t dim = d_out.source().dim(n);
  require(d_in.target().dim(n) == dim, ErrorCode::invalid_argument,
          "homology_at: maps disagree on the middle term");
  return homology_from_blocks(d_in.block(n - d_in.shift()), d_out.block(n), n, dim);
}

}  // namespace borel
