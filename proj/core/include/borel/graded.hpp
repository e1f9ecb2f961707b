#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "borel/matrix.hpp"

namespace borel {

/// Degree range of a degreewise-finite object.
///
/// Every degree in [lo, hi] is stored exactly: chain groups and all structure maps between stored
/// degrees agree with the (possibly infinite) object being modelled. A side is *closed* when the
/// object genuinely vanishes beyond it. Homology is certified on [guaranteed_lo, guaranteed_hi]:
/// one degree is trimmed at each open side.
struct Window {
  int lo = 0;
  int hi = -1;
  int guaranteed_lo = 0;
  int guaranteed_hi = -1;
  bool closed_below = true;
  bool closed_above = true;

  static Window make(int lo, int hi, bool closed_below, bool closed_above);
  /// A finite object supported in [lo, hi].
  static Window closed(int lo, int hi) { return make(lo, hi, true, true); }
  static Window empty() { return make(0, -1, true, true); }

  bool is_empty() const { return lo > hi; }
  bool contains(int n) const { return lo <= n && n <= hi; }
  /// True when homology in degree n is certified: inside the guaranteed range, or beyond a
  /// closed side where the object vanishes.
  bool certifies(int n) const;

  bool operator==(const Window&) const = default;
};

/// Degree -> dimension, with optional basis labels per degree.
class GradedVS {
 public:
  GradedVS() = default;
  explicit GradedVS(std::map<int, std::size_t> dims);

  std::size_t dim(int n) const;
  void set_dim(int n, std::size_t d);
  void set_labels(int n, std::vector<std::string> labels);
  const std::vector<std::string>* labels(int n) const;

  /// Degrees with nonzero dimension, ascending.
  std::vector<int> support() const;
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  const std::map<int, std::size_t>& dims() const { return dims_; }

  GradedVS shifted(int k) const;

  bool operator==(const GradedVS& other) const { return dims_ == other.dims_; }

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, std::vector<std::string>> labels_;
};

/// A homogeneous linear map of degree `shift`: the block at n sends source degree n to target
/// degree n + shift. Missing blocks are zero.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedVS source, GradedVS target, int shift);

  const GradedVS& source() const { return source_; }
  const GradedVS& target() const { return target_; }
  int shift() const { return shift_; }

  /// Block in degree n, always of shape target.dim(n + shift) x source.dim(n).
  Matrix block(int n) const;
  void set_block(int n, Matrix m);
  bool has_block(int n) const { return blocks_.count(n) != 0; }
  const std::map<int, Matrix>& blocks() const { return blocks_; }

  /// Throws InvariantViolation if any stored block has the wrong shape.
  void validate() const;

 private:
  GradedVS source_;
  GradedVS target_;
  int shift_ = 0;
  std::map<int, Matrix> blocks_;
};

/// Homology in a single degree with a deterministic basis of representative cycles.
struct HomologyPiece {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<Vector> representatives;
  /// Frame over the chain group: block 0 boundaries, block 1 representatives, block 2 rest.
  Frame frame;
  std::size_t chain_dim = 0;

  /// Coordinates of a cycle in the representative basis (boundary part discarded).
  Vector classify(const Vector& cycle) const;
  bool is_boundary(const Vector& cycle) const;
};

/// H_n of  C_{n+1} --d_in--> C_n --d_out--> C_{n-1}. Throws CompositionNotZero if d_out d_in != 0.
HomologyPiece homology_at(const GradedMap& d_in, const GradedMap& d_out, int n);

/// Same computation from explicit blocks.
HomologyPiece homology_from_blocks(const Matrix& d_in, const Matrix& d_out, int n, std::size_t dim);

}  // namespace borel
