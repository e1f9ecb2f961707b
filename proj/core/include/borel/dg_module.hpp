#pragma once

#include <functional>
#include <string>
#include <vector>

#include "borel/algebra.hpp"
#include "borel/graded.hpp"

namespace borel {

enum class AlgebraKind { poly, ext };

std::string to_string(AlgebraKind kind);

/// A degreewise finite DG module over H*(BG) (kind poly: generators x_i of degree -d_i) or over
/// H_*(G) (kind ext: generators a_i of degree d_i - 1), stored on a Window.
///
/// Relations: d^2 = 0; x_i commute and x_i d = d x_i; a_i anticommute, a_i^2 = 0 and
/// a_i d = -d a_i. Structure maps leaving the stored range are dropped.
class DGModule {
 public:
  DGModule() = default;
  DGModule(AlgebraKind kind, GroupData group, GradedVS space, Window window);

  AlgebraKind kind() const { return kind_; }
  const GroupData& group() const { return group_; }
  const Window& window() const { return window_; }
  const GradedVS& space() const { return space_; }
  int generator_count() const { return group_.rank(); }
  int generator_degree(int i) const;

  std::size_t dim(int n) const { return space_.dim(n); }
  std::size_t total_dim() const { return space_.total_dim(); }
  /// Stored degrees with nonzero dimension, ascending.
  std::vector<int> degrees() const { return space_.support(); }
  /// True when degree n is stored, or lies beyond a closed side (where the module is zero).
  bool knows(int n) const;

  Matrix d(int n) const { return d_.block(n); }
  void set_d(int n, Matrix m) { d_.set_block(n, std::move(m)); }
  const GradedMap& differential() const { return d_; }

  Matrix action(int i, int n) const { return actions_[static_cast<std::size_t>(i)].block(n); }
  void set_action(int i, int n, Matrix m) {
    actions_[static_cast<std::size_t>(i)].set_block(n, std::move(m));
  }
  const GradedMap& action_map(int i) const { return actions_[static_cast<std::size_t>(i)]; }

  bool has_zero_differential() const;

  /// Throws CompositionNotZero or InvariantViolation naming the failed relation. Relations are
  /// only tested where every degree involved is known.
  void validate() const;

 private:
  AlgebraKind kind_ = AlgebraKind::poly;
  GroupData group_;
  GradedVS space_;
  Window window_ = Window::empty();
  GradedMap d_;
  std::vector<GradedMap> actions_;
};

/// Smallest window covering the given windows, each shifted by the paired amount. Degrees are
/// dropped wherever some open part is not stored.
Window combine_windows(const std::vector<std::pair<Window, int>>& parts);

DGModule zero_module(AlgebraKind kind, const GroupData& g);
DGModule shift(const DGModule& m, int k);
DGModule direct_sum(const std::vector<DGModule>& parts);
/// Restriction to the degrees [lo, hi]; sides that cut the support become open.
DGModule restrict_window(const DGModule& m, int lo, int hi);

/// Operator of a polynomial in the x_i on a poly-kind module, from degree n.
Matrix poly_action(const DGModule& m, const Poly& p, int n);
Vector apply_monomial(const DGModule& m, const Exponent& e, int n, const Vector& v);

HomologyPiece homology(const DGModule& m, int n);
/// Homology dimensions in every certified degree of the stored range.
GradedVS homology_dims(const DGModule& m);
bool is_acyclic(const DGModule& m);
/// Homology with zero differential and the induced action, on the certified degrees.
DGModule homology_module(const DGModule& m);

/// A homogeneous module map of the given degree, block n: source_n -> target_{n+degree}.
struct ChainMap {
  DGModule source;
  DGModule target;
  int degree = 0;
  std::map<int, Matrix> blocks;

  Matrix block(int n) const;
  void set_block(int n, Matrix m) { blocks[n] = std::move(m); }
  /// Throws NotChainMap unless d f = (-1)^deg f d and f commutes with the action (with the
  /// Koszul sign for odd generators) wherever both sides are known.
  void validate() const;
  bool is_chain_map() const;
};

ChainMap identity_map(const DGModule& m);
/// Induced map H_n(source) -> H_{n+degree}(target) in representative coordinates.
Matrix induced_map(const ChainMap& f, int n);

/// Dimension of the space of degree-k maps commuting with the action (and with d when
/// chain = true). Throws WindowTooSmall unless every target degree involved is known.
std::size_t module_maps_dimension(const DGModule& a, const DGModule& b, int k, bool chain = true);
std::vector<ChainMap> module_maps_basis(const DGModule& a, const DGModule& b, int k, bool chain = true);

/// A cell module: free over H*(BG) on labelled homogeneous generators, with d(e_j) =
/// sum_i differential(i, j) e_i.
class FreeDGModule {
 public:
  struct Cell {
    std::string label;
    int degree = 0;
  };

  FreeDGModule() = default;
  FreeDGModule(GroupData group, std::vector<Cell> cells, PolyMatrix differential);

  const GroupData& group() const { return group_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t rank() const { return cells_.size(); }
  const PolyMatrix& differential() const { return d_; }
  int min_degree() const;
  int max_degree() const;

  /// Throws CompositionNotZero if d^2 != 0, InvariantViolation on an inhomogeneous entry.
  void validate() const;

 private:
  GroupData group_;
  std::vector<Cell> cells_;
  PolyMatrix d_;
};

}  // namespace borel
